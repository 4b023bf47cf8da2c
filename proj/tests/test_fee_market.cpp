/*
   Copyright 2026 The Blobshare Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include "blobshare/fee_market.hpp"

#include "blobshare/error.hpp"

#include <doctest.h>

#include <random>

using namespace blobshare;
using namespace blobshare::fees;

namespace {

//! Independent oracle: literal transcription of the protocol pseudocode,
//! kept free of the production implementation's structure.
Wei fake_exponential_oracle(Wei factor, Wei numerator, Wei denominator) {
    Wei i = 1;
    Wei output = 0;
    Wei numerator_accum = factor * denominator;
    while (numerator_accum > 0) {
        output += numerator_accum;
        numerator_accum = (numerator_accum * numerator) / (denominator * i);
        i += 1;
    }
    return output / denominator;
}

constexpr std::uint64_t kF = 3338477;

}  // namespace

TEST_CASE("fake_exponential matches the frozen oracle anchors") {
    CHECK(fake_exponential(1, 0, kF) == 1);
    CHECK(fake_exponential(5, 0, 100) == 5);
    // floor(e) with per-term truncation; oracle-confirmed.
    CHECK(fake_exponential(1, kF, kF) == 2);
    CHECK(fake_exponential(1, 2 * Wei(kF), kF) == 7);
    CHECK(fake_exponential(1, 10 * Wei(kF), kF) == 22026);
    CHECK(fake_exponential(3, 7 * Wei(kF), kF) == 3289);
}

TEST_CASE("fake_exponential rejects bad domains") {
    CHECK_THROWS_AS(fake_exponential(1, 1, 0), Error);
    CHECK_THROWS_AS(fake_exponential(1, -1, 10), Error);
}

TEST_CASE("fake_exponential agrees with the oracle on random triples") {
    std::mt19937_64 rng(0xfee1);
    for (int i = 0; i < 300; ++i) {
        const Wei factor = rng() % 11;
        const Wei numerator = rng() % (10 * kF + 1);
        CHECK(fake_exponential(factor, numerator, kF) ==
              fake_exponential_oracle(factor, numerator, kF));
    }
}

TEST_CASE("blob_base_fee floors at B and is nondecreasing in excess") {
    FeeParams params;
    CHECK(blob_base_fee(FeeState{0}, params) == 1);
    CHECK(blob_base_fee(FeeState{786432}, params) >= blob_base_fee(FeeState{393216}, params));

    Wei prev = 0;
    for (std::uint64_t excess = 0; excess <= 40'000'000; excess += 1'000'000) {
        const Wei fee = blob_base_fee(FeeState{excess}, params);
        CHECK(fee >= params.min_blob_base_fee);
        CHECK(fee >= prev);
        prev = fee;
    }
}

TEST_CASE("advance follows max(0, excess + count*G - T)") {
    FeeParams params;
    CHECK(advance(FeeState{0}, 3, params).excess_blob_gas == 0);
    CHECK(advance(FeeState{0}, 6, params).excess_blob_gas == 393216);
    CHECK(advance(FeeState{100000}, 0, params).excess_blob_gas == 0);
    CHECK_THROWS_AS(advance(FeeState{0}, 7, params), Error);
}

TEST_CASE("advance matches a brute-force fold on random sequences") {
    FeeParams params;
    std::mt19937_64 rng(0xfee2);
    for (int run = 0; run < 50; ++run) {
        FeeState state{0};
        __int128 shadow = 0;
        for (int b = 0; b < 400; ++b) {
            const unsigned count = rng() % 7;
            state = advance(state, count, params);
            shadow += static_cast<__int128>(count) * params.gas_per_blob;
            shadow -= params.target_blob_gas;
            if (shadow < 0) shadow = 0;
            REQUIRE(state.excess_blob_gas == static_cast<std::uint64_t>(shadow));
        }
    }
}

TEST_CASE("replay_fee_series reports the fee entering each block") {
    FeeParams params;

    SUBCASE("constant target keeps the fee at 1 wei") {
        std::vector<unsigned> counts(50, 3);
        auto series = replay_fee_series(100, counts, FeeState{0}, params);
        REQUIRE(series.size() == 50);
        for (const auto& p : series) {
            CHECK(p.fee == 1);
            CHECK(p.entering.excess_blob_gas == 0);
        }
    }

    SUBCASE("idle blocks decay any initial excess to zero") {
        std::vector<unsigned> counts(10, 0);
        auto series = replay_fee_series(0, counts, FeeState{500000}, params);
        CHECK(series[0].entering.excess_blob_gas == 500000);
        CHECK(series[1].entering.excess_blob_gas == 106784);
        CHECK(series[2].entering.excess_blob_gas == 0);
        CHECK(series[9].fee == 1);
    }

    SUBCASE("full blocks accumulate 3G per block") {
        std::vector<unsigned> counts(5, 6);
        auto series = replay_fee_series(7, counts, FeeState{0}, params);
        for (std::size_t i = 0; i < series.size(); ++i) {
            CHECK(series[i].block == 7 + i);
            CHECK(series[i].entering.excess_blob_gas == 393216 * i);
        }
    }
}

TEST_CASE("property: pointwise count dominance implies fee dominance") {
    FeeParams params;
    std::mt19937_64 rng(0xfee3);
    for (int run = 0; run < 40; ++run) {
        std::vector<unsigned> high(200), low(200);
        for (std::size_t i = 0; i < high.size(); ++i) {
            high[i] = rng() % 7;
            low[i] = rng() % (high[i] + 1);
        }
        auto hs = replay_fee_series(0, high, FeeState{0}, params);
        auto ls = replay_fee_series(0, low, FeeState{0}, params);
        for (std::size_t i = 0; i < high.size(); ++i) {
            REQUIRE(ls[i].entering.excess_blob_gas <= hs[i].entering.excess_blob_gas);
            REQUIRE(ls[i].fee <= hs[i].fee);
        }
    }
}

TEST_CASE("FeeParams validation") {
    FeeParams params;
    CHECK_NOTHROW(params.validate());
    params.target_blob_gas = 400000;
    CHECK_THROWS_AS(params.validate(), Error);
    params = FeeParams{};
    params.min_blob_base_fee = 0;
    CHECK_THROWS_AS(params.validate(), Error);
}
