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

#include "blobshare/ingest.hpp"

#include "blobshare/codec.hpp"
#include "blobshare/csv.hpp"
#include "blobshare/error.hpp"

#include <doctest.h>

#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <random>

using namespace blobshare;
using namespace blobshare::ingest;

namespace {

//! Scratch file living for one test.
class TempFile {
  public:
    explicit TempFile(std::string_view content) {
        static int counter = 0;
        path_ = (std::filesystem::temp_directory_path() /
                 ("blobshare_test_" + std::to_string(::getpid()) + "_" +
                  std::to_string(counter++) + ".csv"))
                    .string();
        csvio::write_file(path_, content);
    }
    ~TempFile() { std::remove(path_.c_str()); }
    const std::string& path() const { return path_; }

  private:
    std::string path_;
};

}  // namespace

TEST_CASE("strip_padding returns index+1 of the last non-zero byte") {
    std::vector<std::uint8_t> blob(codec::kBlobBytes, 0);
    CHECK(strip_padding(blob) == 0);

    blob[99] = 42;
    CHECK(strip_padding(blob) == 100);

    // Interior and leading zeros are preserved: zeros before offset 99 do not
    // shrink the result.
    blob[0] = 0;
    blob[50] = 0;
    CHECK(strip_padding(blob) == 100);

    blob[codec::kBlobBytes - 1] = 1;
    CHECK(strip_padding(blob) == codec::kBlobBytes);
}

TEST_CASE("strip_padding rejects wrong lengths with both sizes named") {
    std::vector<std::uint8_t> short_blob(100, 0);
    CHECK_THROWS_WITH_AS(strip_padding(short_blob),
                         doctest::Contains("131072"), Error);
    try {
        strip_padding(short_blob);
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("100") != std::string::npos);
    }
}

TEST_CASE("strip_padding is idempotent under re-padding") {
    std::mt19937_64 rng(0x57a1f);
    for (int iter = 0; iter < 50; ++iter) {
        std::vector<std::uint8_t> blob(codec::kBlobBytes, 0);
        const std::size_t content = rng() % codec::kBlobBytes;
        for (std::size_t i = 0; i < content; ++i) blob[i] = static_cast<std::uint8_t>(rng());
        const std::size_t stripped = strip_padding(blob);
        std::vector<std::uint8_t> repadded(blob.begin(),
                                           blob.begin() + static_cast<std::ptrdiff_t>(stripped));
        repadded.resize(codec::kBlobBytes, 0);
        CHECK(strip_padding(repadded) == stripped);
    }
}

TEST_CASE("load_submissions sorts, validates and reports failures precisely") {
    SUBCASE("header only gives an empty list") {
        TempFile f("block_number,tx_index,blob_index,rollup_label,stripped_size\n");
        CHECK(load_submissions(f.path()).empty());
    }

    SUBCASE("rows out of order on disk come back sorted") {
        TempFile f(
            "block_number,tx_index,blob_index,rollup_label,stripped_size\n"
            "12,0,0,zora,100\n"
            "10,1,0,base,131072\n"
            "10,0,0,base,5\n");
        auto subs = load_submissions(f.path());
        REQUIRE(subs.size() == 3);
        CHECK(subs[0].block_number == 10);
        CHECK(subs[0].tx_index == 0);
        CHECK(subs[1].tx_index == 1);
        CHECK(subs[2].block_number == 12);
    }

    SUBCASE("size above 131072 is rejected") {
        TempFile f(
            "block_number,tx_index,blob_index,rollup_label,stripped_size\n"
            "10,0,0,base,200000\n");
        CHECK_THROWS_WITH_AS(load_submissions(f.path()),
                             doctest::Contains("stripped_size"), Error);
    }

    SUBCASE("malformed row carries line and column") {
        TempFile f(
            "block_number,tx_index,blob_index,rollup_label,stripped_size\n"
            "10,0,0,base,100\n"
            "11,zzz,0,base,100\n");
        try {
            load_submissions(f.path());
            FAIL("expected an error");
        } catch (const Error& e) {
            REQUIRE(e.line.has_value());
            CHECK(*e.line == 3);
            CHECK(*e.column == 2);
        }
    }

    SUBCASE("duplicate keys are rejected") {
        TempFile f(
            "block_number,tx_index,blob_index,rollup_label,stripped_size\n"
            "10,0,0,base,100\n"
            "10,0,0,zora,5\n");
        CHECK_THROWS_WITH_AS(load_submissions(f.path()), doctest::Contains("duplicate"), Error);
    }

    SUBCASE("empty label is rejected, quoted labels with commas are fine") {
        TempFile bad(
            "block_number,tx_index,blob_index,rollup_label,stripped_size\n"
            "10,0,0,,100\n");
        CHECK_THROWS_AS(load_submissions(bad.path()), Error);
        TempFile good(
            "block_number,tx_index,blob_index,rollup_label,stripped_size\n"
            "10,0,0,\"roll,up\",100\n");
        auto subs = load_submissions(good.path());
        REQUIRE(subs.size() == 1);
        CHECK(subs[0].rollup_label == "roll,up");
    }

    SUBCASE("wrong header is rejected") {
        TempFile f("block,tx,blob,label,size\n10,0,0,base,100\n");
        CHECK_THROWS_WITH_AS(load_submissions(f.path()), doctest::Contains("header"), Error);
    }
}

TEST_CASE("load_blocks enforces a contiguous ascending range") {
    SUBCASE("contiguous range loads with end-start+1 entries") {
        TempFile f(
            "block_number,timestamp,base_fee_per_gas,median_priority_fee\n"
            "100,1000,30000000000,2000000000\n"
            "101,1012,30000000000,2000000000\n"
            "102,1024,29000000000,1000000000\n");
        auto blocks = load_blocks(f.path());
        CHECK(blocks.first_block() == 100);
        CHECK(blocks.last_block() == 102);
        CHECK(blocks.all().size() == 3);
        CHECK(blocks.at(102).base_fee_per_gas == Wei(29000000000));
    }

    SUBCASE("gaps are reported with the missing heights") {
        TempFile f(
            "block_number,timestamp,base_fee_per_gas,median_priority_fee\n"
            "100,1000,1,1\n"
            "103,1036,1,1\n");
        CHECK_THROWS_WITH_AS(load_blocks(f.path()), doctest::Contains("101"), Error);
    }
}

TEST_CASE("load_prices requires ascending timestamps and positive prices") {
    SUBCASE("valid series") {
        TempFile f("timestamp,usd_per_eth\n100,2000.00\n200,3000.50\n");
        auto prices = load_prices(f.path());
        REQUIRE(prices.size() == 2);
        CHECK(prices[1].usd_per_eth == Rational(300050, 100));
    }
    SUBCASE("non-ascending timestamps rejected") {
        TempFile f("timestamp,usd_per_eth\n200,2000.00\n100,3000.00\n");
        CHECK_THROWS_WITH_AS(load_prices(f.path()), doctest::Contains("ascending"), Error);
    }
    SUBCASE("zero price rejected") {
        TempFile f("timestamp,usd_per_eth\n100,0.00\n");
        CHECK_THROWS_AS(load_prices(f.path()), Error);
    }
}

TEST_CASE("missing file is an I/O error") {
    try {
        load_submissions("/nonexistent/blobshare.csv");
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::kIo);
    }
}

TEST_CASE("resolve_price is the latest point at or before the query") {
    std::vector<PricePoint> series{{100, Rational(2000), 2}, {200, Rational(3000), 2}};
    CHECK(resolve_price(100, series) == Rational(2000));
    CHECK(resolve_price(150, series) == Rational(2000));
    CHECK(resolve_price(200, series) == Rational(3000));
    CHECK(resolve_price(10'000, series) == Rational(3000));
    CHECK_THROWS_AS(resolve_price(50, series), Error);
    CHECK_THROWS_AS(resolve_price(100, std::vector<PricePoint>{}), Error);
}

TEST_CASE("property: resolve_price picks monotonically later source points") {
    std::mt19937_64 rng(0x9109e);
    std::vector<PricePoint> series;
    std::int64_t ts = 1000;
    for (int i = 0; i < 20; ++i) {
        series.push_back({ts, Rational(1000 + i), 2});
        ts += 1 + static_cast<std::int64_t>(rng() % 500);
    }
    auto source_index = [&](std::int64_t t) {
        const Rational& p = resolve_price(t, series);
        for (std::size_t i = 0; i < series.size(); ++i) {
            if (series[i].usd_per_eth == p) return i;
        }
        return series.size();
    };
    for (int iter = 0; iter < 200; ++iter) {
        std::int64_t t1 = 1000 + static_cast<std::int64_t>(rng() % 12000);
        std::int64_t t2 = t1 + static_cast<std::int64_t>(rng() % 3000);
        CHECK(source_index(t1) <= source_index(t2));
    }
}

TEST_CASE("validate_coverage names uncovered submission heights") {
    std::vector<BlockContext> ctx;
    for (std::uint64_t b = 100; b <= 105; ++b) ctx.push_back({b, 0, 1, 1, std::nullopt});
    BlockMap blocks(std::move(ctx));
    std::vector<BlobSubmission> subs{{104, 0, 0, "base", 10}, {107, 0, 0, "base", 10}};
    CHECK_THROWS_WITH_AS(validate_coverage(subs, blocks), doctest::Contains("107"), Error);
    subs.pop_back();
    CHECK_NOTHROW(validate_coverage(subs, blocks));
}

TEST_CASE("property: load/serialize/load is the identity on all three schemas") {
    std::mt19937_64 rng(0x10ad);
    std::vector<BlobSubmission> subs;
    for (int i = 0; i < 40; ++i) {
        subs.push_back(BlobSubmission{1000 + (rng() % 50), static_cast<std::uint32_t>(rng() % 4),
                                      static_cast<std::uint32_t>(i),
                                      (rng() % 2) ? "base" : "roll,up \"x\"",
                                      static_cast<std::uint32_t>(rng() % 131073)});
    }
    TempFile f1(serialize_submissions(subs));
    auto loaded = load_submissions(f1.path());
    TempFile f2(serialize_submissions(loaded));
    CHECK(load_submissions(f2.path()) == loaded);

    std::vector<BlockContext> ctx;
    for (std::uint64_t b = 0; b < 20; ++b) {
        ctx.push_back({5000 + b, static_cast<std::int64_t>(1700000000 + 12 * b),
                       Wei(rng() % 100000000000), Wei(rng() % 3000000000), std::nullopt});
    }
    TempFile f3(serialize_blocks(ctx));
    auto blocks = load_blocks(f3.path());
    TempFile f4(serialize_blocks(std::vector<BlockContext>(blocks.all().begin(),
                                                           blocks.all().end())));
    CHECK(csvio::read_file(f3.path()) == csvio::read_file(f4.path()));

    std::vector<PricePoint> prices;
    for (int i = 0; i < 10; ++i) {
        prices.push_back(
            {1700000000 + i * 3600, Rational(150000 + (rng() % 200000), 100), 2});
    }
    TempFile f5(serialize_prices(prices));
    auto loaded_prices = load_prices(f5.path());
    TempFile f6(serialize_prices(loaded_prices));
    CHECK(csvio::read_file(f5.path()) == csvio::read_file(f6.path()));
}
