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

namespace blobshare::fees {

void FeeParams::validate() const {
    if (min_blob_base_fee < 1) throw_validation("min_blob_base_fee must be >= 1 wei");
    if (blob_fee_update_fraction == 0) throw_validation("blob_fee_update_fraction must be > 0");
    if (gas_per_blob == 0) throw_validation("gas_per_blob must be > 0");
    if (target_blob_gas != 3 * gas_per_blob) {
        throw_validation("target_blob_gas must equal 3 * gas_per_blob (got ", target_blob_gas,
                         ", expected ", 3 * gas_per_blob, ")");
    }
    if (max_blobs_per_block != 6) throw_validation("max_blobs_per_block must be 6");
}

Wei fake_exponential(const Wei& factor, const Wei& numerator, const Wei& denominator) {
    if (denominator <= 0) throw_validation("fake_exponential: denominator must be positive");
    if (numerator < 0 || factor < 0) {
        throw_validation("fake_exponential: factor and numerator must be non-negative");
    }
    Wei output = 0;
    Wei accum = factor * denominator;
    for (Wei i = 1; accum > 0; ++i) {
        output += accum;
        accum = (accum * numerator) / (denominator * i);
    }
    return output / denominator;
}

Wei blob_base_fee(const FeeState& state, const FeeParams& params) {
    return fake_exponential(params.min_blob_base_fee, Wei(state.excess_blob_gas),
                            Wei(params.blob_fee_update_fraction));
}

FeeState advance(const FeeState& state, unsigned blob_count, const FeeParams& params) {
    if (blob_count > params.max_blobs_per_block) {
        throw_validation("blob_count ", blob_count, " exceeds max_blobs_per_block ",
                         params.max_blobs_per_block);
    }
    const auto used = static_cast<unsigned __int128>(blob_count) * params.gas_per_blob;
    const auto prev = static_cast<unsigned __int128>(state.excess_blob_gas);
    unsigned __int128 next = 0;
    if (prev + used > params.target_blob_gas) {
        next = prev + used - params.target_blob_gas;
    }
    if (next > static_cast<unsigned __int128>(UINT64_MAX)) {
        throw_validation("excess_blob_gas overflow");
    }
    return FeeState{static_cast<std::uint64_t>(next)};
}

std::vector<FeePoint> replay_fee_series(std::uint64_t start_block,
                                        std::span<const unsigned> blob_counts, FeeState initial,
                                        const FeeParams& params) {
    params.validate();
    std::vector<FeePoint> series;
    series.reserve(blob_counts.size());
    FeeState state = initial;
    for (std::size_t i = 0; i < blob_counts.size(); ++i) {
        FeePoint p;
        p.block = start_block + i;
        p.entering = state;
        p.fee = blob_base_fee(state, params);
        series.push_back(std::move(p));
        state = advance(state, blob_counts[i], params);
    }
    return series;
}

}  // namespace blobshare::fees
