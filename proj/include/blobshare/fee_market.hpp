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

#pragma once

#include "blobshare/numeric.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace blobshare::fees {

//! EIP-4844 pricing constants. Defaults are the mainnet values the analysis
//! window ran under; the target is pinned at three blobs (T = 3G) and the
//! per-block cap at six.
struct FeeParams {
    Wei min_blob_base_fee = 1;                       // B
    std::uint64_t blob_fee_update_fraction = 3338477;  // F
    std::uint64_t gas_per_blob = 131072;               // G
    std::uint64_t target_blob_gas = 3 * 131072;        // T = 3G
    unsigned max_blobs_per_block = 6;

    void validate() const;
    static FeeParams mainnet() { return FeeParams{}; }
};

//! The protocol accumulator driving the exponential blob base fee.
struct FeeState {
    std::uint64_t excess_blob_gas = 0;

    bool operator==(const FeeState&) const = default;
};

//! Integer Taylor-series evaluation of factor * exp(numerator / denominator),
//! exact per the protocol: terms are built with floor division and summed
//! until one vanishes, then the sum is divided by the denominator once.
//! Arbitrary-precision throughout, so no overflow for any input.
Wei fake_exponential(const Wei& factor, const Wei& numerator, const Wei& denominator);

//! Blob base fee for the state entering a block: fake_exponential(B, excess, F).
Wei blob_base_fee(const FeeState& state, const FeeParams& params);

//! One-block update: excess' = max(0, excess + blob_count * G - T).
FeeState advance(const FeeState& state, unsigned blob_count, const FeeParams& params);

struct FeePoint {
    std::uint64_t block = 0;
    FeeState entering;  // state derived from blocks before this one
    Wei fee;            // blob base fee charged to blobs in this block
};

//! Fold advance/blob_base_fee over a contiguous window of per-block counts.
//! The fee at index i is computed from the state entering block i.
std::vector<FeePoint> replay_fee_series(std::uint64_t start_block,
                                        std::span<const unsigned> blob_counts, FeeState initial,
                                        const FeeParams& params);

}  // namespace blobshare::fees
