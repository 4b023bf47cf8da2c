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
#include <optional>
#include <string>

namespace blobshare {

//! Label reserved for mainnet blobs not attributed to any known rollup.
inline constexpr const char* kUnlabeled = "UNLABELED";

//! One observed blob submission. (block_number, tx_index, blob_index) is the
//! unique ordering key; stripped_size is the payload after trailing-zero strip.
struct BlobSubmission {
    std::uint64_t block_number = 0;
    std::uint32_t tx_index = 0;
    std::uint32_t blob_index = 0;
    std::string rollup_label;
    std::uint32_t stripped_size = 0;  // 0..131072

    bool operator==(const BlobSubmission&) const = default;
};

//! Per-block fee context. real_blob_count is derivable from submissions and
//! filled during analysis.
struct BlockContext {
    std::uint64_t block_number = 0;
    std::int64_t timestamp = 0;
    Wei base_fee_per_gas = 0;
    Wei median_priority_fee = 0;
    std::optional<unsigned> real_blob_count;
};

//! One point of the ETH/USD series; `decimals` preserves the input precision
//! for exact re-serialization.
struct PricePoint {
    std::int64_t timestamp = 0;
    Rational usd_per_eth;
    int decimals = 2;
};

}  // namespace blobshare
