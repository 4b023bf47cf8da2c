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

#include "blobshare/types.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace blobshare::ingest {

//! Trailing-zero strip: index+1 of the last non-zero byte, 0 for an all-zero
//! blob. Interior and leading zeros are untouched. Input must be exactly
//! 131072 bytes.
std::size_t strip_padding(std::span<const std::uint8_t> raw_blob);

//! submissions.csv -> rows sorted by (block_number, tx_index, blob_index),
//! all invariants validated (size bound, non-empty label, unique key).
std::vector<BlobSubmission> load_submissions(const std::string& path);

//! Contiguous ascending block range with O(1) lookup by height.
class BlockMap {
  public:
    BlockMap() = default;
    //! `blocks` must be contiguous ascending; validated.
    explicit BlockMap(std::vector<BlockContext> blocks);

    bool empty() const noexcept { return blocks_.empty(); }
    std::uint64_t first_block() const noexcept { return first_; }
    std::uint64_t last_block() const noexcept { return first_ + blocks_.size() - 1; }
    bool contains(std::uint64_t height) const noexcept {
        return !blocks_.empty() && height >= first_ && height <= last_block();
    }
    const BlockContext& at(std::uint64_t height) const;
    std::span<const BlockContext> all() const noexcept { return blocks_; }

  private:
    std::uint64_t first_ = 0;
    std::vector<BlockContext> blocks_;
};

BlockMap load_blocks(const std::string& path);

//! prices.csv -> strictly ascending timestamps, positive prices.
std::vector<PricePoint> load_prices(const std::string& path);

//! Piecewise-constant left-continuous lookup: value of the latest point with
//! point.timestamp <= timestamp. Timestamps before the first point error out.
const Rational& resolve_price(std::int64_t timestamp, std::span<const PricePoint> series);

//! Every submission must reference a block present in `blocks`; missing
//! heights are reported in the error.
void validate_coverage(std::span<const BlobSubmission> submissions, const BlockMap& blocks);

// Serializers for the documented schemas (used by the synthetic generator and
// the load/serialize round-trip tests).
std::string serialize_submissions(std::span<const BlobSubmission> rows);
std::string serialize_blocks(std::span<const BlockContext> rows);
std::string serialize_prices(std::span<const PricePoint> rows);

}  // namespace blobshare::ingest
