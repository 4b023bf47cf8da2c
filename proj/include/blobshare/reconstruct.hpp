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
#include <map>
#include <span>
#include <string>
#include <vector>

namespace blobshare::reconstruct {

struct ProductionPoint {
    std::uint64_t block = 0;
    std::uint64_t bytes = 0;

    bool operator==(const ProductionPoint&) const = default;
};

//! Per-rollup, per-block byte production. Points are ascending by block with
//! zero-byte blocks omitted; totals match the observed stripped sizes exactly.
using Schedule = std::map<std::string, std::vector<ProductionPoint>>;

//! Group one rollup's submissions by block, summing stripped sizes; zero-sum
//! groups are dropped. Input must be sorted by block.
std::vector<ProductionPoint> aggregate_per_block(std::span<const BlobSubmission> one_rollup);

//! Spread each submission's bytes uniformly over the blocks since the previous
//! submission using the cumulative-floor rule: the k-th block of an n-block
//! gap gets floor(k*S/n) - floor((k-1)*S/n) bytes. The first submission
//! spreads from window_start+1 (all at window_start when it lands there).
std::vector<ProductionPoint> reconstruct_rollup(std::span<const ProductionPoint> points,
                                                std::uint64_t window_start);

//! Reconstruction for every labeled rollup in a sorted submission stream;
//! UNLABELED rows are excluded (they stay raw blobs in the simulation).
Schedule reconstruct_all(std::span<const BlobSubmission> submissions, std::uint64_t window_start);

}  // namespace blobshare::reconstruct
