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

#include "blobshare/reconstruct.hpp"

#include "blobshare/error.hpp"

namespace blobshare::reconstruct {

std::vector<ProductionPoint> aggregate_per_block(std::span<const BlobSubmission> one_rollup) {
    std::vector<ProductionPoint> out;
    for (const auto& s : one_rollup) {
        if (!out.empty() && s.block_number < out.back().block) {
            throw_validation("submissions must be sorted by block");
        }
        if (!out.empty() && out.back().block == s.block_number) {
            out.back().bytes += s.stripped_size;
        } else {
            out.push_back({s.block_number, s.stripped_size});
        }
    }
    std::erase_if(out, [](const ProductionPoint& p) { return p.bytes == 0; });
    return out;
}

namespace {

//! Append the cumulative-floor spread of `total` bytes over blocks
//! (gap_start, gap_start + n]. The telescoping floors conserve the total.
void spread(std::vector<ProductionPoint>& out, std::uint64_t gap_start, std::uint64_t n,
            std::uint64_t total) {
    if (total == 0) return;
    std::uint64_t prev_cum = 0;
    for (std::uint64_t k = 1; k <= n; ++k) {
        const std::uint64_t cum =
            static_cast<std::uint64_t>((static_cast<unsigned __int128>(k) * total) / n);
        const std::uint64_t bytes = cum - prev_cum;
        prev_cum = cum;
        if (bytes > 0) out.push_back({gap_start + k, bytes});
    }
}

}  // namespace

std::vector<ProductionPoint> reconstruct_rollup(std::span<const ProductionPoint> points,
                                                std::uint64_t window_start) {
    std::vector<ProductionPoint> out;
    std::uint64_t prev_block = window_start;
    bool first = true;
    for (const auto& p : points) {
        if (p.block < window_start) {
            throw_validation("submission block ", p.block, " precedes window start ",
                             window_start);
        }
        if (!first && p.block <= prev_block) {
            throw_validation("production points must be strictly ascending");
        }
        if (first && p.block == window_start) {
            // Nothing earlier to spread over; the whole first total lands here.
            if (p.bytes > 0) out.push_back({window_start, p.bytes});
        } else {
            spread(out, prev_block, p.block - prev_block, p.bytes);
        }
        prev_block = p.block;
        first = false;
    }
    return out;
}

Schedule reconstruct_all(std::span<const BlobSubmission> submissions,
                         std::uint64_t window_start) {
    // Split the sorted stream per label, preserving block order.
    std::map<std::string, std::vector<BlobSubmission>> per_label;
    for (const auto& s : submissions) {
        if (s.rollup_label == kUnlabeled) continue;
        per_label[s.rollup_label].push_back(s);
    }
    Schedule schedule;
    for (const auto& [label, subs] : per_label) {
        auto points = aggregate_per_block(subs);
        schedule[label] = reconstruct_rollup(points, window_start);
    }
    return schedule;
}

}  // namespace blobshare::reconstruct
