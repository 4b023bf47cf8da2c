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
#include <string>
#include <vector>

namespace blobshare::synth {

//! One synthetic rollup. submit_interval 0 means "submit as soon as a full
//! 128 KB blob is accumulated"; a positive interval dumps everything
//! accumulated every that many blocks (bursts of several blobs at once).
struct RollupGen {
    std::string label;
    std::uint64_t mean_bytes_per_block = 0;
    unsigned jitter_pct = 0;  // uniform +- percentage of the mean
    std::uint64_t submit_interval = 0;
};

//! Constant or multiplicative random-walk wei series.
struct WalkGen {
    Wei initial = 0;
    bool walk = false;
    unsigned step_permille = 0;
    Wei floor_value = 0;
    Wei ceil_value = 0;
};

struct PriceGen {
    Rational initial = 2500;
    int decimals = 2;
    bool walk = false;
    unsigned step_permille = 0;
    std::uint64_t interval_blocks = 300;
};

//! Everything the generator does flows from `seed` through one std::mt19937_64
//! stream with modulo reduction, so identical specs give identical files on
//! any conforming standard library.
struct SynthSpec {
    std::uint64_t seed = 0;
    std::uint64_t start_block = 0;
    std::uint64_t block_count = 0;
    std::int64_t start_timestamp = 1710338135;
    unsigned block_time_seconds = 12;
    unsigned unlabeled_pct = 0;  // chance per block of one unlabeled blob
    //! Optional inscription-style spam waves: every `unlabeled_burst_every`
    //! blocks, `unlabeled_burst_len` consecutive blocks carry six unlabeled
    //! blobs each (0 disables).
    std::uint64_t unlabeled_burst_every = 0;
    std::uint64_t unlabeled_burst_len = 0;
    std::vector<RollupGen> rollups;
    WalkGen base_fee;
    WalkGen priority_fee;
    PriceGen price;

    void validate() const;
};

struct SynthOutput {
    std::vector<BlobSubmission> submissions;
    std::vector<BlockContext> blocks;
    std::vector<PricePoint> prices;
};

SynthOutput generate(const SynthSpec& spec);

//! Parse the JSON spec document (see README for the key set).
SynthSpec spec_from_json(const std::string& text);

}  // namespace blobshare::synth
