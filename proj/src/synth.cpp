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

#include "blobshare/synth.hpp"

#include "blobshare/codec.hpp"
#include "blobshare/error.hpp"

#include <nlohmann/json.hpp>

#include <deque>
#include <random>
#include <set>

namespace blobshare::synth {

namespace {

using json = nlohmann::json;

//! All randomness: one mt19937_64 stream reduced by modulo. Biased for bounds
//! that do not divide 2^64, which is irrelevant for trace generation but keeps
//! the stream portable and easy to reimplement.
std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t bound) {
    return bound == 0 ? 0 : rng() % bound;
}

Wei walk_step(std::mt19937_64& rng, const WalkGen& gen, const Wei& current) {
    if (!gen.walk || gen.step_permille == 0) return current;
    const bool up = (rng() & 1) != 0;
    Wei next = current * (up ? 1000 + gen.step_permille : 1000 - gen.step_permille) / 1000;
    if (gen.floor_value > 0 && next < gen.floor_value) next = gen.floor_value;
    if (gen.ceil_value > 0 && next > gen.ceil_value) next = gen.ceil_value;
    return next;
}

Rational price_step(std::mt19937_64& rng, const PriceGen& gen, const Rational& current) {
    if (!gen.walk || gen.step_permille == 0) return current;
    const bool up = (rng() & 1) != 0;
    Rational next =
        current * Rational(up ? 1000 + gen.step_permille : 1000 - gen.step_permille, 1000);
    // Snap back to the configured decimal grid.
    Uint pow = 1;
    for (int i = 0; i < gen.decimals; ++i) pow *= 10;
    Uint scaled = round_half_up_scaled(next, gen.decimals);
    if (scaled < 1) scaled = 1;
    return Rational(scaled, pow);
}

Wei json_wei(const json& v, const char* key) {
    if (v.is_string()) {
        Wei out;
        if (!parse_uint(v.get<std::string>(), out)) {
            throw_validation("synth spec: key '", key, "' is not a base-10 integer");
        }
        return out;
    }
    if (v.is_number_unsigned()) return Wei(v.get<std::uint64_t>());
    throw_validation("synth spec: key '", key, "' must be an unsigned integer or string");
}

}  // namespace

void SynthSpec::validate() const {
    if (block_count == 0) throw_validation("synth spec: block_count must be >= 1");
    if (unlabeled_pct > 100) throw_validation("synth spec: unlabeled_pct must be <= 100");
    if (unlabeled_burst_every > 0 && unlabeled_burst_len >= unlabeled_burst_every) {
        throw_validation("synth spec: unlabeled_burst_len must be below the burst period");
    }
    std::set<std::string> seen;
    for (const auto& r : rollups) {
        if (r.label.empty()) throw_validation("synth spec: rollup label must be non-empty");
        if (r.label == kUnlabeled) {
            throw_validation("synth spec: '", kUnlabeled, "' is reserved");
        }
        if (!seen.insert(r.label).second) {
            throw_validation("synth spec: duplicate rollup label '", r.label, "'");
        }
        if (r.jitter_pct > 100) throw_validation("synth spec: jitter_pct must be <= 100");
    }
    if (base_fee.initial < 0 || priority_fee.initial < 0) {
        throw_validation("synth spec: fee initials must be non-negative");
    }
    if (price.initial <= 0) throw_validation("synth spec: price must be positive");
}

SynthOutput generate(const SynthSpec& spec) {
    spec.validate();
    std::mt19937_64 rng(spec.seed);

    SynthOutput out;
    Wei base_fee = spec.base_fee.initial;
    Wei priority_fee = spec.priority_fee.initial;
    Rational price = spec.price.initial;

    std::vector<std::uint64_t> accum(spec.rollups.size(), 0);
    // Blobs that missed the 6-per-block cap wait here in arrival order.
    std::deque<std::pair<std::string, std::uint32_t>> deferred;

    for (std::uint64_t i = 0; i < spec.block_count; ++i) {
        const std::uint64_t block = spec.start_block + i;
        const std::int64_t ts =
            spec.start_timestamp + static_cast<std::int64_t>(i) * spec.block_time_seconds;

        if (i > 0) {
            base_fee = walk_step(rng, spec.base_fee, base_fee);
            priority_fee = walk_step(rng, spec.priority_fee, priority_fee);
        }
        if (i == 0 || (spec.price.interval_blocks > 0 && i % spec.price.interval_blocks == 0)) {
            if (i > 0) price = price_step(rng, spec.price, price);
            out.prices.push_back(PricePoint{ts, price, spec.price.decimals});
        }
        out.blocks.push_back(BlockContext{block, ts, base_fee, priority_fee, std::nullopt});

        // Production and submission decisions.
        std::vector<std::pair<std::string, std::uint32_t>> wants;
        for (std::size_t r = 0; r < spec.rollups.size(); ++r) {
            const RollupGen& gen = spec.rollups[r];
            std::uint64_t produced = gen.mean_bytes_per_block;
            if (gen.jitter_pct > 0 && produced > 0) {
                const std::uint64_t span = produced * gen.jitter_pct / 100;
                produced = produced - span + draw_below(rng, 2 * span + 1);
            }
            accum[r] += produced;
            if (gen.submit_interval == 0) {
                while (accum[r] >= codec::kBlobBytes) {
                    wants.emplace_back(gen.label, codec::kBlobBytes);
                    accum[r] -= codec::kBlobBytes;
                }
            } else if ((i + 1) % gen.submit_interval == 0 && accum[r] > 0) {
                while (accum[r] >= codec::kBlobBytes) {
                    wants.emplace_back(gen.label, codec::kBlobBytes);
                    accum[r] -= codec::kBlobBytes;
                }
                if (accum[r] > 0) {
                    wants.emplace_back(gen.label, static_cast<std::uint32_t>(accum[r]));
                    accum[r] = 0;
                }
            }
        }

        // Fill the block: unlabeled first, then deferred backlog, then fresh
        // submissions; overflow defers to the next block.
        std::vector<std::pair<std::string, std::uint32_t>> emitted;
        unsigned capacity = 6;
        const bool in_burst = spec.unlabeled_burst_every > 0 &&
                              (i % spec.unlabeled_burst_every) < spec.unlabeled_burst_len;
        unsigned unlabeled = 0;
        if (in_burst) {
            unlabeled = 6;
        } else if (spec.unlabeled_pct > 0 && draw_below(rng, 100) < spec.unlabeled_pct) {
            unlabeled = 1;
        }
        for (unsigned u = 0; u < unlabeled; ++u) {
            const std::uint32_t size =
                static_cast<std::uint32_t>(1024 + draw_below(rng, codec::kBlobBytes - 1024 + 1));
            emitted.emplace_back(kUnlabeled, size);
            --capacity;
        }
        while (capacity > 0 && !deferred.empty()) {
            emitted.push_back(deferred.front());
            deferred.pop_front();
            --capacity;
        }
        for (auto& w : wants) {
            if (capacity > 0) {
                emitted.push_back(std::move(w));
                --capacity;
            } else {
                deferred.push_back(std::move(w));
            }
        }

        std::uint32_t tx_index = 0;
        std::uint32_t blob_index = 0;
        for (std::size_t e = 0; e < emitted.size(); ++e) {
            if (e > 0) {
                if (emitted[e].first != emitted[e - 1].first) {
                    ++tx_index;
                    blob_index = 0;
                } else {
                    ++blob_index;
                }
            }
            out.submissions.push_back(
                BlobSubmission{block, tx_index, blob_index, emitted[e].first, emitted[e].second});
        }
    }
    return out;
}

SynthSpec spec_from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw_validation("synth spec: invalid JSON: ", e.what());
    }
    SynthSpec spec;
    try {
        spec.seed = doc.value("seed", std::uint64_t{0});
        spec.start_block = doc.value("start_block", std::uint64_t{0});
        spec.block_count = doc.value("blocks", std::uint64_t{0});
        spec.start_timestamp = doc.value("start_timestamp", spec.start_timestamp);
        spec.block_time_seconds = doc.value("block_time_seconds", spec.block_time_seconds);
        spec.unlabeled_pct = doc.value("unlabeled_pct", 0u);
        spec.unlabeled_burst_every = doc.value("unlabeled_burst_every", std::uint64_t{0});
        spec.unlabeled_burst_len = doc.value("unlabeled_burst_len", std::uint64_t{0});
        for (const auto& r : doc.value("rollups", json::array())) {
            RollupGen gen;
            gen.label = r.at("label").get<std::string>();
            gen.mean_bytes_per_block = r.value("mean_bytes_per_block", std::uint64_t{0});
            gen.jitter_pct = r.value("jitter_pct", 0u);
            gen.submit_interval = r.value("submit_interval", std::uint64_t{0});
            spec.rollups.push_back(std::move(gen));
        }
        auto read_walk = [](const json& w, const char* key) {
            WalkGen gen;
            gen.initial = json_wei(w.at("initial"), key);
            gen.walk = w.value("walk", false);
            gen.step_permille = w.value("step_permille", 0u);
            if (w.contains("min")) gen.floor_value = json_wei(w.at("min"), key);
            if (w.contains("max")) gen.ceil_value = json_wei(w.at("max"), key);
            return gen;
        };
        if (doc.contains("base_fee")) spec.base_fee = read_walk(doc.at("base_fee"), "base_fee");
        if (doc.contains("priority_fee")) {
            spec.priority_fee = read_walk(doc.at("priority_fee"), "priority_fee");
        }
        if (doc.contains("price")) {
            const auto& p = doc.at("price");
            spec.price.initial = parse_decimal(p.at("initial").get<std::string>(),
                                               &spec.price.decimals);
            if (spec.price.decimals < 2) spec.price.decimals = 2;
            spec.price.walk = p.value("walk", false);
            spec.price.step_permille = p.value("step_permille", 0u);
            spec.price.interval_blocks = p.value("interval_blocks", std::uint64_t{300});
        }
    } catch (const json::exception& e) {
        throw_validation("synth spec: ", e.what());
    }
    spec.validate();
    return spec;
}

}  // namespace blobshare::synth
