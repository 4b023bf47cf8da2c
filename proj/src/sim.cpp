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

#include "blobshare/sim.hpp"

#include "blobshare/codec.hpp"
#include "blobshare/error.hpp"

#include <algorithm>

namespace blobshare::sim {

using codec::kBlobBytes;
using codec::kEntryHeaderBytes;
using codec::kMaxEntryPayload;
using codec::kMinEntryWire;

std::uint64_t SealedBlob::payload_bytes() const noexcept {
    std::uint64_t total = 0;
    for (const auto& e : entries) total += e.payload_bytes;
    return total;
}

std::uint64_t SealedBlob::wire_bytes() const noexcept {
    return payload_bytes() + kEntryHeaderBytes * entries.size();
}

std::map<std::string, std::uint64_t> SealedBlob::wire_by_label() const {
    std::map<std::string, std::uint64_t> out;
    for (const auto& e : entries) {
        out[e.label] += e.payload_bytes + kEntryHeaderBytes;
    }
    return out;
}

void PendingPool::add(const std::string& label, std::uint64_t bytes) {
    if (bytes == 0) return;
    pending[label] += bytes;
}

std::uint64_t PendingPool::total_pending() const noexcept {
    std::uint64_t total = 0;
    for (const auto& [label, bytes] : pending) total += bytes;
    return total;
}

std::uint64_t PendingPool::wire_footprint() const noexcept {
    std::uint64_t total = 0;
    for (const auto& [label, bytes] : pending) {
        if (bytes == 0) continue;
        const std::uint64_t entries = (bytes + kMaxEntryPayload - 1) / kMaxEntryPayload;
        total += bytes + kEntryHeaderBytes * entries;
    }
    return total;
}

namespace {

//! Rollup visit order for one blob: the carried split remainder first, then
//! ascending labels.
std::vector<std::string> visit_order(const PendingPool& pool) {
    std::vector<std::string> order;
    order.reserve(pool.pending.size());
    if (!pool.carry_label.empty()) {
        auto it = pool.pending.find(pool.carry_label);
        if (it != pool.pending.end() && it->second > 0) order.push_back(pool.carry_label);
    }
    for (const auto& [label, bytes] : pool.pending) {
        if (bytes == 0 || label == pool.carry_label) continue;
        order.push_back(label);
    }
    return order;
}

//! Greedy single-blob pack over a scratch pool. Returns the entry list and
//! leaves `remaining` at the unused tail; the caller seals only on 0.
std::vector<BlobEntryRef> pack_one(PendingPool& pool, std::uint64_t& remaining) {
    std::vector<BlobEntryRef> entries;
    remaining = kBlobBytes;
    for (const auto& label : visit_order(pool)) {
        std::uint64_t& pending = pool.pending[label];
        while (pending > 0 && remaining >= kMinEntryWire) {
            std::uint64_t take = std::min<std::uint64_t>(
                {pending, kMaxEntryPayload, remaining - kEntryHeaderBytes});
            const std::uint64_t tail = remaining - kEntryHeaderBytes - take;
            if (tail >= 1 && tail < kMinEntryWire) {
                // A tail under 35 bytes could never hold another entry, so the
                // blob would be stuck short of full. Withhold enough bytes to
                // leave exactly one minimal entry of room.
                if (remaining < 2 * kMinEntryWire) break;  // cannot shrink below 1 byte
                take = remaining - kEntryHeaderBytes - kMinEntryWire;
            }
            entries.push_back({label, static_cast<std::uint32_t>(take)});
            pending -= take;
            remaining -= kEntryHeaderBytes + take;
        }
        if (remaining < kMinEntryWire) break;
    }
    return entries;
}

void erase_zero_buffers(PendingPool& pool) {
    std::erase_if(pool.pending, [](const auto& kv) { return kv.second == 0; });
}

}  // namespace

std::vector<SealedBlob> pack_pool(PendingPool& pool, std::uint64_t block) {
    std::vector<SealedBlob> sealed;
    while (true) {
        PendingPool scratch = pool;
        std::uint64_t remaining = kBlobBytes;
        auto entries = pack_one(scratch, remaining);
        if (remaining != 0) break;  // cannot close a full blob; keep everything pending

        SealedBlob blob;
        blob.entries = std::move(entries);
        blob.seal_block = block;
        // The blob boundary cut the last entry's rollup mid-buffer iff it
        // still has bytes pending; that remainder leads the next blob.
        const std::string& last_label = blob.entries.back().label;
        scratch.carry_label = scratch.pending[last_label] > 0 ? last_label : std::string{};
        erase_zero_buffers(scratch);
        pool = std::move(scratch);
        sealed.push_back(std::move(blob));
    }
    return sealed;
}

std::optional<SealedBlob> flush_pool(PendingPool& pool, std::uint64_t block) {
    if (pool.total_pending() == 0) return std::nullopt;
    SealedBlob blob;
    blob.seal_block = block;
    blob.is_flush = true;
    std::uint64_t remaining = kBlobBytes;
    for (const auto& label : visit_order(pool)) {
        std::uint64_t& pending = pool.pending[label];
        while (pending > 0 && remaining >= kMinEntryWire) {
            const std::uint64_t take = std::min<std::uint64_t>(
                {pending, kMaxEntryPayload, remaining - kEntryHeaderBytes});
            blob.entries.push_back({label, static_cast<std::uint32_t>(take)});
            pending -= take;
            remaining -= kEntryHeaderBytes + take;
        }
        if (remaining < kMinEntryWire) break;
    }
    pool.carry_label.clear();
    erase_zero_buffers(pool);
    if (blob.entries.empty()) return std::nullopt;
    return blob;
}

SimEvent step_block(PendingPool& pool, std::deque<SealedBlob>& queue, fees::FeeState& state,
                    std::span<const std::pair<std::string, std::uint64_t>> produced,
                    unsigned unlabeled_count, std::uint64_t block,
                    const fees::FeeParams& params) {
    if (unlabeled_count > params.max_blobs_per_block) {
        throw_validation("block ", block, ": unlabeled blob count ", unlabeled_count,
                         " exceeds the ", params.max_blobs_per_block, "-blob cap");
    }

    for (const auto& [label, bytes] : produced) pool.add(label, bytes);
    for (auto& blob : pack_pool(pool, block)) queue.push_back(std::move(blob));

    SimEvent event;
    event.block_number = block;
    event.unlabeled_submitted = unlabeled_count;
    event.excess_entering = state.excess_blob_gas;
    event.fee_entering = fees::blob_base_fee(state, params);

    const unsigned capacity = params.max_blobs_per_block - unlabeled_count;
    while (event.shared_submitted.size() < capacity && !queue.empty()) {
        event.shared_submitted.push_back(std::move(queue.front()));
        queue.pop_front();
    }
    event.tx_submitted = !event.shared_submitted.empty();

    const unsigned total =
        unlabeled_count + static_cast<unsigned>(event.shared_submitted.size());
    state = fees::advance(state, total, params);
    return event;
}

SimResult run(const RunInputs& inputs) {
    inputs.params.validate();
    if (inputs.schedule == nullptr) throw_validation("run: schedule is required");
    if (inputs.window_start > inputs.window_end) {
        throw_validation("window start ", inputs.window_start, " after end ", inputs.window_end);
    }

    // Bucket the per-rollup schedules by block for the sequential fold.
    std::map<std::uint64_t, std::vector<std::pair<std::string, std::uint64_t>>> by_block;
    for (const auto& [label, points] : *inputs.schedule) {
        for (const auto& p : points) {
            if (p.block < inputs.window_start || p.block > inputs.window_end) {
                throw_validation("schedule block ", p.block, " outside window [",
                                 inputs.window_start, ", ", inputs.window_end, "]");
            }
            by_block[p.block].emplace_back(label, p.bytes);
        }
    }

    SimResult result;
    PendingPool pool;
    std::deque<SealedBlob> queue;
    fees::FeeState state{0};

    static const std::vector<std::pair<std::string, std::uint64_t>> kNothing;
    for (std::uint64_t b = inputs.window_start;; ++b) {
        auto prod_it = by_block.find(b);
        const auto& produced = prod_it == by_block.end() ? kNothing : prod_it->second;
        auto unl_it = inputs.unlabeled_counts.find(b);
        const unsigned unlabeled = unl_it == inputs.unlabeled_counts.end() ? 0 : unl_it->second;
        result.events.push_back(
            step_block(pool, queue, state, produced, unlabeled, b, inputs.params));
        if (b == inputs.window_end) break;
    }

    if (inputs.include_flush && pool.total_pending() > 0) {
        SimEvent& last = result.events.back();
        const unsigned used =
            last.unlabeled_submitted + static_cast<unsigned>(last.shared_submitted.size());
        if (used < inputs.params.max_blobs_per_block) {
            // Room in the last block: attach the flush there and redo its fee
            // advance with one more blob.
            auto flush = flush_pool(pool, last.block_number);
            if (flush) {
                last.shared_submitted.push_back(std::move(*flush));
                last.tx_submitted = true;
                state = fees::advance(fees::FeeState{last.excess_entering}, used + 1,
                                      inputs.params);
            }
        } else {
            auto flush = flush_pool(pool, inputs.window_end + 1);
            if (flush) {
                SimEvent virt;
                virt.block_number = inputs.window_end + 1;
                virt.is_virtual = true;
                virt.excess_entering = state.excess_blob_gas;
                virt.fee_entering = fees::blob_base_fee(state, inputs.params);
                virt.shared_submitted.push_back(std::move(*flush));
                virt.tx_submitted = true;
                state = fees::advance(state, 1, inputs.params);
                result.events.push_back(std::move(virt));
            }
        }
    }

    result.final_pool = std::move(pool);
    result.final_queue = std::move(queue);
    result.final_state = state;
    return result;
}

std::map<std::string, RollupTotals> result_totals(const SimResult& result) {
    std::map<std::string, RollupTotals> totals;
    for (const auto& event : result.events) {
        for (const auto& blob : event.shared_submitted) {
            for (const auto& e : blob.entries) {
                auto& t = totals[e.label];
                t.submitted_payload += e.payload_bytes;
                t.submitted_wire += e.payload_bytes + kEntryHeaderBytes;
            }
        }
    }
    for (const auto& blob : result.final_queue) {
        for (const auto& e : blob.entries) totals[e.label].queued_payload += e.payload_bytes;
    }
    for (const auto& [label, bytes] : result.final_pool.pending) {
        totals[label].pool_pending += bytes;
    }
    return totals;
}

}  // namespace blobshare::sim
