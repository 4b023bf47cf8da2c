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

#include "blobshare/fee_market.hpp"
#include "blobshare/reconstruct.hpp"

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace blobshare::sim {

//! One framed span of a sealed blob, attributed by rollup label. Payload
//! contents are not materialized; the simulator tracks byte counts only.
struct BlobEntryRef {
    std::string label;
    std::uint32_t payload_bytes = 0;

    bool operator==(const BlobEntryRef&) const = default;
};

struct SealedBlob {
    std::vector<BlobEntryRef> entries;
    std::uint64_t seal_block = 0;
    bool is_flush = false;

    std::uint64_t payload_bytes() const noexcept;
    std::uint64_t wire_bytes() const noexcept;  // payload + 34 per entry
    //! Per-rollup wire bytes inside this blob (ascending label order).
    std::map<std::string, std::uint64_t> wire_by_label() const;
};

//! Per-rollup FIFO byte buffers awaiting packing. `carry_label` marks the
//! rollup split by the previous seal; its remainder leads the next blob.
struct PendingPool {
    std::map<std::string, std::uint64_t> pending;
    std::string carry_label;

    void add(const std::string& label, std::uint64_t bytes);
    std::uint64_t total_pending() const noexcept;
    //! Wire footprint if everything pending were framed with minimal entries.
    std::uint64_t wire_footprint() const noexcept;
};

//! Seal as many exactly-full 131072-byte blobs as the pool supports. Rollups
//! are visited carry-first then in ascending label order, each drawing its
//! whole buffer; entries split only at the 65535 length cap or the blob
//! boundary. When a draw would strand a tail under 35 bytes the entry is
//! shrunk so the blob still closes exactly full and the withheld bytes stay
//! pending. A blob that cannot reach wire 131072 is not sealed.
std::vector<SealedBlob> pack_pool(PendingPool& pool, std::uint64_t block);

//! Partial blob draining the pool at window end (no exact-full requirement).
std::optional<SealedBlob> flush_pool(PendingPool& pool, std::uint64_t block);

struct SimEvent {
    std::uint64_t block_number = 0;
    unsigned unlabeled_submitted = 0;
    std::vector<SealedBlob> shared_submitted;
    std::uint64_t excess_entering = 0;  // simulated fee state entering the block
    Wei fee_entering;                   // blob base fee for blobs in this block
    bool tx_submitted = false;
    bool is_virtual = false;  // post-window event carrying only the flush blob
};

struct SimResult {
    std::vector<SimEvent> events;
    PendingPool final_pool;
    std::deque<SealedBlob> final_queue;  // sealed but never submitted
    fees::FeeState final_state;
};

//! Advance one block: pour produced bytes into the pool, seal, submit from
//! the queue front under capacity 6 - unlabeled_count, then advance the fee
//! state by unlabeled + shared submitted.
SimEvent step_block(PendingPool& pool, std::deque<SealedBlob>& queue, fees::FeeState& state,
                    std::span<const std::pair<std::string, std::uint64_t>> produced,
                    unsigned unlabeled_count, std::uint64_t block, const fees::FeeParams& params);

struct RunInputs {
    std::uint64_t window_start = 0;
    std::uint64_t window_end = 0;
    const reconstruct::Schedule* schedule = nullptr;
    //! Real unlabeled blob counts per block (absent blocks mean zero).
    std::map<std::uint64_t, unsigned> unlabeled_counts;
    fees::FeeParams params;
    bool include_flush = true;
};

//! Fold step_block over the window from excess 0, then flush the pool
//! residue into one final partial blob (last block if capacity allows,
//! otherwise a virtual event at window_end + 1).
SimResult run(const RunInputs& inputs);

//! Per-rollup byte accounting across a run, for conservation checks and
//! reporting. Submitted totals include the flush blob.
struct RollupTotals {
    std::uint64_t submitted_payload = 0;
    std::uint64_t submitted_wire = 0;
    std::uint64_t queued_payload = 0;
    std::uint64_t pool_pending = 0;
};
std::map<std::string, RollupTotals> result_totals(const SimResult& result);

}  // namespace blobshare::sim
