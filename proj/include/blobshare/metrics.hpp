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
#include "blobshare/ingest.hpp"
#include "blobshare/sim.hpp"
#include "blobshare/types.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace blobshare::metrics {

//! Execution gas charged per DA transaction (minimal type-3 transaction).
inline constexpr std::uint64_t kDaTxGas = 21000;

//! DA service quality: 1 / (ln(avg_block_gap) + 1). 1.0 at gap 1, falling
//! toward 0 as gaps grow.
double da_quality_from_avg_gap(double avg_gap);

//! Quality from a rollup's distinct ascending submission blocks; fewer than
//! two blocks means no gaps, reported as NA (nullopt).
std::optional<double> da_quality(std::span<const std::uint64_t> submission_blocks);

struct LedgerEntry {
    Wei blob_fee_wei = 0;
    Wei base_fee_wei = 0;
    Wei priority_fee_wei = 0;
    Rational total_usd = 0;

    Wei total_wei() const { return blob_fee_wei + base_fee_wei + priority_fee_wei; }
};
using CostLedger = std::map<std::string, LedgerEntry>;

//! Baseline costs: per (rollup, block) group one 21000-gas transaction at the
//! block's base and median priority fee, plus blob_count * G at the replayed
//! blob base fee entering that block. USD at the block timestamp.
CostLedger real_cost(std::span<const BlobSubmission> submissions, const ingest::BlockMap& blocks,
                     std::span<const PricePoint> prices,
                     std::span<const fees::FeePoint> real_fees, const fees::FeeParams& params);

//! Shared-regime costs: per block with a cohort transaction, the 21000-gas
//! execution charge and each blob's G * fee are split pro-rata by wire bytes
//! (exact rationals, half-up wei rounding, largest-remainder correction).
//! The virtual flush event is priced with the last real block's context.
CostLedger sim_cost(const sim::SimResult& result, const ingest::BlockMap& blocks,
                    std::span<const PricePoint> prices, const fees::FeeParams& params);

struct Table1Row {
    std::string label;
    std::uint64_t blob_count = 0;
    Uint total_bytes = 0;
    std::optional<double> quality;
};
//! One row per label (UNLABELED included), sorted by blob count descending.
std::vector<Table1Row> table1_rows(std::span<const BlobSubmission> submissions);

struct Table2Row {
    std::string label;
    Rational real_usd = 0;
    Uint real_bytes = 0;  // stripped payload
    std::optional<double> real_quality;
    Rational sim_usd = 0;
    Uint sim_bytes = 0;  // framed wire bytes, headers included
    std::optional<double> sim_quality;
};
//! Real-versus-simulation comparison for every labeled rollup, sorted by real
//! cost descending.
std::vector<Table2Row> table2_rows(std::span<const BlobSubmission> submissions,
                                   const sim::SimResult& result, const CostLedger& real,
                                   const CostLedger& simulated);

//! Per-block total blob counts (all labels plus UNLABELED) over the window;
//! a block above the cap is a data error.
std::vector<unsigned> per_block_counts(std::span<const BlobSubmission> submissions,
                                       std::uint64_t window_start, std::uint64_t window_end,
                                       unsigned max_blobs_per_block);

//! Simulated per-block counts: unlabeled + shared submitted, window events only.
std::vector<unsigned> sim_block_counts(const sim::SimResult& result);

//! Simulated fee series from the event fold (window events only).
std::vector<fees::FeePoint> sim_fee_series(const sim::SimResult& result);

struct BucketRow {
    std::uint64_t bucket_start = 0;
    std::uint64_t total_blobs = 0;
    std::uint64_t blocks_over_target = 0;
};
std::vector<BucketRow> bucket_counts(std::uint64_t start_block, std::span<const unsigned> counts,
                                     std::uint64_t bucket_size = 100000, unsigned target = 3);

struct FeeCompareRow {
    std::uint64_t block = 0;
    Wei real_fee = 0;
    Wei sim_fee = 0;
    Uint real_minus_sim = 0;  // signed
};
std::vector<FeeCompareRow> fee_series_compare(std::span<const fees::FeePoint> real,
                                              std::span<const fees::FeePoint> simulated);

// CSV emitters. Sizes print with 2 decimals, quality with 3, USD with 2,
// all half-up; quality NA prints as "NA".
void write_table1(std::ostream& os, std::span<const Table1Row> rows);
void write_table2(std::ostream& os, std::span<const Table2Row> rows);
void write_buckets(std::ostream& os, std::span<const BucketRow> real,
                   std::span<const BucketRow> simulated);
void write_fee_series(std::ostream& os, std::span<const FeeCompareRow> rows);
void write_fee_points(std::ostream& os, std::span<const fees::FeePoint> points);

}  // namespace blobshare::metrics
