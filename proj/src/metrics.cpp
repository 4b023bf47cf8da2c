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

#include "blobshare/metrics.hpp"

#include "blobshare/codec.hpp"
#include "blobshare/csv.hpp"
#include "blobshare/error.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace blobshare::metrics {

namespace {

const Uint kWeiPerEth = Uint("1000000000000000000");

Rational wei_to_usd(const Wei& wei, const Rational& usd_per_eth) {
    return Rational(wei) * usd_per_eth / Rational(kWeiPerEth);
}

const fees::FeePoint& fee_at(std::span<const fees::FeePoint> series, std::uint64_t block) {
    if (series.empty() || block < series.front().block ||
        block > series.front().block + series.size() - 1) {
        throw_validation("fee series does not cover block ", block);
    }
    return series[block - series.front().block];
}

std::string quality_str(const std::optional<double>& q) {
    return q ? format_fixed(*q, 3) : std::string("NA");
}

}  // namespace

double da_quality_from_avg_gap(double avg_gap) {
    return 1.0 / (std::log(avg_gap) + 1.0);
}

std::optional<double> da_quality(std::span<const std::uint64_t> submission_blocks) {
    if (submission_blocks.size() < 2) return std::nullopt;
    std::uint64_t gap_sum = 0;
    for (std::size_t i = 1; i < submission_blocks.size(); ++i) {
        if (submission_blocks[i] <= submission_blocks[i - 1]) {
            throw_validation("submission blocks must be distinct ascending");
        }
        gap_sum += submission_blocks[i] - submission_blocks[i - 1];
    }
    const double avg_gap =
        static_cast<double>(gap_sum) / static_cast<double>(submission_blocks.size() - 1);
    return da_quality_from_avg_gap(avg_gap);
}

CostLedger real_cost(std::span<const BlobSubmission> submissions, const ingest::BlockMap& blocks,
                     std::span<const PricePoint> prices,
                     std::span<const fees::FeePoint> real_fees, const fees::FeeParams& params) {
    // One DA transaction per (rollup, block) group.
    std::map<std::string, std::map<std::uint64_t, std::uint64_t>> group_counts;
    for (const auto& s : submissions) {
        group_counts[s.rollup_label][s.block_number] += 1;
    }

    CostLedger ledger;
    for (const auto& [label, per_block] : group_counts) {
        LedgerEntry& entry = ledger[label];
        for (const auto& [block, count] : per_block) {
            const BlockContext& ctx = blocks.at(block);
            const Wei blob_fee = Wei(count) * params.gas_per_blob * fee_at(real_fees, block).fee;
            const Wei base_fee = Wei(kDaTxGas) * ctx.base_fee_per_gas;
            const Wei priority_fee = Wei(kDaTxGas) * ctx.median_priority_fee;
            entry.blob_fee_wei += blob_fee;
            entry.base_fee_wei += base_fee;
            entry.priority_fee_wei += priority_fee;
            entry.total_usd += wei_to_usd(blob_fee + base_fee + priority_fee,
                                          ingest::resolve_price(ctx.timestamp, prices));
        }
    }
    return ledger;
}

CostLedger sim_cost(const sim::SimResult& result, const ingest::BlockMap& blocks,
                    std::span<const PricePoint> prices, const fees::FeeParams& params) {
    CostLedger ledger;
    for (const auto& event : result.events) {
        if (!event.tx_submitted) continue;
        // The virtual post-window flush event is priced with the last real
        // block's fee context and timestamp.
        const BlockContext& ctx = event.is_virtual ? blocks.at(blocks.last_block())
                                                   : blocks.at(event.block_number);

        // Per-rollup wire bytes across this block's shared blobs, in ascending
        // label order, drive every split.
        std::map<std::string, std::uint64_t> event_wire;
        for (const auto& blob : event.shared_submitted) {
            for (const auto& [label, wire] : blob.wire_by_label()) event_wire[label] += wire;
        }
        std::vector<std::string> labels;
        labels.reserve(event_wire.size());
        for (const auto& [label, wire] : event_wire) labels.push_back(label);

        std::map<std::string, Wei> event_wei;

        // Blob fee, split inside each blob by that blob's own wire shares.
        for (const auto& blob : event.shared_submitted) {
            const Wei blob_fee = Wei(params.gas_per_blob) * event.fee_entering;
            auto by_label = blob.wire_by_label();
            std::vector<std::string> blob_labels;
            std::vector<Uint> weights;
            for (const auto& [label, wire] : by_label) {
                blob_labels.push_back(label);
                weights.push_back(wire);
            }
            auto shares = allocate_prorata(blob_fee, weights);
            for (std::size_t i = 0; i < blob_labels.size(); ++i) {
                ledger[blob_labels[i]].blob_fee_wei += shares[i];
                event_wei[blob_labels[i]] += shares[i];
            }
        }

        // One cohort transaction per block: execution charges split pro-rata
        // by wire bytes across all of this block's shared blobs.
        std::vector<Uint> weights;
        weights.reserve(labels.size());
        for (const auto& label : labels) weights.push_back(event_wire[label]);
        const Wei exec_base = Wei(kDaTxGas) * ctx.base_fee_per_gas;
        const Wei exec_priority = Wei(kDaTxGas) * ctx.median_priority_fee;
        auto base_shares = allocate_prorata(exec_base, weights);
        auto priority_shares = allocate_prorata(exec_priority, weights);
        for (std::size_t i = 0; i < labels.size(); ++i) {
            ledger[labels[i]].base_fee_wei += base_shares[i];
            ledger[labels[i]].priority_fee_wei += priority_shares[i];
            event_wei[labels[i]] += base_shares[i] + priority_shares[i];
        }

        const Rational& price = ingest::resolve_price(ctx.timestamp, prices);
        for (const auto& [label, wei] : event_wei) {
            ledger[label].total_usd += wei_to_usd(wei, price);
        }
    }
    return ledger;
}

std::vector<Table1Row> table1_rows(std::span<const BlobSubmission> submissions) {
    struct Acc {
        std::uint64_t count = 0;
        Uint total = 0;
        std::set<std::uint64_t> blocks;
    };
    std::map<std::string, Acc> acc;
    for (const auto& s : submissions) {
        auto& a = acc[s.rollup_label];
        a.count += 1;
        a.total += s.stripped_size;
        a.blocks.insert(s.block_number);
    }
    std::vector<Table1Row> rows;
    rows.reserve(acc.size());
    for (const auto& [label, a] : acc) {
        Table1Row row;
        row.label = label;
        row.blob_count = a.count;
        row.total_bytes = a.total;
        std::vector<std::uint64_t> blocks(a.blocks.begin(), a.blocks.end());
        row.quality = da_quality(blocks);
        rows.push_back(std::move(row));
    }
    std::sort(rows.begin(), rows.end(), [](const Table1Row& a, const Table1Row& b) {
        if (a.blob_count != b.blob_count) return a.blob_count > b.blob_count;
        return a.label < b.label;
    });
    return rows;
}

std::vector<Table2Row> table2_rows(std::span<const BlobSubmission> submissions,
                                   const sim::SimResult& result, const CostLedger& real,
                                   const CostLedger& simulated) {
    struct RealAcc {
        Uint bytes = 0;
        std::set<std::uint64_t> blocks;
    };
    std::map<std::string, RealAcc> real_acc;
    for (const auto& s : submissions) {
        if (s.rollup_label == kUnlabeled) continue;
        auto& a = real_acc[s.rollup_label];
        a.bytes += s.stripped_size;
        a.blocks.insert(s.block_number);
    }

    auto totals = sim::result_totals(result);
    std::map<std::string, std::set<std::uint64_t>> sim_blocks;
    for (const auto& event : result.events) {
        for (const auto& blob : event.shared_submitted) {
            for (const auto& e : blob.entries) sim_blocks[e.label].insert(event.block_number);
        }
    }

    std::vector<Table2Row> rows;
    for (const auto& [label, a] : real_acc) {
        Table2Row row;
        row.label = label;
        row.real_bytes = a.bytes;
        std::vector<std::uint64_t> blocks(a.blocks.begin(), a.blocks.end());
        row.real_quality = da_quality(blocks);
        if (auto it = real.find(label); it != real.end()) row.real_usd = it->second.total_usd;
        if (auto it = totals.find(label); it != totals.end()) {
            row.sim_bytes = it->second.submitted_wire;
        }
        if (auto it = sim_blocks.find(label); it != sim_blocks.end()) {
            std::vector<std::uint64_t> sb(it->second.begin(), it->second.end());
            row.sim_quality = da_quality(sb);
        }
        if (auto it = simulated.find(label); it != simulated.end()) {
            row.sim_usd = it->second.total_usd;
        }
        rows.push_back(std::move(row));
    }
    std::sort(rows.begin(), rows.end(), [](const Table2Row& a, const Table2Row& b) {
        if (a.real_usd != b.real_usd) return a.real_usd > b.real_usd;
        return a.label < b.label;
    });
    return rows;
}

std::vector<unsigned> per_block_counts(std::span<const BlobSubmission> submissions,
                                       std::uint64_t window_start, std::uint64_t window_end,
                                       unsigned max_blobs_per_block) {
    if (window_start > window_end) throw_validation("window start after end");
    std::vector<unsigned> counts(window_end - window_start + 1, 0);
    for (const auto& s : submissions) {
        if (s.block_number < window_start || s.block_number > window_end) {
            throw_validation("submission at block ", s.block_number, " outside window [",
                             window_start, ", ", window_end, "]");
        }
        unsigned& c = counts[s.block_number - window_start];
        if (++c > max_blobs_per_block) {
            throw_validation("block ", s.block_number, " carries more than ",
                             max_blobs_per_block, " blobs");
        }
    }
    return counts;
}

std::vector<unsigned> sim_block_counts(const sim::SimResult& result) {
    std::vector<unsigned> counts;
    counts.reserve(result.events.size());
    for (const auto& event : result.events) {
        if (event.is_virtual) continue;
        counts.push_back(event.unlabeled_submitted +
                         static_cast<unsigned>(event.shared_submitted.size()));
    }
    return counts;
}

std::vector<fees::FeePoint> sim_fee_series(const sim::SimResult& result) {
    std::vector<fees::FeePoint> series;
    series.reserve(result.events.size());
    for (const auto& event : result.events) {
        if (event.is_virtual) continue;
        fees::FeePoint p;
        p.block = event.block_number;
        p.entering = fees::FeeState{event.excess_entering};
        p.fee = event.fee_entering;
        series.push_back(std::move(p));
    }
    return series;
}

std::vector<BucketRow> bucket_counts(std::uint64_t start_block, std::span<const unsigned> counts,
                                     std::uint64_t bucket_size, unsigned target) {
    if (bucket_size == 0) throw_validation("bucket_size must be positive");
    std::vector<BucketRow> rows;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        const std::size_t bucket = i / bucket_size;
        if (bucket >= rows.size()) {
            rows.push_back(BucketRow{start_block + bucket * bucket_size, 0, 0});
        }
        rows[bucket].total_blobs += counts[i];
        if (counts[i] > target) rows[bucket].blocks_over_target += 1;
    }
    return rows;
}

std::vector<FeeCompareRow> fee_series_compare(std::span<const fees::FeePoint> real,
                                              std::span<const fees::FeePoint> simulated) {
    if (real.size() != simulated.size() ||
        (!real.empty() && real.front().block != simulated.front().block)) {
        throw_validation("real and simulated fee series cover different windows");
    }
    std::vector<FeeCompareRow> rows;
    rows.reserve(real.size());
    for (std::size_t i = 0; i < real.size(); ++i) {
        FeeCompareRow row;
        row.block = real[i].block;
        row.real_fee = real[i].fee;
        row.sim_fee = simulated[i].fee;
        row.real_minus_sim = Uint(real[i].fee) - Uint(simulated[i].fee);
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_table1(std::ostream& os, std::span<const Table1Row> rows) {
    os << "rollup,blob_count,avg_size_kb,utilization_pct,total_size_gb,da_quality\n";
    for (const auto& r : rows) {
        const Rational avg_kb(r.total_bytes, Uint(r.blob_count) * 1024);
        const Rational util_pct(r.total_bytes * 100, Uint(r.blob_count) * codec::kBlobBytes);
        const Rational total_gb(r.total_bytes, Uint(1) << 30);
        const std::string fields[] = {r.label,
                                      std::to_string(r.blob_count),
                                      format_fixed(avg_kb, 2),
                                      format_fixed(util_pct, 2),
                                      format_fixed(total_gb, 2),
                                      quality_str(r.quality)};
        csvio::write_row(os, fields);
    }
}

void write_table2(std::ostream& os, std::span<const Table2Row> rows) {
    os << "rollup,real_cost_usd,real_size_gb,real_da_quality,sim_cost_usd,sim_size_gb,"
          "sim_da_quality\n";
    const Uint gib = Uint(1) << 30;
    for (const auto& r : rows) {
        const std::string fields[] = {r.label,
                                      format_fixed(r.real_usd, 2),
                                      format_fixed(Rational(r.real_bytes, gib), 2),
                                      quality_str(r.real_quality),
                                      format_fixed(r.sim_usd, 2),
                                      format_fixed(Rational(r.sim_bytes, gib), 2),
                                      quality_str(r.sim_quality)};
        csvio::write_row(os, fields);
    }
}

void write_buckets(std::ostream& os, std::span<const BucketRow> real,
                   std::span<const BucketRow> simulated) {
    if (real.size() != simulated.size()) {
        throw_validation("real and simulated bucket rows differ in length");
    }
    os << "bucket_start,real_total_blobs,real_blocks_over_target,sim_total_blobs,"
          "sim_blocks_over_target\n";
    for (std::size_t i = 0; i < real.size(); ++i) {
        const std::string fields[] = {std::to_string(real[i].bucket_start),
                                      std::to_string(real[i].total_blobs),
                                      std::to_string(real[i].blocks_over_target),
                                      std::to_string(simulated[i].total_blobs),
                                      std::to_string(simulated[i].blocks_over_target)};
        csvio::write_row(os, fields);
    }
}

void write_fee_series(std::ostream& os, std::span<const FeeCompareRow> rows) {
    os << "block,real_fee,sim_fee,real_minus_sim\n";
    for (const auto& r : rows) {
        const std::string fields[] = {std::to_string(r.block), r.real_fee.str(), r.sim_fee.str(),
                                      r.real_minus_sim.str()};
        csvio::write_row(os, fields);
    }
}

void write_fee_points(std::ostream& os, std::span<const fees::FeePoint> points) {
    os << "block,excess_blob_gas,blob_base_fee\n";
    for (const auto& p : points) {
        const std::string fields[] = {std::to_string(p.block),
                                      std::to_string(p.entering.excess_blob_gas), p.fee.str()};
        csvio::write_row(os, fields);
    }
}

}  // namespace blobshare::metrics
