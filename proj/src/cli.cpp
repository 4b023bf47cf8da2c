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

#include "blobshare/cli.hpp"

#include "blobshare/codec.hpp"
#include "blobshare/csv.hpp"
#include "blobshare/error.hpp"
#include "blobshare/ingest.hpp"
#include "blobshare/metrics.hpp"
#include "blobshare/reconstruct.hpp"
#include "blobshare/sim.hpp"
#include "blobshare/synth.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace blobshare::cli {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

//! Table 1's analysis window, the default when neither config nor flags set one.
constexpr std::uint64_t kDefaultWindowStart = 19426589;
constexpr std::uint64_t kDefaultWindowEnd = 20611514;

struct RunConfig {
    std::string submissions;
    std::string blocks;
    std::string prices;
    std::string out_dir = ".";
    std::uint64_t window_start = kDefaultWindowStart;
    std::uint64_t window_end = kDefaultWindowEnd;
    bool include_flush = true;
    bool emit_events = false;
    fees::FeeParams params;
};

//! Raw option holders; a value is applied only when the flag/key was given,
//! so CLI flags override config-file keys which override defaults.
struct Overrides {
    std::optional<std::string> submissions, blocks, prices, out_dir;
    std::optional<std::uint64_t> window_start, window_end;
    std::optional<bool> include_flush, emit_events;
    std::optional<std::string> min_blob_base_fee;
    std::optional<std::uint64_t> update_fraction, gas_per_blob;
};

void apply_config_file(const std::string& path, RunConfig& cfg) {
    json doc;
    try {
        doc = json::parse(csvio::read_file(path));
    } catch (const json::parse_error& e) {
        throw_validation("config ", path, ": invalid JSON: ", e.what());
    }
    try {
        if (doc.contains("submissions")) cfg.submissions = doc.at("submissions").get<std::string>();
        if (doc.contains("blocks")) cfg.blocks = doc.at("blocks").get<std::string>();
        if (doc.contains("prices")) cfg.prices = doc.at("prices").get<std::string>();
        if (doc.contains("out_dir")) cfg.out_dir = doc.at("out_dir").get<std::string>();
        if (doc.contains("start_block")) cfg.window_start = doc.at("start_block").get<std::uint64_t>();
        if (doc.contains("end_block")) cfg.window_end = doc.at("end_block").get<std::uint64_t>();
        if (doc.contains("include_flush")) cfg.include_flush = doc.at("include_flush").get<bool>();
        if (doc.contains("emit_events")) cfg.emit_events = doc.at("emit_events").get<bool>();
        if (doc.contains("min_blob_base_fee")) {
            const auto& field = doc.at("min_blob_base_fee");
            Wei v;
            bool ok = false;
            if (field.is_string()) {
                ok = parse_uint(field.get<std::string>(), v);
            } else if (field.is_number_unsigned()) {
                v = Wei(field.get<std::uint64_t>());
                ok = true;
            }
            if (!ok) throw_validation("config: min_blob_base_fee must be an unsigned integer");
            cfg.params.min_blob_base_fee = v;
        }
        if (doc.contains("blob_fee_update_fraction")) {
            cfg.params.blob_fee_update_fraction =
                doc.at("blob_fee_update_fraction").get<std::uint64_t>();
        }
        if (doc.contains("gas_per_blob")) {
            cfg.params.gas_per_blob = doc.at("gas_per_blob").get<std::uint64_t>();
            cfg.params.target_blob_gas = 3 * cfg.params.gas_per_blob;
        }
    } catch (const json::exception& e) {
        throw_validation("config ", path, ": ", e.what());
    }
}

RunConfig resolve(const std::string& config_path, const Overrides& o) {
    RunConfig cfg;
    if (!config_path.empty()) apply_config_file(config_path, cfg);
    if (o.submissions) cfg.submissions = *o.submissions;
    if (o.blocks) cfg.blocks = *o.blocks;
    if (o.prices) cfg.prices = *o.prices;
    if (o.out_dir) cfg.out_dir = *o.out_dir;
    if (o.window_start) cfg.window_start = *o.window_start;
    if (o.window_end) cfg.window_end = *o.window_end;
    if (o.include_flush) cfg.include_flush = *o.include_flush;
    if (o.emit_events) cfg.emit_events = *o.emit_events;
    if (o.min_blob_base_fee) {
        Wei v;
        if (!parse_uint(*o.min_blob_base_fee, v)) {
            throw_validation("--min-blob-base-fee must be an unsigned integer");
        }
        cfg.params.min_blob_base_fee = v;
    }
    if (o.update_fraction) cfg.params.blob_fee_update_fraction = *o.update_fraction;
    if (o.gas_per_blob) {
        cfg.params.gas_per_blob = *o.gas_per_blob;
        cfg.params.target_blob_gas = 3 * *o.gas_per_blob;
    }
    if (cfg.window_start > cfg.window_end) {
        throw_validation("start block ", cfg.window_start, " after end block ", cfg.window_end);
    }
    cfg.params.validate();
    return cfg;
}

//! Loaded and window-aligned inputs shared by analyze/simulate/fees.
struct Pipeline {
    RunConfig cfg;
    std::vector<BlobSubmission> submissions;  // filtered to the window
    ingest::BlockMap blocks;
    std::vector<PricePoint> prices;
    std::vector<unsigned> real_counts;
    std::vector<fees::FeePoint> real_fees;
};

Pipeline load_pipeline(RunConfig cfg) {
    if (cfg.submissions.empty()) throw_validation("no submissions file given");
    if (cfg.blocks.empty()) throw_validation("no blocks file given");
    if (cfg.prices.empty()) throw_validation("no prices file given");

    Pipeline p;
    p.cfg = std::move(cfg);
    auto all = ingest::load_submissions(p.cfg.submissions);
    for (auto& s : all) {
        if (s.block_number >= p.cfg.window_start && s.block_number <= p.cfg.window_end) {
            p.submissions.push_back(std::move(s));
        }
    }
    p.blocks = ingest::load_blocks(p.cfg.blocks);
    if (p.blocks.empty() || p.blocks.first_block() > p.cfg.window_start ||
        p.blocks.last_block() < p.cfg.window_end) {
        throw_validation("blocks file covers [",
                         p.blocks.empty() ? 0 : p.blocks.first_block(), ", ",
                         p.blocks.empty() ? 0 : p.blocks.last_block(),
                         "] but the window is [", p.cfg.window_start, ", ", p.cfg.window_end,
                         "]");
    }
    ingest::validate_coverage(p.submissions, p.blocks);
    p.prices = ingest::load_prices(p.cfg.prices);

    p.real_counts = metrics::per_block_counts(p.submissions, p.cfg.window_start,
                                              p.cfg.window_end, p.cfg.params.max_blobs_per_block);
    // The window starts at the fork block, where the accumulator is zero.
    p.real_fees = fees::replay_fee_series(p.cfg.window_start, p.real_counts, fees::FeeState{0},
                                          p.cfg.params);
    return p;
}

void write_output(const RunConfig& cfg, const std::string& name, const std::string& content) {
    fs::create_directories(cfg.out_dir);
    csvio::write_file((fs::path(cfg.out_dir) / name).string(), content);
}

sim::SimResult run_simulation(const Pipeline& p) {
    auto schedule = reconstruct::reconstruct_all(p.submissions, p.cfg.window_start);
    sim::RunInputs inputs;
    inputs.window_start = p.cfg.window_start;
    inputs.window_end = p.cfg.window_end;
    inputs.schedule = &schedule;
    for (const auto& s : p.submissions) {
        if (s.rollup_label == kUnlabeled) inputs.unlabeled_counts[s.block_number] += 1;
    }
    inputs.params = p.cfg.params;
    inputs.include_flush = p.cfg.include_flush;
    return sim::run(inputs);
}

std::string events_jsonl(const sim::SimResult& result) {
    std::ostringstream os;
    for (const auto& event : result.events) {
        nlohmann::ordered_json line;
        line["block"] = event.block_number;
        line["unlabeled"] = event.unlabeled_submitted;
        line["shared"] = event.shared_submitted.size();
        line["excess_blob_gas"] = event.excess_entering;
        line["blob_base_fee"] = event.fee_entering.str();
        os << line.dump() << '\n';
    }
    return os.str();
}

int cmd_analyze(const RunConfig& cfg) {
    Pipeline p = load_pipeline(cfg);
    auto rows = metrics::table1_rows(p.submissions);
    std::ostringstream t1;
    metrics::write_table1(t1, rows);
    write_output(p.cfg, "table1.csv", t1.str());
    std::ostringstream rf;
    metrics::write_fee_points(rf, p.real_fees);
    write_output(p.cfg, "real_fees.csv", rf.str());
    return 0;
}

int cmd_simulate(const RunConfig& cfg) {
    Pipeline p = load_pipeline(cfg);
    auto result = run_simulation(p);

    auto real_ledger = metrics::real_cost(p.submissions, p.blocks, p.prices, p.real_fees,
                                          p.cfg.params);
    auto sim_ledger = metrics::sim_cost(result, p.blocks, p.prices, p.cfg.params);
    auto rows = metrics::table2_rows(p.submissions, result, real_ledger, sim_ledger);

    std::ostringstream t2;
    metrics::write_table2(t2, rows);
    write_output(p.cfg, "table2.csv", t2.str());

    auto sim_series = metrics::sim_fee_series(result);
    std::ostringstream sf;
    metrics::write_fee_points(sf, sim_series);
    write_output(p.cfg, "sim_fees.csv", sf.str());

    if (p.cfg.emit_events) write_output(p.cfg, "events.jsonl", events_jsonl(result));
    return 0;
}

int cmd_fees(const RunConfig& cfg) {
    Pipeline p = load_pipeline(cfg);
    auto result = run_simulation(p);
    auto sim_series = metrics::sim_fee_series(result);

    std::ostringstream fsr;
    metrics::write_fee_series(fsr, metrics::fee_series_compare(p.real_fees, sim_series));
    write_output(p.cfg, "fee_series.csv", fsr.str());

    auto real_buckets = metrics::bucket_counts(p.cfg.window_start, p.real_counts);
    auto sim_buckets =
        metrics::bucket_counts(p.cfg.window_start, metrics::sim_block_counts(result));
    std::ostringstream bk;
    metrics::write_buckets(bk, real_buckets, sim_buckets);
    write_output(p.cfg, "buckets.csv", bk.str());
    return 0;
}

int cmd_strip(const std::string& path) {
    std::string data = csvio::read_file(path);
    std::vector<std::uint8_t> raw;
    if (data.size() == codec::kBlobBytes) {
        raw.assign(data.begin(), data.end());
    } else {
        // Accept a 0x-prefixed hex dump (trailing whitespace tolerated).
        while (!data.empty() && (data.back() == '\n' || data.back() == '\r' ||
                                 data.back() == ' ' || data.back() == '\t')) {
            data.pop_back();
        }
        if (data.size() != 2 + 2 * codec::kBlobBytes || data[0] != '0' ||
            (data[1] != 'x' && data[1] != 'X')) {
            throw_validation("expected a ", codec::kBlobBytes,
                             "-byte binary blob or a 0x-prefixed hex string of ",
                             2 * codec::kBlobBytes, " digits, got ", data.size(), " bytes");
        }
        raw.reserve(codec::kBlobBytes);
        auto nibble = [&](char c) -> unsigned {
            if (c >= '0' && c <= '9') return static_cast<unsigned>(c - '0');
            if (c >= 'a' && c <= 'f') return static_cast<unsigned>(c - 'a' + 10);
            if (c >= 'A' && c <= 'F') return static_cast<unsigned>(c - 'A' + 10);
            throw_validation("invalid hex digit '", c, "'");
        };
        for (std::size_t i = 2; i < data.size(); i += 2) {
            raw.push_back(static_cast<std::uint8_t>(nibble(data[i]) << 4 | nibble(data[i + 1])));
        }
    }
    std::cout << ingest::strip_padding(raw) << '\n';
    return 0;
}

int cmd_synth(const std::string& spec_path, const std::string& out_dir) {
    auto spec = synth::spec_from_json(csvio::read_file(spec_path));
    auto out = synth::generate(spec);
    fs::create_directories(out_dir);
    csvio::write_file((fs::path(out_dir) / "submissions.csv").string(),
                      ingest::serialize_submissions(out.submissions));
    csvio::write_file((fs::path(out_dir) / "blocks.csv").string(),
                      ingest::serialize_blocks(out.blocks));
    csvio::write_file((fs::path(out_dir) / "prices.csv").string(),
                      ingest::serialize_prices(out.prices));
    return 0;
}

}  // namespace

int run(int argc, const char* const* argv) {
    CLI::App app{"Blob sharing trace replay and cost analysis"};
    app.require_subcommand(1);

    std::string config_path;
    Overrides o;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON config file; flags override its keys");
        sub->add_option("--submissions", o.submissions, "submissions.csv path");
        sub->add_option("--blocks", o.blocks, "blocks.csv path");
        sub->add_option("--prices", o.prices, "prices.csv path");
        sub->add_option("--start-block", o.window_start, "first block of the analysis window");
        sub->add_option("--end-block", o.window_end, "last block of the analysis window");
        sub->add_option("--out-dir", o.out_dir, "output directory");
        sub->add_option("--min-blob-base-fee", o.min_blob_base_fee, "fee parameter B in wei");
        sub->add_option("--blob-fee-update-fraction", o.update_fraction, "fee parameter F");
        sub->add_option("--gas-per-blob", o.gas_per_blob,
                        "fee parameter G (target follows as 3G)");
    };

    auto* analyze = app.add_subcommand("analyze", "Baseline per-rollup utilization table");
    add_common(analyze);

    auto* simulate = app.add_subcommand("simulate", "Blob sharing simulation and cost comparison");
    add_common(simulate);
    bool flush_on = true;
    bool emit_events = false;
    auto* flush_flag =
        simulate->add_flag("--include-flush,!--no-include-flush", flush_on,
                           "seal the final partial blob at window end (default on)");
    auto* events_flag =
        simulate->add_flag("--emit-events", emit_events, "write events.jsonl next to the tables");

    auto* fees_cmd = app.add_subcommand("fees", "Fee series and per-bucket blob counts");
    add_common(fees_cmd);

    auto* strip = app.add_subcommand("strip", "Print the stripped size of one raw blob");
    std::string strip_path;
    strip->add_option("blob", strip_path, "binary blob or 0x-hex dump")->required();

    auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic input triplet");
    std::string spec_path;
    std::string synth_out = ".";
    synth_cmd->add_option("spec", spec_path, "synth spec JSON")->required();
    synth_cmd->add_option("--out-dir", synth_out, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (*strip) return cmd_strip(strip_path);
        if (*synth_cmd) return cmd_synth(spec_path, synth_out);
        if (flush_flag->count() > 0) o.include_flush = flush_on;
        if (events_flag->count() > 0) o.emit_events = emit_events;
        RunConfig cfg = resolve(config_path, o);
        if (*analyze) return cmd_analyze(cfg);
        if (*simulate) return cmd_simulate(cfg);
        if (*fees_cmd) return cmd_fees(cfg);
        throw_validation("no subcommand selected");
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.kind() == ErrorKind::kIo ? 2 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace blobshare::cli
