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
#include "blobshare/csv.hpp"
#include "blobshare/error.hpp"
#include "blobshare/ingest.hpp"
#include "blobshare/synth.hpp"

#include <doctest.h>

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <vector>

using namespace blobshare;
namespace fs = std::filesystem;

namespace {

//! Scratch directory removed at scope exit.
class TempDir {
  public:
    TempDir() {
        static int counter = 0;
        path_ = fs::temp_directory_path() /
                ("blobshare_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    fs::path path() const { return path_; }
    std::string file(const std::string& name) const { return (path_ / name).string(); }

  private:
    fs::path path_;
};

int run_cli(std::vector<std::string> args) {
    std::vector<const char*> argv{"blobshare"};
    for (const auto& a : args) argv.push_back(a.c_str());
    return cli::run(static_cast<int>(argv.size()), argv.data());
}

synth::SynthSpec small_spec(std::uint64_t seed) {
    synth::SynthSpec spec;
    spec.seed = seed;
    spec.start_block = 1000;
    spec.block_count = 400;
    spec.unlabeled_pct = 25;
    spec.rollups = {
        {"alpha", 40000, 20, 0},
        {"beta", 4000, 30, 25},
        {"gamma", 500, 0, 60},
    };
    spec.base_fee = {Wei(30000000000), true, 15, Wei(1000000000), Wei(200000000000)};
    spec.priority_fee = {Wei(2000000000), false, 0, 0, 0};
    spec.price = {Rational(250000, 100), 2, true, 5, 100};
    return spec;
}

}  // namespace

TEST_CASE("synth is seed-deterministic and satisfies every ingest invariant") {
    auto a = synth::generate(small_spec(42));
    auto b = synth::generate(small_spec(42));
    CHECK(ingest::serialize_submissions(a.submissions) ==
          ingest::serialize_submissions(b.submissions));
    CHECK(ingest::serialize_blocks(a.blocks) == ingest::serialize_blocks(b.blocks));
    CHECK(ingest::serialize_prices(a.prices) == ingest::serialize_prices(b.prices));

    auto c = synth::generate(small_spec(43));
    CHECK(ingest::serialize_submissions(a.submissions) !=
          ingest::serialize_submissions(c.submissions));

    // Round through the loaders: all invariants (sorting, uniqueness, caps,
    // contiguity, ascending prices) must hold for any seed.
    std::mt19937_64 seeds(0x5eed);
    for (int i = 0; i < 10; ++i) {
        auto out = synth::generate(small_spec(seeds()));
        TempDir dir;
        csvio::write_file(dir.file("submissions.csv"),
                          ingest::serialize_submissions(out.submissions));
        csvio::write_file(dir.file("blocks.csv"), ingest::serialize_blocks(out.blocks));
        csvio::write_file(dir.file("prices.csv"), ingest::serialize_prices(out.prices));
        auto subs = ingest::load_submissions(dir.file("submissions.csv"));
        auto blocks = ingest::load_blocks(dir.file("blocks.csv"));
        auto prices = ingest::load_prices(dir.file("prices.csv"));
        CHECK(subs.size() == out.submissions.size());
        ingest::validate_coverage(subs, blocks);
        std::map<std::uint64_t, unsigned> per_block;
        for (const auto& s : subs) {
            CHECK(s.stripped_size <= 131072);
            per_block[s.block_number] += 1;
        }
        for (const auto& [block, count] : per_block) CHECK(count <= 6);
        CHECK(!prices.empty());
        CHECK(prices.front().timestamp <= blocks.at(blocks.first_block()).timestamp);
    }
}

TEST_CASE("cli synth writes a loadable triplet and analyze/simulate/fees run on it") {
    TempDir dir;
    const std::string spec_json = R"({
        "seed": 7,
        "start_block": 5000,
        "blocks": 300,
        "unlabeled_pct": 20,
        "rollups": [
            {"label": "alpha", "mean_bytes_per_block": 50000, "jitter_pct": 10},
            {"label": "tiny", "mean_bytes_per_block": 300, "submit_interval": 40}
        ],
        "base_fee": {"initial": "20000000000", "walk": true, "step_permille": 10,
                     "min": "1000000000", "max": "90000000000"},
        "priority_fee": {"initial": "1500000000"},
        "price": {"initial": "2600.00", "interval_blocks": 50}
    })";
    csvio::write_file(dir.file("spec.json"), spec_json);

    CHECK(run_cli({"synth", dir.file("spec.json"), "--out-dir", dir.path().string()}) == 0);
    CHECK(fs::exists(dir.file("submissions.csv")));
    CHECK(fs::exists(dir.file("blocks.csv")));
    CHECK(fs::exists(dir.file("prices.csv")));

    auto common = [&](const char* sub) {
        return std::vector<std::string>{sub,
                                        "--submissions",
                                        dir.file("submissions.csv"),
                                        "--blocks",
                                        dir.file("blocks.csv"),
                                        "--prices",
                                        dir.file("prices.csv"),
                                        "--start-block",
                                        "5000",
                                        "--end-block",
                                        "5299",
                                        "--out-dir",
                                        dir.path().string()};
    };

    CHECK(run_cli(common("analyze")) == 0);
    CHECK(fs::exists(dir.file("table1.csv")));
    CHECK(fs::exists(dir.file("real_fees.csv")));

    auto sim_args = common("simulate");
    sim_args.push_back("--emit-events");
    CHECK(run_cli(sim_args) == 0);
    CHECK(fs::exists(dir.file("table2.csv")));
    CHECK(fs::exists(dir.file("sim_fees.csv")));
    CHECK(fs::exists(dir.file("events.jsonl")));

    CHECK(run_cli(common("fees")) == 0);
    CHECK(fs::exists(dir.file("fee_series.csv")));
    CHECK(fs::exists(dir.file("buckets.csv")));

    // Deterministic rerun: byte-identical table2.
    const std::string table2_first = csvio::read_file(dir.file("table2.csv"));
    CHECK(run_cli(common("simulate")) == 0);
    CHECK(csvio::read_file(dir.file("table2.csv")) == table2_first);

    // Event log: one JSON object per window block, keys per the schema.
    std::ifstream events(dir.file("events.jsonl"));
    std::string line;
    std::size_t lines = 0;
    while (std::getline(events, line)) {
        ++lines;
        CHECK(line.find("\"block\"") != std::string::npos);
        CHECK(line.find("\"unlabeled\"") != std::string::npos);
        CHECK(line.find("\"shared\"") != std::string::npos);
        CHECK(line.find("\"excess_blob_gas\"") != std::string::npos);
        CHECK(line.find("\"blob_base_fee\"") != std::string::npos);
    }
    CHECK(lines >= 300);
}

TEST_CASE("cli analyze handles empty submissions and missing files per exit codes") {
    TempDir dir;
    csvio::write_file(dir.file("submissions.csv"),
                      "block_number,tx_index,blob_index,rollup_label,stripped_size\n");
    std::string blocks = "block_number,timestamp,base_fee_per_gas,median_priority_fee\n";
    for (int b = 0; b < 10; ++b) {
        blocks += std::to_string(100 + b) + "," + std::to_string(1000 + 12 * b) + ",10,2\n";
    }
    csvio::write_file(dir.file("blocks.csv"), blocks);
    csvio::write_file(dir.file("prices.csv"), "timestamp,usd_per_eth\n900,2000.00\n");

    auto args = std::vector<std::string>{"analyze",       "--submissions",
                                         dir.file("submissions.csv"), "--blocks",
                                         dir.file("blocks.csv"),      "--prices",
                                         dir.file("prices.csv"),      "--start-block",
                                         "100",                        "--end-block",
                                         "109",                        "--out-dir",
                                         dir.path().string()};
    CHECK(run_cli(args) == 0);
    auto table1 = csvio::read_file(dir.file("table1.csv"));
    CHECK(table1 ==
          "rollup,blob_count,avg_size_kb,utilization_pct,total_size_gb,da_quality\n");

    args[2] = dir.file("missing.csv");
    CHECK(run_cli(args) == 2);  // I/O error

    // Window not covered by blocks.csv: validation error.
    args[2] = dir.file("submissions.csv");
    args[10] = "200";
    CHECK(run_cli(args) == 1);
}

TEST_CASE("cli strip reads binary and hex blobs") {
    TempDir dir;
    std::string blob(131072, '\0');
    blob[99] = 'x';
    csvio::write_file(dir.file("blob.bin"), blob);
    CHECK(run_cli({"strip", dir.file("blob.bin")}) == 0);

    std::string hex = "0x";
    hex.reserve(2 + 262144);
    for (int i = 0; i < 131072; ++i) hex += (i == 0) ? "ff" : "00";
    csvio::write_file(dir.file("blob.hex"), hex + "\n");
    CHECK(run_cli({"strip", dir.file("blob.hex")}) == 0);

    csvio::write_file(dir.file("bad.bin"), "short");
    CHECK(run_cli({"strip", dir.file("bad.bin")}) == 1);
}

TEST_CASE("cli config file keys are overridden by flags") {
    TempDir dir;
    auto out = synth::generate(small_spec(11));
    csvio::write_file(dir.file("submissions.csv"), ingest::serialize_submissions(out.submissions));
    csvio::write_file(dir.file("blocks.csv"), ingest::serialize_blocks(out.blocks));
    csvio::write_file(dir.file("prices.csv"), ingest::serialize_prices(out.prices));

    const std::string config = std::string("{\n") +
                               "  \"submissions\": \"" + dir.file("submissions.csv") + "\",\n" +
                               "  \"blocks\": \"" + dir.file("blocks.csv") + "\",\n" +
                               "  \"prices\": \"" + dir.file("prices.csv") + "\",\n" +
                               "  \"start_block\": 1000,\n" +
                               "  \"end_block\": 1399,\n" +
                               "  \"out_dir\": \"" + dir.file("cfgout") + "\"\n" +
                               "}\n";
    csvio::write_file(dir.file("run.json"), config);

    CHECK(run_cli({"analyze", "--config", dir.file("run.json")}) == 0);
    CHECK(fs::exists(dir.file("cfgout") + "/table1.csv"));

    // Flag beats config: point the output somewhere else.
    CHECK(run_cli({"analyze", "--config", dir.file("run.json"), "--out-dir",
                   dir.file("flagout")}) == 0);
    CHECK(fs::exists(dir.file("flagout") + "/table1.csv"));
}
