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

#include "blobshare/ingest.hpp"

#include "blobshare/codec.hpp"
#include "blobshare/csv.hpp"
#include "blobshare/error.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <tuple>

namespace blobshare::ingest {

namespace {

void check_header(const csvio::Row& header, std::span<const char* const> expected,
                  const std::string& path) {
    bool ok = header.fields.size() == expected.size();
    for (std::size_t i = 0; ok && i < expected.size(); ++i) {
        ok = header.fields[i] == expected[i];
    }
    if (!ok) {
        std::ostringstream want;
        for (std::size_t i = 0; i < expected.size(); ++i) {
            if (i) want << ',';
            want << expected[i];
        }
        throw_validation(path, ": bad header, expected '", want.str(), "'");
    }
}

void check_field_count(const csvio::Row& row, std::size_t expected) {
    if (row.fields.size() != expected) {
        throw_at(row.line, row.fields.size(), "expected ", expected, " fields, got ",
                 row.fields.size());
    }
}

std::uint64_t field_u64(const csvio::Row& row, std::size_t col, const char* name) {
    std::uint64_t v = 0;
    if (!parse_u64(row.fields[col], v)) {
        throw_at(row.line, col + 1, "invalid ", name, " '", row.fields[col], "'");
    }
    return v;
}

Wei field_wei(const csvio::Row& row, std::size_t col, const char* name) {
    Wei v;
    if (!parse_uint(row.fields[col], v)) {
        throw_at(row.line, col + 1, "invalid ", name, " '", row.fields[col], "'");
    }
    return v;
}

}  // namespace

std::size_t strip_padding(std::span<const std::uint8_t> raw_blob) {
    if (raw_blob.size() != codec::kBlobBytes) {
        throw_validation("raw blob must be exactly ", codec::kBlobBytes, " bytes, got ",
                         raw_blob.size());
    }
    std::size_t i = raw_blob.size();
    while (i > 0 && raw_blob[i - 1] == 0) --i;
    return i;
}

std::vector<BlobSubmission> load_submissions(const std::string& path) {
    static constexpr const char* kColumns[] = {"block_number", "tx_index", "blob_index",
                                               "rollup_label", "stripped_size"};
    auto rows = csvio::parse_file(path);
    if (rows.empty()) throw_validation(path, ": missing header row");
    check_header(rows[0], kColumns, path);

    std::vector<BlobSubmission> out;
    out.reserve(rows.size() - 1);
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        check_field_count(row, 5);
        BlobSubmission s;
        s.block_number = field_u64(row, 0, "block_number");
        s.tx_index = static_cast<std::uint32_t>(field_u64(row, 1, "tx_index"));
        s.blob_index = static_cast<std::uint32_t>(field_u64(row, 2, "blob_index"));
        s.rollup_label = row.fields[3];
        if (s.rollup_label.empty()) throw_at(row.line, 4, "rollup_label must be non-empty");
        const std::uint64_t size = field_u64(row, 4, "stripped_size");
        if (size > codec::kBlobBytes) {
            throw_at(row.line, 5, "stripped_size ", size, " exceeds ", codec::kBlobBytes);
        }
        s.stripped_size = static_cast<std::uint32_t>(size);
        out.push_back(std::move(s));
    }

    std::stable_sort(out.begin(), out.end(), [](const BlobSubmission& a, const BlobSubmission& b) {
        return std::tie(a.block_number, a.tx_index, a.blob_index) <
               std::tie(b.block_number, b.tx_index, b.blob_index);
    });
    for (std::size_t i = 1; i < out.size(); ++i) {
        const auto& a = out[i - 1];
        const auto& b = out[i];
        if (a.block_number == b.block_number && a.tx_index == b.tx_index &&
            a.blob_index == b.blob_index) {
            throw_validation(path, ": duplicate key (block ", b.block_number, ", tx ", b.tx_index,
                             ", blob ", b.blob_index, ")");
        }
    }
    return out;
}

BlockMap::BlockMap(std::vector<BlockContext> blocks) : blocks_(std::move(blocks)) {
    if (blocks_.empty()) return;
    first_ = blocks_[0].block_number;
    std::vector<std::uint64_t> missing;
    for (std::size_t i = 1; i < blocks_.size(); ++i) {
        const std::uint64_t prev = blocks_[i - 1].block_number;
        const std::uint64_t cur = blocks_[i].block_number;
        if (cur <= prev) {
            throw_validation("block heights must be strictly ascending (", prev, " then ", cur,
                             ")");
        }
        for (std::uint64_t h = prev + 1; h < cur && missing.size() < 16; ++h) {
            missing.push_back(h);
        }
    }
    if (!missing.empty()) {
        std::ostringstream os;
        for (std::size_t i = 0; i < missing.size(); ++i) {
            if (i) os << ", ";
            os << missing[i];
        }
        throw_validation("block range has gaps, missing heights: ", os.str(),
                         missing.size() >= 16 ? ", ..." : "");
    }
}

const BlockContext& BlockMap::at(std::uint64_t height) const {
    if (!contains(height)) {
        throw_validation("block ", height, " outside loaded range [", first_, ", ",
                         empty() ? 0 : last_block(), "]");
    }
    return blocks_[height - first_];
}

BlockMap load_blocks(const std::string& path) {
    static constexpr const char* kColumns[] = {"block_number", "timestamp", "base_fee_per_gas",
                                               "median_priority_fee"};
    auto rows = csvio::parse_file(path);
    if (rows.empty()) throw_validation(path, ": missing header row");
    check_header(rows[0], kColumns, path);

    std::vector<BlockContext> out;
    out.reserve(rows.size() - 1);
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        check_field_count(row, 4);
        BlockContext b;
        b.block_number = field_u64(row, 0, "block_number");
        b.timestamp = static_cast<std::int64_t>(field_u64(row, 1, "timestamp"));
        b.base_fee_per_gas = field_wei(row, 2, "base_fee_per_gas");
        b.median_priority_fee = field_wei(row, 3, "median_priority_fee");
        out.push_back(std::move(b));
    }
    return BlockMap(std::move(out));
}

std::vector<PricePoint> load_prices(const std::string& path) {
    static constexpr const char* kColumns[] = {"timestamp", "usd_per_eth"};
    auto rows = csvio::parse_file(path);
    if (rows.empty()) throw_validation(path, ": missing header row");
    check_header(rows[0], kColumns, path);

    std::vector<PricePoint> out;
    out.reserve(rows.size() - 1);
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        check_field_count(row, 2);
        PricePoint p;
        p.timestamp = static_cast<std::int64_t>(field_u64(row, 0, "timestamp"));
        try {
            p.usd_per_eth = parse_decimal(row.fields[1], &p.decimals);
        } catch (const Error&) {
            throw_at(row.line, 2, "invalid usd_per_eth '", row.fields[1], "'");
        }
        if (p.usd_per_eth <= 0) throw_at(row.line, 2, "usd_per_eth must be > 0");
        if (!out.empty() && p.timestamp <= out.back().timestamp) {
            throw_at(row.line, 1, "price timestamps must be strictly ascending (",
                     out.back().timestamp, " then ", p.timestamp, ")");
        }
        out.push_back(std::move(p));
    }
    return out;
}

const Rational& resolve_price(std::int64_t timestamp, std::span<const PricePoint> series) {
    if (series.empty()) throw_validation("price series is empty");
    if (timestamp < series.front().timestamp) {
        throw_validation("timestamp ", timestamp, " precedes first price point at ",
                         series.front().timestamp);
    }
    auto it = std::upper_bound(series.begin(), series.end(), timestamp,
                               [](std::int64_t t, const PricePoint& p) { return t < p.timestamp; });
    return std::prev(it)->usd_per_eth;
}

void validate_coverage(std::span<const BlobSubmission> submissions, const BlockMap& blocks) {
    std::set<std::uint64_t> missing;
    for (const auto& s : submissions) {
        if (!blocks.contains(s.block_number)) missing.insert(s.block_number);
        if (missing.size() >= 16) break;
    }
    if (!missing.empty()) {
        std::ostringstream os;
        bool first = true;
        for (std::uint64_t h : missing) {
            if (!first) os << ", ";
            os << h;
            first = false;
        }
        throw_validation("blocks file does not cover submission heights: ", os.str());
    }
}

std::string serialize_submissions(std::span<const BlobSubmission> rows) {
    std::ostringstream os;
    os << "block_number,tx_index,blob_index,rollup_label,stripped_size\n";
    for (const auto& s : rows) {
        const std::string fields[] = {std::to_string(s.block_number), std::to_string(s.tx_index),
                                      std::to_string(s.blob_index), s.rollup_label,
                                      std::to_string(s.stripped_size)};
        csvio::write_row(os, fields);
    }
    return os.str();
}

std::string serialize_blocks(std::span<const BlockContext> rows) {
    std::ostringstream os;
    os << "block_number,timestamp,base_fee_per_gas,median_priority_fee\n";
    for (const auto& b : rows) {
        const std::string fields[] = {std::to_string(b.block_number), std::to_string(b.timestamp),
                                      b.base_fee_per_gas.str(), b.median_priority_fee.str()};
        csvio::write_row(os, fields);
    }
    return os.str();
}

std::string serialize_prices(std::span<const PricePoint> rows) {
    std::ostringstream os;
    os << "timestamp,usd_per_eth\n";
    for (const auto& p : rows) {
        const std::string fields[] = {std::to_string(p.timestamp),
                                      format_decimal_exact(p.usd_per_eth, std::max(2, p.decimals))};
        csvio::write_row(os, fields);
    }
    return os.str();
}

}  // namespace blobshare::ingest
