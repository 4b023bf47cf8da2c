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

#include "blobshare/csv.hpp"

#include "blobshare/error.hpp"

#include <fstream>
#include <sstream>

namespace blobshare::csvio {

std::vector<Row> parse_text(std::string_view text) {
    std::vector<Row> rows;
    std::size_t line = 1;
    std::size_t i = 0;
    const std::size_t n = text.size();

    while (i < n) {
        Row row;
        row.line = line;
        bool record_done = false;
        while (!record_done) {
            std::string field;
            if (i < n && text[i] == '"') {
                const std::size_t open_line = line;
                ++i;
                bool closed = false;
                while (i < n) {
                    char c = text[i];
                    if (c == '"') {
                        if (i + 1 < n && text[i + 1] == '"') {
                            field.push_back('"');
                            i += 2;
                        } else {
                            ++i;
                            closed = true;
                            break;
                        }
                    } else {
                        if (c == '\n') ++line;
                        field.push_back(c);
                        ++i;
                    }
                }
                if (!closed) {
                    throw_at(open_line, row.fields.size() + 1, "unterminated quoted field");
                }
                if (i < n && text[i] != ',' && text[i] != '\n' && text[i] != '\r') {
                    throw_at(line, row.fields.size() + 1, "unexpected character after closing quote");
                }
            } else {
                while (i < n && text[i] != ',' && text[i] != '\n' && text[i] != '\r') {
                    if (text[i] == '"') {
                        throw_at(line, row.fields.size() + 1, "stray quote in unquoted field");
                    }
                    field.push_back(text[i]);
                    ++i;
                }
            }
            row.fields.push_back(std::move(field));

            if (i >= n) {
                record_done = true;
            } else if (text[i] == ',') {
                ++i;
            } else {
                if (text[i] == '\r') {
                    ++i;
                    if (i < n && text[i] == '\n') ++i;
                } else {  // '\n'
                    ++i;
                }
                ++line;
                record_done = true;
            }
        }
        // A lone trailing newline yields a phantom empty record; skip it.
        if (!(row.fields.size() == 1 && row.fields[0].empty())) {
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw_io("cannot open '", path, "' for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw_io("read failure on '", path, "'");
    return buf.str();
}

void write_file(const std::string& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw_io("cannot open '", path, "' for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw_io("write failure on '", path, "'");
}

std::vector<Row> parse_file(const std::string& path) {
    return parse_text(read_file(path));
}

std::string escape_field(std::string_view field) {
    const bool needs_quotes =
        field.find_first_of(",\"\r\n") != std::string_view::npos;
    if (!needs_quotes) return std::string(field);
    std::string out;
    out.reserve(field.size() + 2);
    out.push_back('"');
    for (char c : field) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

void write_row(std::ostream& os, std::span<const std::string> fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) os << ',';
        os << escape_field(fields[i]);
    }
    os << '\n';
}

}  // namespace blobshare::csvio
