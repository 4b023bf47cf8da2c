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

#include <cstddef>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace blobshare::csvio {

//! One parsed record. `line` is the 1-based line the record started on.
struct Row {
    std::vector<std::string> fields;
    std::size_t line = 0;
};

//! RFC-4180 parse of a whole document: quoted fields may contain commas,
//! doubled quotes and newlines; records end at LF or CRLF. Throws
//! Error(kValidation) with line/column on malformed quoting.
std::vector<Row> parse_text(std::string_view text);

//! Reads and parses a file; missing/unreadable file throws Error(kIo).
std::vector<Row> parse_file(const std::string& path);

//! Quote a field iff it contains a comma, quote or newline.
std::string escape_field(std::string_view field);

void write_row(std::ostream& os, std::span<const std::string> fields);

//! Reads a whole file into memory (binary). Throws Error(kIo).
std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace blobshare::csvio
