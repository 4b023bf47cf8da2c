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
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

namespace blobshare {

//! Failure categories mapped to CLI exit codes (validation -> 1, io -> 2).
enum class ErrorKind {
    kValidation,
    kIo,
    kCorrupt,
};

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, std::string msg) : std::runtime_error(std::move(msg)), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

    //! 1-based source line for loader errors, when known.
    std::optional<std::size_t> line;
    //! 1-based column (field index) for loader errors, when known.
    std::optional<std::size_t> column;

  private:
    ErrorKind kind_;
};

namespace detail {
inline void cat_into(std::ostringstream&) {}
template <typename T, typename... Rest>
void cat_into(std::ostringstream& os, const T& v, const Rest&... rest) {
    os << v;
    cat_into(os, rest...);
}
}  // namespace detail

template <typename... Parts>
std::string cat(const Parts&... parts) {
    std::ostringstream os;
    detail::cat_into(os, parts...);
    return os.str();
}

template <typename... Parts>
[[noreturn]] void throw_validation(const Parts&... parts) {
    throw Error(ErrorKind::kValidation, cat(parts...));
}

template <typename... Parts>
[[noreturn]] void throw_io(const Parts&... parts) {
    throw Error(ErrorKind::kIo, cat(parts...));
}

template <typename... Parts>
[[noreturn]] void throw_corrupt(const Parts&... parts) {
    throw Error(ErrorKind::kCorrupt, cat(parts...));
}

//! Loader error carrying the offending row/field position.
template <typename... Parts>
[[noreturn]] void throw_at(std::size_t line, std::size_t column, const Parts&... parts) {
    Error e(ErrorKind::kValidation, cat("line ", line, ", column ", column, ": ", cat(parts...)));
    e.line = line;
    e.column = column;
    throw e;
}

}  // namespace blobshare
