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

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace blobshare::codec {

inline constexpr std::size_t kBlobBytes = 131072;
inline constexpr std::size_t kSignatureBytes = 32;
inline constexpr std::size_t kLengthBytes = 2;
inline constexpr std::size_t kEntryHeaderBytes = kSignatureBytes + kLengthBytes;  // 34
inline constexpr std::size_t kMaxEntryPayload = 65535;
//! Smallest wire footprint of an entry: header plus one payload byte.
inline constexpr std::size_t kMinEntryWire = kEntryHeaderBytes + 1;  // 35
//! Best-case payload a full blob can carry (two max-length entries).
inline constexpr std::size_t kMaxBlobPayload = kBlobBytes - 2 * kEntryHeaderBytes;  // 131004

using Signature = std::array<std::uint8_t, kSignatureBytes>;

//! One framed unit inside a shared blob: signature(32) || length(2, big
//! endian) || payload. Payload length 1..65535; zero length is reserved as
//! the padding terminator.
struct ShareEntry {
    Signature signature{};
    std::vector<std::uint8_t> payload;

    std::size_t wire_size() const noexcept { return kEntryHeaderBytes + payload.size(); }
    bool operator==(const ShareEntry&) const = default;
};

//! Deterministic 32-byte attribution id for a rollup label (SHA-256 of the
//! UTF-8 label). Not a verifiable signature; the field width cannot hold one.
Signature rollup_signature(std::string_view label);

//! Serialize entries in order and zero-pad to exactly 131072 bytes.
//! Errors: combined wire size over 131072, or an entry with payload length 0
//! or above 65535.
std::vector<std::uint8_t> encode(std::span<const ShareEntry> entries);

//! Parse entries sequentially; stops at a zero length field (terminator) or
//! when fewer than 35 bytes remain. A declared length running past the blob
//! end throws Error(kCorrupt) carrying the entry offset.
std::vector<ShareEntry> decode(std::span<const std::uint8_t> blob);

std::size_t wire_size(std::span<const ShareEntry> entries) noexcept;

//! Free bytes left in a blob that already carries `wire_bytes`.
std::size_t capacity_remaining(std::size_t wire_bytes) noexcept;
std::size_t capacity_remaining(std::span<const ShareEntry> entries) noexcept;

//! Largest payload a new entry could still carry, 0 if none fits.
std::size_t max_admissible_payload(std::size_t capacity) noexcept;

}  // namespace blobshare::codec
