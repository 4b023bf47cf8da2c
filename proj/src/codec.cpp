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

#include "blobshare/codec.hpp"

#include "blobshare/error.hpp"

#include <openssl/evp.h>

#include <cstring>

namespace blobshare::codec {

Signature rollup_signature(std::string_view label) {
    if (label.empty()) throw_validation("rollup label must be non-empty");
    Signature out{};
    unsigned int len = 0;
    if (EVP_Digest(label.data(), label.size(), out.data(), &len, EVP_sha256(), nullptr) != 1 ||
        len != kSignatureBytes) {
        throw Error(ErrorKind::kValidation, "SHA-256 digest failed");
    }
    return out;
}

std::size_t wire_size(std::span<const ShareEntry> entries) noexcept {
    std::size_t total = 0;
    for (const auto& e : entries) total += e.wire_size();
    return total;
}

std::size_t capacity_remaining(std::size_t wire_bytes) noexcept {
    return wire_bytes >= kBlobBytes ? 0 : kBlobBytes - wire_bytes;
}

std::size_t capacity_remaining(std::span<const ShareEntry> entries) noexcept {
    return capacity_remaining(wire_size(entries));
}

std::size_t max_admissible_payload(std::size_t capacity) noexcept {
    if (capacity < kMinEntryWire) return 0;
    return std::min(kMaxEntryPayload, capacity - kEntryHeaderBytes);
}

std::vector<std::uint8_t> encode(std::span<const ShareEntry> entries) {
    std::size_t total = 0;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const std::size_t len = entries[i].payload.size();
        if (len == 0 || len > kMaxEntryPayload) {
            throw_validation("entry ", i, ": payload length ", len, " outside [1, ",
                             kMaxEntryPayload, "]");
        }
        total += entries[i].wire_size();
    }
    if (total > kBlobBytes) {
        throw_validation("entries overflow blob by ", total - kBlobBytes, " bytes (wire ", total,
                         " > ", kBlobBytes, ")");
    }

    std::vector<std::uint8_t> blob(kBlobBytes, 0);
    std::size_t off = 0;
    for (const auto& e : entries) {
        std::memcpy(blob.data() + off, e.signature.data(), kSignatureBytes);
        off += kSignatureBytes;
        const std::uint16_t len = static_cast<std::uint16_t>(e.payload.size());
        blob[off++] = static_cast<std::uint8_t>(len >> 8);
        blob[off++] = static_cast<std::uint8_t>(len & 0xff);
        std::memcpy(blob.data() + off, e.payload.data(), e.payload.size());
        off += e.payload.size();
    }
    return blob;
}

std::vector<ShareEntry> decode(std::span<const std::uint8_t> blob) {
    if (blob.size() != kBlobBytes) {
        throw_validation("blob must be exactly ", kBlobBytes, " bytes, got ", blob.size());
    }
    std::vector<ShareEntry> entries;
    std::size_t off = 0;
    while (kBlobBytes - off >= kMinEntryWire) {
        const std::size_t len = (static_cast<std::size_t>(blob[off + kSignatureBytes]) << 8) |
                                blob[off + kSignatureBytes + 1];
        if (len == 0) break;  // terminator / padding
        if (off + kEntryHeaderBytes + len > kBlobBytes) {
            throw_corrupt("entry at offset ", off, " declares length ", len,
                          " which overruns the blob end");
        }
        ShareEntry e;
        std::memcpy(e.signature.data(), blob.data() + off, kSignatureBytes);
        e.payload.assign(blob.begin() + static_cast<std::ptrdiff_t>(off + kEntryHeaderBytes),
                         blob.begin() + static_cast<std::ptrdiff_t>(off + kEntryHeaderBytes + len));
        entries.push_back(std::move(e));
        off += kEntryHeaderBytes + len;
    }
    return entries;
}

}  // namespace blobshare::codec
