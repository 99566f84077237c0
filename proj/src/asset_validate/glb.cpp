// Copyright 2026 The heritage-forge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <array>
#include <cstring>

#include "fmt/format.h"
#include "heritage_forge/asset_validate/asset_validate.hpp"
#include "heritage_forge/errors.hpp"
#include "json.hpp"

namespace heritage::assets {

namespace {

auto ReadU32(ByteView bytes, std::size_t offset) noexcept -> std::uint32_t {
    return static_cast<std::uint32_t>(bytes[offset]) |
           (static_cast<std::uint32_t>(bytes[offset + 1]) << 8U) |
           (static_cast<std::uint32_t>(bytes[offset + 2]) << 16U) |
           (static_cast<std::uint32_t>(bytes[offset + 3]) << 24U);
}

[[noreturn]] void Fail(GlbErrorKind kind, std::string const& message) {
    throw GlbError{kind, message};
}

auto ChunkName(std::uint32_t type) -> std::string {
    if (type == kGlbChunkJson) {
        return "JSON";
    }
    if (type == kGlbChunkBin) {
        return "BIN";
    }
    return fmt::format("0x{:08X}", type);
}

auto NodeNames(ByteView json_bytes) -> std::vector<std::string> {
    // Writers pad the JSON chunk with spaces; tolerate trailing NULs as well.
    auto end = json_bytes.size();
    while (end > 0 && (json_bytes[end - 1] == 0x20 || json_bytes[end - 1] == 0)) {
        --end;
    }
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_bytes.begin(),
                                    json_bytes.begin() +
                                        static_cast<std::ptrdiff_t>(end));
    } catch (nlohmann::json::exception const& e) {
        Fail(GlbErrorKind::kJsonChunkError,
             fmt::format("JSON chunk does not parse: {}", e.what()));
    }
    if (!doc.is_object()) {
        Fail(GlbErrorKind::kJsonChunkError, "JSON chunk is not an object");
    }
    std::vector<std::string> names;
    auto nodes = doc.find("nodes");
    if (nodes != doc.end() && nodes->is_array()) {
        for (auto const& node : *nodes) {
            if (!node.is_object()) {
                continue;
            }
            auto name = node.find("name");
            if (name != node.end() && name->is_string()) {
                names.push_back(name->get<std::string>());
            }
        }
    }
    return names;
}

}  // namespace

auto ValidateGlb(ByteView bytes) -> GlbInfo {
    static constexpr std::array<std::uint8_t, 4> kMagicBytes{'g', 'l', 'T',
                                                             'F'};
    auto const magic_prefix = std::min(bytes.size(), kMagicBytes.size());
    if (!std::equal(bytes.begin(),
                    bytes.begin() + static_cast<std::ptrdiff_t>(magic_prefix),
                    kMagicBytes.begin())) {
        Fail(GlbErrorKind::kBadMagic, "missing glTF magic");
    }
    if (bytes.size() < kGlbHeaderSize) {
        Fail(GlbErrorKind::kTruncatedFile,
             fmt::format("{} bytes is shorter than the 12-byte header",
                         bytes.size()));
    }

    GlbInfo info;
    info.version = ReadU32(bytes, 4);
    info.total_length = ReadU32(bytes, 8);
    if (info.version != 2) {
        Fail(GlbErrorKind::kUnsupportedVersion,
             fmt::format("container version {} (expected 2)", info.version));
    }
    if (info.total_length != bytes.size()) {
        Fail(GlbErrorKind::kTruncatedFile,
             fmt::format("header declares {} bytes, file has {}",
                         info.total_length, bytes.size()));
    }

    std::size_t offset = kGlbHeaderSize;
    ByteView json_chunk;
    bool seen_bin = false;
    while (offset < bytes.size()) {
        if (bytes.size() - offset < kGlbChunkHeaderSize) {
            Fail(GlbErrorKind::kTruncatedFile,
                 fmt::format("chunk header at offset {} is cut off", offset));
        }
        GlbChunk chunk{ReadU32(bytes, offset + 4), ReadU32(bytes, offset)};
        auto const index = info.chunks.size();
        if (chunk.length % 4 != 0) {
            Fail(GlbErrorKind::kAlignmentError,
                 fmt::format("chunk {} length {} is not 4-byte aligned", index,
                             chunk.length));
        }
        auto const body = offset + kGlbChunkHeaderSize;
        if (chunk.length > bytes.size() - body) {
            Fail(GlbErrorKind::kTruncatedFile,
                 fmt::format("chunk {} ({} bytes) runs past the end of file",
                             index, chunk.length));
        }
        if (index == 0 && chunk.type != kGlbChunkJson) {
            Fail(GlbErrorKind::kChunkOrderError,
                 fmt::format("first chunk is {}, expected JSON",
                             ChunkName(chunk.type)));
        }
        if (index > 0 && chunk.type == kGlbChunkJson) {
            Fail(GlbErrorKind::kChunkOrderError,
                 fmt::format("second JSON chunk at index {}", index));
        }
        if (chunk.type == kGlbChunkBin) {
            if (index != 1 || seen_bin) {
                Fail(GlbErrorKind::kChunkOrderError,
                     fmt::format("BIN chunk at index {}, only allowed "
                                 "directly after JSON",
                                 index));
            }
            seen_bin = true;
        }
        if (index == 0) {
            json_chunk = bytes.subspan(body, chunk.length);
        }
        info.chunks.push_back(chunk);
        offset = body + chunk.length;
    }
    if (info.chunks.empty()) {
        Fail(GlbErrorKind::kChunkOrderError, "no JSON chunk");
    }
    info.node_names = NodeNames(json_chunk);
    return info;
}

}  // namespace heritage::assets
