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
#include <cmath>
#include <fstream>
#include <system_error>

#include <zlib.h>

#include "fmt/format.h"
#include "heritage_forge/asset_validate/asset_validate.hpp"
#include "heritage_forge/errors.hpp"

namespace heritage::assets {

namespace {

constexpr std::array<std::uint8_t, 8> kPngSignature{0x89, 'P',  'N',  'G',
                                                    0x0D, 0x0A, 0x1A, 0x0A};
// Largest dimension PNG permits (2^31 - 1).
constexpr std::uint32_t kMaxPngDimension = 0x7FFFFFFFU;

[[noreturn]] void Corrupt(std::string const& message) {
    throw ImageError{ImageErrorKind::kCorruptHeader, message};
}

auto ReadBe32(ByteView b, std::size_t at) noexcept -> std::uint32_t {
    return (static_cast<std::uint32_t>(b[at]) << 24U) |
           (static_cast<std::uint32_t>(b[at + 1]) << 16U) |
           (static_cast<std::uint32_t>(b[at + 2]) << 8U) |
           static_cast<std::uint32_t>(b[at + 3]);
}

auto ReadBe16(ByteView b, std::size_t at) noexcept -> std::uint32_t {
    return (static_cast<std::uint32_t>(b[at]) << 8U) |
           static_cast<std::uint32_t>(b[at + 1]);
}

auto ProbePng(ByteView b) -> ImageInfo {
    // signature(8) + length(4) + "IHDR"(4) + data(13) + crc(4)
    constexpr std::size_t kNeeded = 8 + 4 + 4 + 13 + 4;
    if (b.size() < kNeeded) {
        Corrupt("PNG ends before the IHDR chunk is complete");
    }
    if (ReadBe32(b, 8) != 13 || b[12] != 'I' || b[13] != 'H' || b[14] != 'D' ||
        b[15] != 'R') {
        Corrupt("PNG does not start with a 13-byte IHDR chunk");
    }
    auto const crc = static_cast<std::uint32_t>(
        crc32(0L, b.data() + 12, static_cast<uInt>(4 + 13)));
    if (crc != ReadBe32(b, 29)) {
        Corrupt("PNG IHDR checksum mismatch");
    }
    ImageInfo info{ImageFormat::kPng, ReadBe32(b, 16), ReadBe32(b, 20)};
    if (info.width == 0 || info.height == 0 || info.width > kMaxPngDimension ||
        info.height > kMaxPngDimension) {
        Corrupt(fmt::format("PNG dimensions {}x{} are invalid", info.width,
                            info.height));
    }
    return info;
}

auto IsSofWithDimensions(std::uint8_t marker) noexcept -> bool {
    // Baseline, extended sequential and progressive Huffman frames.
    return marker == 0xC0 || marker == 0xC1 || marker == 0xC2;
}

auto IsStandalone(std::uint8_t marker) noexcept -> bool {
    return marker == 0x01 || (marker >= 0xD0 && marker <= 0xD7);
}

auto ProbeJpeg(ByteView b) -> ImageInfo {
    std::size_t pos = 2;
    while (true) {
        if (pos >= b.size()) {
            Corrupt("JPEG ends before a frame header");
        }
        if (b[pos] != 0xFF) {
            Corrupt(fmt::format("expected a JPEG marker at offset {}", pos));
        }
        while (pos < b.size() && b[pos] == 0xFF) {
            ++pos;  // fill bytes
        }
        if (pos >= b.size()) {
            Corrupt("JPEG ends inside a marker");
        }
        std::uint8_t const marker = b[pos++];
        if (marker == 0x00) {
            Corrupt("stuffed byte outside entropy-coded data");
        }
        if (IsStandalone(marker)) {
            continue;
        }
        if (marker == 0xD8) {
            Corrupt("nested start-of-image marker");
        }
        if (marker == 0xD9 || marker == 0xDA) {
            Corrupt("JPEG has no SOF0/SOF1/SOF2 frame header before scan data");
        }
        if (b.size() - pos < 2) {
            Corrupt("JPEG segment length is cut off");
        }
        auto const length = ReadBe16(b, pos);
        if (length < 2) {
            Corrupt(fmt::format("JPEG segment length {} is invalid", length));
        }
        if (b.size() - pos < length) {
            Corrupt("JPEG segment runs past the end of file");
        }
        if (marker >= 0xC0 && marker <= 0xCF && marker != 0xC4 &&
            marker != 0xC8 && marker != 0xCC) {
            if (!IsSofWithDimensions(marker)) {
                Corrupt(fmt::format("unsupported JPEG frame type SOF{}",
                                    marker - 0xC0));
            }
            // length(2) precision(1) height(2) width(2) components(1)
            if (length < 8) {
                Corrupt("JPEG frame header too short");
            }
            ImageInfo info{ImageFormat::kJpeg, ReadBe16(b, pos + 5),
                           ReadBe16(b, pos + 3)};
            if (info.width == 0 || info.height == 0) {
                Corrupt(fmt::format("JPEG dimensions {}x{} are invalid",
                                    info.width, info.height));
            }
            return info;
        }
        pos += length;
    }
}

}  // namespace

auto ReadFileBytes(std::filesystem::path const& path) -> Bytes {
    std::ifstream in{path, std::ios::binary | std::ios::ate};
    if (!in) {
        throw std::system_error{std::make_error_code(std::errc::io_error),
                                "cannot open " + path.string()};
    }
    auto const size = static_cast<std::size_t>(in.tellg());
    Bytes bytes(size);
    in.seekg(0);
    if (size > 0 &&
        !in.read(reinterpret_cast<char*>(bytes.data()),
                 static_cast<std::streamsize>(size))) {
        throw std::system_error{std::make_error_code(std::errc::io_error),
                                "cannot read " + path.string()};
    }
    return bytes;
}

auto ToString(ImageFormat format) noexcept -> std::string_view {
    return format == ImageFormat::kPng ? "png" : "jpeg";
}

auto ToString(EquirectCheck check) noexcept -> std::string_view {
    switch (check) {
        case EquirectCheck::kPass:
            return "pass";
        case EquirectCheck::kWarn:
            return "warn";
        case EquirectCheck::kFail:
            return "fail";
    }
    return "fail";
}

auto ProbeImage(ByteView bytes) -> ImageInfo {
    if (bytes.size() >= kPngSignature.size() &&
        std::equal(kPngSignature.begin(), kPngSignature.end(), bytes.begin())) {
        return ProbePng(bytes);
    }
    if (bytes.size() >= 2 && bytes[0] == 0xFF && bytes[1] == 0xD8) {
        return ProbeJpeg(bytes);
    }
    throw ImageError{ImageErrorKind::kUnknownFormat,
                     "neither a PNG nor a JPEG signature"};
}

auto CheckEquirectangular(ImageInfo const& info) noexcept -> EquirectCheck {
    if (info.height == 0) {
        return EquirectCheck::kFail;
    }
    if (static_cast<std::uint64_t>(info.width) ==
        2ULL * static_cast<std::uint64_t>(info.height)) {
        return EquirectCheck::kPass;
    }
    double const ratio =
        static_cast<double>(info.width) / static_cast<double>(info.height);
    return std::abs(ratio - 2.0) <= 0.01 ? EquirectCheck::kWarn
                                         : EquirectCheck::kFail;
}

auto IsVideoExtension(std::string_view ext) noexcept -> bool {
    return ext == "mp4" || ext == "m4v" || ext == "webm" || ext == "ogv" ||
           ext == "mov";
}

}  // namespace heritage::assets
