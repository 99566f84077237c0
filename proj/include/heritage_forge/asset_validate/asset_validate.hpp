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

#ifndef HERITAGE_FORGE_ASSET_VALIDATE_ASSET_VALIDATE_HPP
#define HERITAGE_FORGE_ASSET_VALIDATE_ASSET_VALIDATE_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace heritage::assets {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<std::uint8_t const>;

/// Reads a whole file. Throws std::system_error on failure.
[[nodiscard]] auto ReadFileBytes(std::filesystem::path const& path) -> Bytes;

[[nodiscard]] inline auto AsBytes(std::string_view s) noexcept -> ByteView {
    return {reinterpret_cast<std::uint8_t const*>(s.data()), s.size()};
}

// --- GLB -------------------------------------------------------------------

inline constexpr std::uint32_t kGlbMagic = 0x46546C67;      // "glTF"
inline constexpr std::uint32_t kGlbChunkJson = 0x4E4F534A;  // "JSON"
inline constexpr std::uint32_t kGlbChunkBin = 0x004E4942;   // "BIN\0"
inline constexpr std::size_t kGlbHeaderSize = 12;
inline constexpr std::size_t kGlbChunkHeaderSize = 8;

struct GlbChunk {
    std::uint32_t type{};
    std::uint32_t length{};

    friend auto operator==(GlbChunk const&, GlbChunk const&) -> bool = default;
};

struct GlbInfo {
    std::uint32_t version{};
    std::uint32_t total_length{};
    std::vector<GlbChunk> chunks;
    // Names of entries in the JSON "nodes" array that carry one.
    std::vector<std::string> node_names;
};

/// Structural check of a binary glTF container: header, chunk framing and
/// that the JSON chunk holds a JSON object. Never reads past the buffer and
/// reports every defect as a GlbError.
[[nodiscard]] auto ValidateGlb(ByteView bytes) -> GlbInfo;

// --- Images ----------------------------------------------------------------

enum class ImageFormat { kPng, kJpeg };

[[nodiscard]] auto ToString(ImageFormat format) noexcept -> std::string_view;

struct ImageInfo {
    ImageFormat format{ImageFormat::kPng};
    std::uint32_t width{};
    std::uint32_t height{};

    friend auto operator==(ImageInfo const&, ImageInfo const&) -> bool =
        default;
};

/// Reads dimensions from the PNG IHDR (CRC-checked) or from the first JPEG
/// SOF0/SOF1/SOF2 segment. No pixel data is decoded. Throws ImageError.
[[nodiscard]] auto ProbeImage(ByteView bytes) -> ImageInfo;

enum class EquirectCheck { kPass, kWarn, kFail };

[[nodiscard]] auto ToString(EquirectCheck check) noexcept -> std::string_view;

/// Pass for exact 2:1, warn when the ratio is within 0.01 of 2, else fail.
[[nodiscard]] auto CheckEquirectangular(ImageInfo const& info) noexcept
    -> EquirectCheck;

// --- Pixels ----------------------------------------------------------------

/// 8-bit interleaved pixels; channels is 1 (gray), 2 (gray+alpha), 3 (RGB)
/// or 4 (RGBA).
struct DecodedImage {
    std::uint32_t width{};
    std::uint32_t height{};
    std::uint32_t channels{};
    Bytes pixels;
};

/// Full decode of a PNG or JPEG. Throws DecodeError.
[[nodiscard]] auto DecodeImage(ByteView bytes) -> DecodedImage;

/// Deterministic PNG encoding (fixed compression, no timestamps).
[[nodiscard]] auto EncodePng(DecodedImage const& image) -> Bytes;

struct Extent {
    std::uint32_t width{};
    std::uint32_t height{};

    friend auto operator==(Extent const&, Extent const&) -> bool = default;
};

/// Size of a preview: longest side becomes `max_dim`, the other side is
/// scaled and rounded half-up (at least 1). Unchanged when already small.
[[nodiscard]] auto PreviewExtent(Extent source, std::uint32_t max_dim) noexcept
    -> Extent;

/// Exact area-average (box) resampling to `target`, which must not exceed
/// the source size.
[[nodiscard]] auto BoxDownsample(DecodedImage const& source, Extent target)
    -> DecodedImage;

inline constexpr std::uint32_t kDefaultPreviewMaxDim = 1024;

/// PNG preview whose longest side is at most `max_dim`. Input already
/// within bounds is returned byte-for-byte. Throws DecodeError.
[[nodiscard]] auto DerivePreview(ByteView bytes,
                                 std::uint32_t max_dim = kDefaultPreviewMaxDim)
    -> Bytes;

// --- Video -----------------------------------------------------------------

/// Lowercase extensions accepted for video assets.
[[nodiscard]] auto IsVideoExtension(std::string_view ext) noexcept -> bool;

}  // namespace heritage::assets

#endif  // HERITAGE_FORGE_ASSET_VALIDATE_ASSET_VALIDATE_HPP
