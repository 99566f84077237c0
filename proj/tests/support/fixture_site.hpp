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

#ifndef HERITAGE_FORGE_TESTS_SUPPORT_FIXTURE_SITE_HPP
#define HERITAGE_FORGE_TESTS_SUPPORT_FIXTURE_SITE_HPP

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "heritage_forge/asset_validate/asset_validate.hpp"
#include "heritage_forge/geo.hpp"
#include "json.hpp"

namespace heritage::testing {

namespace fs = std::filesystem;

// Panorama pose and a geo-targeted annotation used by the fixture. The
// expected direction is frozen in the pano tests.
inline constexpr GeoPoint kPanoPosition{-2.4712, 41.7698, 0.0};
inline constexpr double kPanoHeading = 30.0;
inline constexpr GeoPoint kBellTower{-2.4689, 41.7712, 12.0};

inline constexpr std::string_view kCampLayer = "camp-1936";
inline constexpr int kCampBuildings = 16;

/// Creates a unique directory under the system temp dir; removed on
/// destruction.
class TempDir {
  public:
    explicit TempDir(std::string_view tag = "hf");
    ~TempDir();
    TempDir(TempDir const&) = delete;
    auto operator=(TempDir const&) -> TempDir& = delete;

    [[nodiscard]] auto path() const -> fs::path const& { return path_; }

  private:
    fs::path path_;
};

void WriteBytes(fs::path const& path, std::span<std::uint8_t const> bytes);
void WriteText(fs::path const& path, std::string_view text);
void WriteJson(fs::path const& path, nlohmann::json const& doc);
[[nodiscard]] auto ReadText(fs::path const& path) -> std::string;

/// Binary glTF with a JSON chunk and, when `bin` is non-empty, a BIN chunk.
[[nodiscard]] auto MakeGlb(nlohmann::json const& doc,
                           std::span<std::uint8_t const> bin = {})
    -> assets::Bytes;

/// Deterministic smooth test pattern.
[[nodiscard]] auto PatternImage(std::uint32_t width, std::uint32_t height,
                                std::uint32_t channels, std::uint32_t seed)
    -> assets::DecodedImage;

[[nodiscard]] auto EncodeJpeg(assets::DecodedImage const& image,
                              int quality = 85) -> assets::Bytes;

/// Writes the three-layer demonstration site (1835 convent, 1936 camp,
/// present day) into `dir`, which must exist.
void WriteFixtureSite(fs::path const& dir);

/// Every "assets/..." or "layers/..." string in the bundle's index files,
/// plus every asset_map entry, that does not name an existing file.
[[nodiscard]] auto BundleClosureMisses(fs::path const& root)
    -> std::vector<std::string>;

/// Relative path -> bytes of every index file (site.json, layers/*.json).
[[nodiscard]] auto IndexFiles(fs::path const& root)
    -> std::map<std::string, std::string>;

}  // namespace heritage::testing

#endif  // HERITAGE_FORGE_TESTS_SUPPORT_FIXTURE_SITE_HPP
