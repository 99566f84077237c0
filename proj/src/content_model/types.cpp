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

#include "heritage_forge/content_model/types.hpp"

#include <algorithm>
#include <array>
#include <utility>

namespace heritage::content {

namespace {

template <typename E, std::size_t N>
auto Lookup(std::array<std::pair<E, std::string_view>, N> const& table,
            E value) noexcept -> std::string_view {
    for (auto const& [e, name] : table) {
        if (e == value) {
            return name;
        }
    }
    return {};
}

template <typename E, std::size_t N>
auto Parse(std::array<std::pair<E, std::string_view>, N> const& table,
           std::string_view s) -> std::optional<E> {
    for (auto const& [e, name] : table) {
        if (name == s) {
            return e;
        }
    }
    return std::nullopt;
}

constexpr std::array kBaseStyles{
    std::pair{BaseStyle::kSatellite, std::string_view{"satellite"}},
    std::pair{BaseStyle::kPlain, std::string_view{"plain"}}};

constexpr std::array kMarkerKinds{
    std::pair{MarkerKind::kModel3d, std::string_view{"model3d"}},
    std::pair{MarkerKind::kPano360, std::string_view{"pano360"}},
    std::pair{MarkerKind::kInfo, std::string_view{"info"}},
    std::pair{MarkerKind::kVideo, std::string_view{"video"}}};

constexpr std::array kAssetKinds{
    std::pair{AssetKind::kGlb, std::string_view{"glb"}},
    std::pair{AssetKind::kImage, std::string_view{"image"}},
    std::pair{AssetKind::kVideo, std::string_view{"video"}}};

constexpr std::array kAssetRoles{
    std::pair{AssetRole::kOverlay, std::string_view{"overlay"}},
    std::pair{AssetRole::kPanorama, std::string_view{"panorama"}},
    std::pair{AssetRole::kPhoto, std::string_view{"photo"}},
    std::pair{AssetRole::kModel, std::string_view{"model"}},
    std::pair{AssetRole::kClip, std::string_view{"clip"}}};

constexpr std::array kTextureModes{
    std::pair{TextureMode::kPhotographic, std::string_view{"photographic"}},
    std::pair{TextureMode::kMonochrome, std::string_view{"monochrome"}}};

}  // namespace

auto ToString(BaseStyle v) noexcept -> std::string_view {
    return Lookup(kBaseStyles, v);
}
auto ToString(MarkerKind v) noexcept -> std::string_view {
    return Lookup(kMarkerKinds, v);
}
auto ToString(AssetKind v) noexcept -> std::string_view {
    return Lookup(kAssetKinds, v);
}
auto ToString(AssetRole v) noexcept -> std::string_view {
    return Lookup(kAssetRoles, v);
}
auto ToString(TextureMode v) noexcept -> std::string_view {
    return Lookup(kTextureModes, v);
}

auto ParseBaseStyle(std::string_view s) -> std::optional<BaseStyle> {
    return Parse(kBaseStyles, s);
}
auto ParseMarkerKind(std::string_view s) -> std::optional<MarkerKind> {
    return Parse(kMarkerKinds, s);
}
auto ParseAssetKind(std::string_view s) -> std::optional<AssetKind> {
    return Parse(kAssetKinds, s);
}
auto ParseAssetRole(std::string_view s) -> std::optional<AssetRole> {
    return Parse(kAssetRoles, s);
}
auto ParseTextureMode(std::string_view s) -> std::optional<TextureMode> {
    return Parse(kTextureModes, s);
}

auto IsSlug(std::string_view s) noexcept -> bool {
    if (s.empty() || s.size() > 64) {
        return false;
    }
    auto const lower_or_digit = [](char c) {
        return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9');
    };
    if (!lower_or_digit(s.front())) {
        return false;
    }
    return std::all_of(s.begin(), s.end(), [&](char c) {
        return lower_or_digit(c) || c == '-' || c == '_';
    });
}

auto SiteManifest::FindAsset(std::string_view id) const -> MediaAsset const* {
    auto it = std::find_if(assets.begin(), assets.end(),
                           [&](auto const& a) { return a.asset_id == id; });
    return it == assets.end() ? nullptr : &*it;
}

auto SiteManifest::FindLayer(std::string_view id) const
    -> TemporalLayer const* {
    auto it = std::find_if(layers.begin(), layers.end(),
                           [&](auto const& l) { return l.layer_id == id; });
    return it == layers.end() ? nullptr : &*it;
}

auto AllowedMediaKind(MarkerKind kind) noexcept -> AssetKind {
    switch (kind) {
        case MarkerKind::kModel3d:
            return AssetKind::kGlb;
        case MarkerKind::kVideo:
            return AssetKind::kVideo;
        case MarkerKind::kPano360:
        case MarkerKind::kInfo:
            return AssetKind::kImage;
    }
    return AssetKind::kImage;
}

}  // namespace heritage::content
