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

#ifndef HERITAGE_FORGE_CONTENT_MODEL_TYPES_HPP
#define HERITAGE_FORGE_CONTENT_MODEL_TYPES_HPP

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "heritage_forge/geo.hpp"
#include "json.hpp"

namespace heritage::content {

inline constexpr int kSchemaVersion = 1;

/// Plain UTF-8 text with optional translations keyed by locale ("es", ...).
/// The viewer shows `text` unless it knows better.
struct LocalizedText {
    std::string text;
    std::map<std::string, std::string> translations;

    friend auto operator==(LocalizedText const&, LocalizedText const&)
        -> bool = default;
};

enum class BaseStyle { kSatellite, kPlain };
enum class MarkerKind { kModel3d, kPano360, kInfo, kVideo };
enum class AssetKind { kGlb, kImage, kVideo };
enum class AssetRole { kOverlay, kPanorama, kPhoto, kModel, kClip };
enum class TextureMode { kPhotographic, kMonochrome };

[[nodiscard]] auto ToString(BaseStyle v) noexcept -> std::string_view;
[[nodiscard]] auto ToString(MarkerKind v) noexcept -> std::string_view;
[[nodiscard]] auto ToString(AssetKind v) noexcept -> std::string_view;
[[nodiscard]] auto ToString(AssetRole v) noexcept -> std::string_view;
[[nodiscard]] auto ToString(TextureMode v) noexcept -> std::string_view;

[[nodiscard]] auto ParseBaseStyle(std::string_view s) -> std::optional<BaseStyle>;
[[nodiscard]] auto ParseMarkerKind(std::string_view s)
    -> std::optional<MarkerKind>;
[[nodiscard]] auto ParseAssetKind(std::string_view s) -> std::optional<AssetKind>;
[[nodiscard]] auto ParseAssetRole(std::string_view s) -> std::optional<AssetRole>;
[[nodiscard]] auto ParseTextureMode(std::string_view s)
    -> std::optional<TextureMode>;

inline constexpr MarkerKind kAllMarkerKinds[] = {
    MarkerKind::kModel3d, MarkerKind::kPano360, MarkerKind::kInfo,
    MarkerKind::kVideo};

/// Lowercase ASCII identifier: [a-z0-9] followed by [a-z0-9_-], at most 64
/// characters.
[[nodiscard]] auto IsSlug(std::string_view s) noexcept -> bool;

/// Overlay placed by its four geographic corners.
struct OverlayCorners {
    GeoPoint nw;
    GeoPoint ne;
    GeoPoint se;
    GeoPoint sw;

    friend auto operator==(OverlayCorners const&, OverlayCorners const&)
        -> bool = default;
};

using Georeference =
    std::variant<OverlayCorners, std::vector<GroundControlPoint>>;

struct OverlayRef {
    std::string asset_id;
    Georeference georeference;
    double opacity_default{1.0};

    friend auto operator==(OverlayRef const&, OverlayRef const&) -> bool =
        default;
};

struct RelatedLocation {
    LocalizedText label;
    GeoPoint position;

    friend auto operator==(RelatedLocation const&, RelatedLocation const&)
        -> bool = default;
};

struct Marker {
    std::string marker_id;
    std::string layer_id;
    MarkerKind kind{MarkerKind::kInfo};
    GeoPoint position;
    LocalizedText title;
    LocalizedText body;
    std::vector<std::string> media;
    std::vector<RelatedLocation> related_locations;
    std::optional<int> nav_order;
    // Unrecognized feature properties, kept verbatim.
    nlohmann::json extras = nlohmann::json::object();

    friend auto operator==(Marker const&, Marker const&) -> bool = default;
};

struct TemporalLayer {
    std::string layer_id;
    LocalizedText label;
    int period_start{};
    std::optional<int> period_end;
    BaseStyle base_style{BaseStyle::kSatellite};
    std::vector<OverlayRef> overlays;
    // As written in the manifest, relative to the site root.
    std::string markers_file;
    std::vector<Marker> markers;

    friend auto operator==(TemporalLayer const&, TemporalLayer const&)
        -> bool = default;
};

struct RenderHints {
    std::optional<TextureMode> texture_mode;
    std::optional<std::string> dollhouse_variant;
    std::optional<std::string> focus_target;

    friend auto operator==(RenderHints const&, RenderHints const&) -> bool =
        default;
};

struct MediaAsset {
    std::string asset_id;
    // Relative to the site root. Empty for externally hosted video.
    std::string path;
    // Externally hosted video; passed through to the viewer untouched.
    std::optional<std::string> url;
    AssetKind kind{AssetKind::kImage};
    AssetRole role{AssetRole::kPhoto};
    std::optional<LocalizedText> caption;
    RenderHints render_hints;
    std::optional<PanoPose> pano_pose;

    friend auto operator==(MediaAsset const&, MediaAsset const&) -> bool =
        default;
};

using AnnotationTarget = std::variant<Direction, GeoPoint>;

struct PanoAnnotation {
    std::string pano_asset_id;
    LocalizedText label;
    LocalizedText body;
    AnnotationTarget target;

    friend auto operator==(PanoAnnotation const&, PanoAnnotation const&)
        -> bool = default;
};

struct InitialView {
    GeoPoint center;
    double zoom{16.0};

    friend auto operator==(InitialView const&, InitialView const&) -> bool =
        default;
};

struct SiteManifest {
    int schema_version{kSchemaVersion};
    std::string site_id;
    LocalizedText title;
    LocalizedText description;
    InitialView initial_view;
    std::vector<TemporalLayer> layers;
    std::vector<MediaAsset> assets;
    std::vector<PanoAnnotation> annotations;
    // Directory the manifest was loaded from; relative paths resolve here.
    std::filesystem::path root;

    [[nodiscard]] auto FindAsset(std::string_view id) const
        -> MediaAsset const*;
    [[nodiscard]] auto FindLayer(std::string_view id) const
        -> TemporalLayer const*;

    friend auto operator==(SiteManifest const&, SiteManifest const&) -> bool =
        default;
};

/// Asset kinds a marker of the given kind may reference.
[[nodiscard]] auto AllowedMediaKind(MarkerKind kind) noexcept -> AssetKind;

}  // namespace heritage::content

#endif  // HERITAGE_FORGE_CONTENT_MODEL_TYPES_HPP
