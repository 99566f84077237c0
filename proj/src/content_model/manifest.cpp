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

#include "heritage_forge/content_model/manifest.hpp"

#include <algorithm>
#include <exception>
#include <fstream>
#include <iterator>
#include <set>
#include <sstream>

#include "fmt/format.h"
#include "heritage_forge/content_model/geojson.hpp"
#include "heritage_forge/content_model/markers.hpp"
#include "heritage_forge/errors.hpp"
#include "heritage_forge/georeference/georeference.hpp"
#include "json_fields.hpp"

namespace heritage::content {

namespace fs = std::filesystem;

namespace {

using detail::FieldReader;
using detail::IndexPath;

auto ReadTextFile(fs::path const& path) -> std::optional<std::string> {
    std::ifstream in{path, std::ios::binary};
    if (!in) {
        return std::nullopt;
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return std::move(buffer).str();
}

/// A relative path that stays inside the site directory.
auto IsContainedRelativePath(std::string const& p) -> bool {
    fs::path const path{p};
    if (p.empty() || path.is_absolute() || path.has_root_name()) {
        return false;
    }
    return std::none_of(path.begin(), path.end(),
                        [](fs::path const& part) { return part == ".."; });
}

auto ParseCorners(FieldReader const& corners) -> OverlayCorners {
    OverlayCorners c{corners.Point("nw"), corners.Point("ne"),
                     corners.Point("se"), corners.Point("sw")};
    std::array<georef::PlanePoint, 4> const quad{
        georef::LonLatToWebMercator(c.nw), georef::LonLatToWebMercator(c.ne),
        georef::LonLatToWebMercator(c.se), georef::LonLatToWebMercator(c.sw)};
    if (std::abs(georef::SignedArea(quad)) <= 1e-6) {
        throw SchemaError{corners.path(),
                          "corner quadrilateral is degenerate (zero area)"};
    }
    return c;
}

auto ParseGcps(nlohmann::json const& list, std::string const& path)
    -> std::vector<GroundControlPoint> {
    if (!list.is_array()) {
        throw SchemaError{path, "expected an array"};
    }
    if (list.size() < 3) {
        throw SchemaError{path, fmt::format("at least 3 ground control "
                                            "points required, got {}",
                                            list.size())};
    }
    std::vector<GroundControlPoint> gcps;
    for (std::size_t i = 0; i < list.size(); ++i) {
        FieldReader gcp{list[i], IndexPath(path, i)};
        auto const& pixel = gcp.At("pixel");
        if (!pixel.is_array() || pixel.size() != 2 || !pixel[0].is_number() ||
            !pixel[1].is_number()) {
            throw SchemaError{gcp.PathOf("pixel"), "expected [x, y]"};
        }
        gcps.push_back(GroundControlPoint{
            PixelPoint{pixel[0].get<double>(), pixel[1].get<double>()},
            gcp.Point("geo")});
    }
    return gcps;
}

auto ParseOverlay(FieldReader const& o) -> OverlayRef {
    OverlayRef overlay;
    overlay.asset_id = o.Slug("asset_id");
    bool const has_corners = o.Has("corners");
    bool const has_gcps = o.Has("gcps");
    if (has_corners == has_gcps) {
        throw SchemaError{o.path(),
                          "exactly one of \"corners\" or \"gcps\" required"};
    }
    if (has_corners) {
        overlay.georeference = ParseCorners(o.Object("corners"));
    }
    else {
        overlay.georeference = ParseGcps(o.At("gcps"), o.PathOf("gcps"));
    }
    overlay.opacity_default = o.OptionalNumber("opacity_default").value_or(1.0);
    if (!(overlay.opacity_default >= 0.0 && overlay.opacity_default <= 1.0)) {
        throw SchemaError{o.PathOf("opacity_default"), "must be within [0, 1]"};
    }
    return overlay;
}

auto ParsePose(FieldReader const& p) -> PanoPose {
    PanoPose pose;
    pose.position = p.Point("position");
    pose.camera_height =
        p.OptionalNumber("camera_height").value_or(kDefaultCameraHeight);
    pose.heading = p.Number("heading");
    if (!(pose.heading >= 0.0 && pose.heading < 360.0)) {
        throw SchemaError{p.PathOf("heading"), "must be within [0, 360)"};
    }
    return pose;
}

auto RoleFitsKind(AssetRole role, AssetKind kind) -> bool {
    switch (role) {
        case AssetRole::kOverlay:
        case AssetRole::kPanorama:
        case AssetRole::kPhoto:
            return kind == AssetKind::kImage;
        case AssetRole::kModel:
            return kind == AssetKind::kGlb;
        case AssetRole::kClip:
            return kind == AssetKind::kVideo;
    }
    return false;
}

auto ParseAsset(FieldReader const& a) -> MediaAsset {
    MediaAsset asset;
    asset.asset_id = a.Slug("asset_id");

    auto const kind_name = a.String("kind");
    auto kind = ParseAssetKind(kind_name);
    if (!kind) {
        throw SchemaError{a.PathOf("kind"),
                          fmt::format("unknown asset kind \"{}\"", kind_name)};
    }
    asset.kind = *kind;

    auto const role_name = a.String("role");
    auto role = ParseAssetRole(role_name);
    if (!role) {
        throw SchemaError{a.PathOf("role"),
                          fmt::format("unknown asset role \"{}\"", role_name)};
    }
    asset.role = *role;
    if (!RoleFitsKind(asset.role, asset.kind)) {
        throw SchemaError{a.PathOf("role"),
                          fmt::format("role {} does not fit kind {}",
                                      role_name, kind_name)};
    }

    auto path = a.OptionalString("path");
    asset.url = a.OptionalString("url");
    if (path.has_value() == asset.url.has_value()) {
        throw SchemaError{a.path(), "exactly one of \"path\" or \"url\" "
                                    "required"};
    }
    if (asset.url && asset.kind != AssetKind::kVideo) {
        throw SchemaError{a.PathOf("url"),
                          "only video assets may be hosted externally"};
    }
    if (path) {
        if (!IsContainedRelativePath(*path)) {
            throw SchemaError{a.PathOf("path"),
                              "must be a relative path inside the site"};
        }
        asset.path = *path;
    }

    asset.caption = a.OptionalText("caption");

    if (a.Has("render_hints")) {
        auto const hints = a.Object("render_hints");
        if (auto mode = hints.OptionalString("texture_mode")) {
            auto parsed = ParseTextureMode(*mode);
            if (!parsed) {
                throw SchemaError{hints.PathOf("texture_mode"),
                                  fmt::format("unknown texture mode \"{}\"",
                                              *mode)};
            }
            if (*parsed == TextureMode::kMonochrome &&
                asset.role != AssetRole::kModel) {
                throw SchemaError{hints.PathOf("texture_mode"),
                                  "monochrome texture mode is only allowed "
                                  "for model assets"};
            }
            asset.render_hints.texture_mode = parsed;
        }
        if (hints.Has("dollhouse_variant")) {
            asset.render_hints.dollhouse_variant =
                hints.Slug("dollhouse_variant");
        }
        asset.render_hints.focus_target = hints.OptionalString("focus_target");
    }

    if (a.Has("pano_pose")) {
        if (asset.role != AssetRole::kPanorama) {
            throw SchemaError{a.PathOf("pano_pose"),
                              "only panorama assets carry a pose"};
        }
        asset.pano_pose = ParsePose(a.Object("pano_pose"));
    }
    return asset;
}

auto ParseAnnotation(FieldReader const& a) -> PanoAnnotation {
    PanoAnnotation ann;
    ann.pano_asset_id = a.Slug("pano_asset_id");
    ann.label = a.Text("label");
    if (auto body = a.OptionalText("body")) {
        ann.body = std::move(*body);
    }
    bool const has_direction = a.Has("direction");
    bool const has_target = a.Has("target");
    if (has_direction == has_target) {
        throw SchemaError{a.path(),
                          "exactly one of \"direction\" or \"target\" required"};
    }
    if (has_direction) {
        auto const dir = a.Object("direction");
        Direction d{dir.Number("yaw"), dir.Number("pitch")};
        if (!IsValidDirection(d)) {
            throw SchemaError{dir.path(),
                              "yaw must be in (-180, 180] and pitch in "
                              "[-90, 90]"};
        }
        ann.target = d;
    }
    else {
        ann.target = a.Point("target");
    }
    return ann;
}

auto IssueCode(Error const& e) -> std::string_view {
    if (dynamic_cast<SyntaxError const*>(&e) != nullptr) {
        return codes::kManifestSyntax;
    }
    if (dynamic_cast<DuplicateIdError const*>(&e) != nullptr) {
        return codes::kDuplicateId;
    }
    if (dynamic_cast<ReferenceError const*>(&e) != nullptr) {
        return codes::kDanglingReference;
    }
    if (dynamic_cast<GeoJsonError const*>(&e) != nullptr) {
        return codes::kGeoJson;
    }
    return codes::kSchema;
}

class Loader {
  public:
    explicit Loader(fs::path manifest_path)
        : manifest_path_{std::move(manifest_path)} {}

    auto Run() -> ManifestLoad;

    // First error of each kind, so LoadManifest can rethrow typed errors.
    std::exception_ptr first_error;
    std::vector<std::string> dangling;

  private:
    template <typename Fn>
    auto Guard(std::string const& path, Fn&& fn) -> bool {
        try {
            fn();
            return true;
        } catch (Error const& e) {
            Record(e, path, std::string{IssueCode(e)});
            if (auto const* ref = dynamic_cast<ReferenceError const*>(&e)) {
                dangling.insert(dangling.end(), ref->missing().begin(),
                                ref->missing().end());
            }
            else if (!first_error) {
                first_error = std::current_exception();
            }
            return false;
        }
    }

    void Record(Error const& e, std::string const& path, std::string code) {
        issues_.push_back(detail::IssueFromError(e, path, code));
    }

    void Dangling(std::string const& path, std::string const& what,
                  std::string_view code = codes::kDanglingReference) {
        issues_.push_back(Issue{Severity::kError, std::string{code}, path,
                                fmt::format("undeclared reference: {}", what)});
        dangling.push_back(what);
    }

    void LoadAssets(FieldReader const& root);
    void LoadLayers(FieldReader const& root);
    void LoadMarkers(TemporalLayer& layer, std::string const& path);
    void LoadAnnotations(FieldReader const& root);
    void CheckReferences();

    fs::path manifest_path_;
    SiteManifest site_;
    std::vector<Issue> issues_;
    // Every asset id that was declared, including ones that failed to parse,
    // so that a broken declaration does not also produce dangling errors.
    std::set<std::string> declared_assets_;
};

auto Loader::Run() -> ManifestLoad {
    ManifestLoad result;
    auto text = ReadTextFile(manifest_path_);
    if (!text) {
        issues_.push_back(Issue{Severity::kError,
                                std::string{codes::kSiteNotFound},
                                manifest_path_.filename().string(),
                                fmt::format("{} not found", kManifestFileName)});
        first_error = std::make_exception_ptr(
            Error{"IoError",
                  fmt::format("cannot read {}", manifest_path_.string())});
        result.issues = std::move(issues_);
        return result;
    }

    nlohmann::json doc;
    if (!Guard("", [&] { doc = ParseJsonText(*text); })) {
        result.issues = std::move(issues_);
        return result;
    }
    if (!Guard("", [&] { FieldReader{doc, ""}; })) {
        result.issues = std::move(issues_);
        return result;
    }
    FieldReader const root{doc, ""};
    site_.root = manifest_path_.parent_path();

    Guard("schema_version", [&] {
        site_.schema_version = root.Int("schema_version");
        if (site_.schema_version != kSchemaVersion) {
            throw SchemaError{"schema_version",
                              fmt::format("unsupported version {} (expected "
                                          "{})",
                                          site_.schema_version,
                                          kSchemaVersion)};
        }
    });
    Guard("site_id", [&] { site_.site_id = root.Slug("site_id"); });
    Guard("title", [&] { site_.title = root.Text("title"); });
    Guard("description", [&] {
        if (auto d = root.OptionalText("description")) {
            site_.description = std::move(*d);
        }
    });
    Guard("initial_view", [&] {
        auto const view = root.Object("initial_view");
        site_.initial_view.center = view.Point("center");
        site_.initial_view.zoom = view.Number("zoom");
        if (!(site_.initial_view.zoom >= 0.0 &&
              site_.initial_view.zoom <= 22.0)) {
            throw SchemaError{view.PathOf("zoom"), "must be within [0, 22]"};
        }
    });

    LoadAssets(root);
    LoadLayers(root);
    LoadAnnotations(root);
    CheckReferences();

    result.manifest = std::move(site_);
    result.issues = std::move(issues_);
    return result;
}

void Loader::LoadAssets(FieldReader const& root) {
    nlohmann::json const* list = nullptr;
    if (!Guard("assets", [&] { list = &root.OptionalArray("assets"); })) {
        return;
    }
    std::set<std::string> ids;
    for (std::size_t i = 0; i < list->size(); ++i) {
        auto const path = IndexPath("assets", i);
        auto const& entry = (*list)[i];
        if (entry.is_object()) {
            auto id = entry.find("asset_id");
            if (id != entry.end() && id->is_string()) {
                declared_assets_.insert(id->get<std::string>());
            }
        }
        Guard(path, [&] {
            auto asset = ParseAsset(FieldReader{entry, path});
            if (!ids.insert(asset.asset_id).second) {
                throw DuplicateIdError{asset.asset_id};
            }
            if (!asset.path.empty()) {
                auto const full = site_.root / asset.path;
                std::error_code ec;
                if (!fs::is_regular_file(full, ec)) {
                    Dangling(detail::JoinPath(path, "path"), asset.path,
                             codes::kMissingFile);
                    return;
                }
            }
            site_.assets.push_back(std::move(asset));
        });
    }
}

void Loader::LoadLayers(FieldReader const& root) {
    nlohmann::json const* list = nullptr;
    if (!Guard("layers", [&] { list = &root.Array("layers"); })) {
        return;
    }
    if (list->empty()) {
        Guard("layers",
              [] { throw SchemaError{"layers", "at least 1 required"}; });
        return;
    }
    std::set<std::string> ids;
    for (std::size_t i = 0; i < list->size(); ++i) {
        auto const path = IndexPath("layers", i);
        Guard(path, [&] {
            FieldReader const l{(*list)[i], path};
            TemporalLayer layer;
            layer.layer_id = l.Slug("layer_id");
            if (!ids.insert(layer.layer_id).second) {
                throw DuplicateIdError{layer.layer_id};
            }
            layer.label = l.Text("label");
            layer.period_start = l.Int("period_start");
            layer.period_end = l.OptionalInt("period_end");
            if (layer.period_end && *layer.period_end < layer.period_start) {
                throw SchemaError{l.PathOf("period_end"),
                                  "must not precede period_start"};
            }
            auto const style = l.String("base_style");
            auto parsed = ParseBaseStyle(style);
            if (!parsed) {
                throw SchemaError{l.PathOf("base_style"),
                                  fmt::format("unknown base style \"{}\" "
                                              "(expected satellite or plain)",
                                              style)};
            }
            layer.base_style = *parsed;
            auto const& overlays = l.OptionalArray("overlays");
            for (std::size_t k = 0; k < overlays.size(); ++k) {
                auto const opath = IndexPath(l.PathOf("overlays"), k);
                Guard(opath, [&] {
                    layer.overlays.push_back(
                        ParseOverlay(FieldReader{overlays[k], opath}));
                });
            }
            layer.markers_file = l.String("markers_file");
            if (!IsContainedRelativePath(layer.markers_file)) {
                throw SchemaError{l.PathOf("markers_file"),
                                  "must be a relative path inside the site"};
            }
            LoadMarkers(layer, l.PathOf("markers_file"));
            site_.layers.push_back(std::move(layer));
        });
    }
    for (std::size_t i = 1; i < site_.layers.size(); ++i) {
        if (site_.layers[i].period_start < site_.layers[i - 1].period_start) {
            Guard("layers", [&] {
                throw SchemaError{"layers", fmt::format(
                                                "must be ordered by "
                                                "period_start ascending ({} "
                                                "before {})",
                                                site_.layers[i - 1].layer_id,
                                                site_.layers[i].layer_id)};
            });
            break;
        }
    }
}

void Loader::LoadMarkers(TemporalLayer& layer, std::string const& path) {
    auto const file = site_.root / layer.markers_file;
    auto text = ReadTextFile(file);
    std::error_code ec;
    if (!text || !fs::is_regular_file(file, ec)) {
        Dangling(path, layer.markers_file, codes::kMissingFile);
        return;
    }
    std::vector<RawFeature> features;
    try {
        features = ParseFeatureCollection(*text);
    } catch (Error const& e) {
        // Marker file syntax problems are GeoJSON problems to the author.
        issues_.push_back(Issue{Severity::kError, std::string{codes::kGeoJson},
                                layer.markers_file, e.what()});
        if (!first_error) {
            first_error = std::current_exception();
        }
        return;
    }
    std::vector<Issue> marker_issues;
    layer.markers =
        MarkersFromFeatures(features, layer.layer_id, layer.markers_file,
                            marker_issues);
    if (!marker_issues.empty() && !first_error) {
        // Reproduce the typed error for LoadManifest callers.
        try {
            (void)MarkersFromFeatures(features, layer.layer_id);
        } catch (Error const&) {
            first_error = std::current_exception();
        }
    }
    issues_.insert(issues_.end(), marker_issues.begin(), marker_issues.end());
}

void Loader::LoadAnnotations(FieldReader const& root) {
    nlohmann::json const* list = nullptr;
    if (!Guard("annotations",
               [&] { list = &root.OptionalArray("annotations"); })) {
        return;
    }
    for (std::size_t i = 0; i < list->size(); ++i) {
        auto const path = IndexPath("annotations", i);
        Guard(path, [&] {
            site_.annotations.push_back(
                ParseAnnotation(FieldReader{(*list)[i], path}));
        });
    }
}

void Loader::CheckReferences() {
    auto const known = [&](std::string const& id) {
        return declared_assets_.contains(id);
    };

    for (auto& asset : site_.assets) {
        auto const& variant = asset.render_hints.dollhouse_variant;
        if (!variant) {
            continue;
        }
        auto const path = fmt::format("assets[{}].render_hints.dollhouse_variant",
                                      asset.asset_id);
        if (!known(*variant)) {
            Dangling(path, *variant);
            continue;
        }
        auto const* target = site_.FindAsset(*variant);
        if (target != nullptr && target->kind != AssetKind::kGlb) {
            issues_.push_back(Issue{Severity::kError,
                                    std::string{codes::kFormatMismatch}, path,
                                    fmt::format("dollhouse variant \"{}\" is "
                                                "not a glb asset",
                                                *variant)});
            if (!first_error) {
                first_error = std::make_exception_ptr(
                    SchemaError{path, "dollhouse variant must be a glb asset"});
            }
        }
    }

    auto const mismatch = [&](std::string const& path,
                              std::string const& message) {
        issues_.push_back(Issue{Severity::kError,
                                std::string{codes::kFormatMismatch}, path,
                                message});
        if (!first_error) {
            first_error = std::make_exception_ptr(SchemaError{path, message});
        }
    };

    for (auto& layer : site_.layers) {
        for (std::size_t k = 0; k < layer.overlays.size(); ++k) {
            auto const& overlay = layer.overlays[k];
            auto const path = fmt::format("layers[{}].overlays[{}].asset_id",
                                          layer.layer_id, k);
            if (!known(overlay.asset_id)) {
                Dangling(path, overlay.asset_id);
                continue;
            }
            auto const* asset = site_.FindAsset(overlay.asset_id);
            if (asset != nullptr && asset->role != AssetRole::kOverlay) {
                mismatch(path, fmt::format("overlay asset \"{}\" must have "
                                           "role overlay",
                                           overlay.asset_id));
            }
        }
        for (auto const& marker : layer.markers) {
            for (auto const& media : marker.media) {
                auto const path = fmt::format("{}#{}.media", layer.markers_file,
                                              marker.marker_id);
                if (!known(media)) {
                    Dangling(path, media);
                    continue;
                }
                auto const* asset = site_.FindAsset(media);
                if (asset == nullptr) {
                    continue;
                }
                auto const wanted = AllowedMediaKind(marker.kind);
                if (asset->kind != wanted) {
                    mismatch(path,
                             fmt::format("{} marker \"{}\" cannot show {} "
                                         "asset \"{}\" (needs {})",
                                         ToString(marker.kind),
                                         marker.marker_id,
                                         ToString(asset->kind), media,
                                         ToString(wanted)));
                }
                else if (marker.kind == MarkerKind::kPano360 &&
                         asset->role != AssetRole::kPanorama) {
                    mismatch(path, fmt::format("pano360 marker \"{}\" needs a "
                                               "panorama asset, \"{}\" is {}",
                                               marker.marker_id, media,
                                               ToString(asset->role)));
                }
            }
        }
    }

    for (std::size_t i = 0; i < site_.annotations.size(); ++i) {
        auto const& ann = site_.annotations[i];
        auto const path = IndexPath("annotations", i) + ".pano_asset_id";
        if (!known(ann.pano_asset_id)) {
            Dangling(path, ann.pano_asset_id);
            continue;
        }
        auto const* asset = site_.FindAsset(ann.pano_asset_id);
        if (asset == nullptr) {
            continue;
        }
        if (asset->role != AssetRole::kPanorama) {
            mismatch(path, fmt::format("annotated asset \"{}\" is not a "
                                       "panorama",
                                       ann.pano_asset_id));
        }
        else if (std::holds_alternative<GeoPoint>(ann.target) &&
                 !asset->pano_pose) {
            issues_.push_back(Issue{Severity::kError,
                                    std::string{codes::kSchema}, path,
                                    fmt::format("geo-targeted annotation needs "
                                                "a pano_pose on \"{}\"",
                                                ann.pano_asset_id)});
            if (!first_error) {
                first_error = std::make_exception_ptr(SchemaError{
                    path, "geo-targeted annotation needs a pano_pose"});
            }
        }
    }
}

}  // namespace

auto ManifestLoad::HasErrors() const noexcept -> bool {
    return std::any_of(issues.begin(), issues.end(), [](Issue const& i) {
        return i.severity == Severity::kError;
    });
}

auto LoadManifestCollect(fs::path const& path) -> ManifestLoad {
    Loader loader{path};
    return loader.Run();
}

auto LoadManifest(fs::path const& path) -> SiteManifest {
    Loader loader{path};
    auto result = loader.Run();
    if (!result.HasErrors()) {
        return std::move(*result.manifest);
    }
    if (loader.first_error) {
        std::rethrow_exception(loader.first_error);
    }
    throw ReferenceError{loader.dangling};
}

auto LocalizedTextToJson(LocalizedText const& text) -> nlohmann::json {
    if (text.translations.empty()) {
        return text.text;
    }
    nlohmann::json out = text.translations;
    out["default"] = text.text;
    return out;
}

auto GeoPointToJson(GeoPoint const& p) -> nlohmann::json {
    if (p.height == 0.0) {
        return nlohmann::json::array({p.lon, p.lat});
    }
    return nlohmann::json::array({p.lon, p.lat, p.height});
}

auto ManifestToJson(SiteManifest const& site) -> nlohmann::json {
    nlohmann::json doc;
    doc["schema_version"] = site.schema_version;
    doc["site_id"] = site.site_id;
    doc["title"] = LocalizedTextToJson(site.title);
    doc["description"] = LocalizedTextToJson(site.description);
    doc["initial_view"] = {{"center", GeoPointToJson(site.initial_view.center)},
                           {"zoom", site.initial_view.zoom}};

    auto& layers = doc["layers"] = nlohmann::json::array();
    for (auto const& layer : site.layers) {
        nlohmann::json l;
        l["layer_id"] = layer.layer_id;
        l["label"] = LocalizedTextToJson(layer.label);
        l["period_start"] = layer.period_start;
        if (layer.period_end) {
            l["period_end"] = *layer.period_end;
        }
        l["base_style"] = ToString(layer.base_style);
        l["markers_file"] = layer.markers_file;
        auto& overlays = l["overlays"] = nlohmann::json::array();
        for (auto const& overlay : layer.overlays) {
            nlohmann::json o{{"asset_id", overlay.asset_id},
                             {"opacity_default", overlay.opacity_default}};
            if (auto const* c = std::get_if<OverlayCorners>(&overlay.georeference)) {
                o["corners"] = {{"nw", GeoPointToJson(c->nw)},
                                {"ne", GeoPointToJson(c->ne)},
                                {"se", GeoPointToJson(c->se)},
                                {"sw", GeoPointToJson(c->sw)}};
            }
            else {
                auto& gcps = o["gcps"] = nlohmann::json::array();
                for (auto const& g : std::get<std::vector<GroundControlPoint>>(
                         overlay.georeference)) {
                    gcps.push_back({{"pixel", {g.pixel.x, g.pixel.y}},
                                    {"geo", GeoPointToJson(g.geo)}});
                }
            }
            overlays.push_back(std::move(o));
        }
        layers.push_back(std::move(l));
    }

    auto& assets = doc["assets"] = nlohmann::json::array();
    for (auto const& asset : site.assets) {
        nlohmann::json a{{"asset_id", asset.asset_id},
                         {"kind", ToString(asset.kind)},
                         {"role", ToString(asset.role)}};
        if (asset.url) {
            a["url"] = *asset.url;
        }
        else {
            a["path"] = asset.path;
        }
        if (asset.caption) {
            a["caption"] = LocalizedTextToJson(*asset.caption);
        }
        auto const& hints = asset.render_hints;
        if (hints.texture_mode || hints.dollhouse_variant ||
            hints.focus_target) {
            auto& h = a["render_hints"] = nlohmann::json::object();
            if (hints.texture_mode) {
                h["texture_mode"] = ToString(*hints.texture_mode);
            }
            if (hints.dollhouse_variant) {
                h["dollhouse_variant"] = *hints.dollhouse_variant;
            }
            if (hints.focus_target) {
                h["focus_target"] = *hints.focus_target;
            }
        }
        if (asset.pano_pose) {
            a["pano_pose"] = {
                {"position", GeoPointToJson(asset.pano_pose->position)},
                {"camera_height", asset.pano_pose->camera_height},
                {"heading", asset.pano_pose->heading}};
        }
        assets.push_back(std::move(a));
    }

    auto& annotations = doc["annotations"] = nlohmann::json::array();
    for (auto const& ann : site.annotations) {
        nlohmann::json a{{"pano_asset_id", ann.pano_asset_id},
                         {"label", LocalizedTextToJson(ann.label)},
                         {"body", LocalizedTextToJson(ann.body)}};
        if (auto const* d = std::get_if<Direction>(&ann.target)) {
            a["direction"] = {{"yaw", d->yaw}, {"pitch", d->pitch}};
        }
        else {
            a["target"] = GeoPointToJson(std::get<GeoPoint>(ann.target));
        }
        annotations.push_back(std::move(a));
    }
    return doc;
}

}  // namespace heritage::content
