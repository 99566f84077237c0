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

#include "heritage_forge/bundle/compiler.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include <unistd.h>

#include "fmt/format.h"
#include "heritage_forge/bundle/bounds.hpp"
#include "heritage_forge/bundle/content_hash.hpp"
#include "heritage_forge/content_model/manifest.hpp"
#include "heritage_forge/errors.hpp"
#include "heritage_forge/georeference/georeference.hpp"
#include "heritage_forge/pano_geometry/pano_geometry.hpp"
#include "spdlog/spdlog.h"

namespace heritage::bundle {

namespace fs = std::filesystem;
using content::AssetKind;
using content::AssetRole;
using content::MediaAsset;
using content::SiteManifest;
using nlohmann::json;

namespace {

auto MakeIssue(Severity severity, std::string_view code, std::string path,
               std::string message) -> Issue {
    return Issue{severity, std::string{code}, std::move(path),
                 std::move(message)};
}

auto ErrorIssue(std::string_view code, std::string path, std::string message)
    -> Issue {
    return MakeIssue(Severity::kError, code, std::move(path),
                     std::move(message));
}

auto WarningIssue(std::string_view code, std::string path, std::string message)
    -> Issue {
    return MakeIssue(Severity::kWarning, code, std::move(path),
                     std::move(message));
}

auto Lowercase(std::string s) -> std::string {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) {
        return static_cast<char>(std::tolower(c));
    });
    return s;
}

auto ExtensionOf(std::string const& path) -> std::string {
    auto ext = fs::path{path}.extension().string();
    if (!ext.empty() && ext.front() == '.') {
        ext.erase(0, 1);
    }
    return Lowercase(ext);
}

// --- asset validation -------------------------------------------------------

struct AssetOutcome {
    std::vector<Issue> issues;
    bool ok{false};
    fs::path source;
    std::string file_name;  // "<hash>.<ext>", empty for external URLs
    std::uint64_t size{};
    std::optional<assets::GlbInfo> glb;
    std::optional<assets::ImageInfo> image;
    assets::Bytes preview;
    std::string preview_name;
};

auto HasError(AssetOutcome const& o) -> bool {
    return std::any_of(o.issues.begin(), o.issues.end(), [](Issue const& i) {
        return i.severity == Severity::kError;
    });
}

void CheckGlb(MediaAsset const& asset, assets::ByteView bytes,
              AssetOutcome& out) {
    try {
        out.glb = assets::ValidateGlb(bytes);
    } catch (GlbError const& e) {
        try {
            auto const info = assets::ProbeImage(bytes);
            out.issues.push_back(ErrorIssue(
                codes::kFormatMismatch, asset.path,
                fmt::format("declared kind glb but the file is a {} image",
                            assets::ToString(info.format))));
        } catch (ImageError const&) {
            out.issues.push_back(ErrorIssue(
                codes::kInvalidGlb, asset.path,
                fmt::format("{}: {}", e.kind(), e.what())));
        }
        return;
    }
    if (bytes.size() > kLargeGlbBytes) {
        out.issues.push_back(WarningIssue(
            codes::kLargeGlb, asset.path,
            fmt::format("{:.1f} MB model may load slowly",
                        static_cast<double>(bytes.size()) / (1024.0 * 1024.0))));
    }
    auto const& focus = asset.render_hints.focus_target;
    if (focus && std::find(out.glb->node_names.begin(),
                           out.glb->node_names.end(),
                           *focus) == out.glb->node_names.end()) {
        out.issues.push_back(WarningIssue(
            codes::kFocusTargetMissing, asset.path,
            fmt::format("focus_target \"{}\" is not a node name in the model",
                        *focus)));
    }
}

void CheckImage(MediaAsset const& asset, assets::ByteView bytes,
                std::uint32_t max_preview, AssetOutcome& out) {
    try {
        out.image = assets::ProbeImage(bytes);
    } catch (ImageError const& e) {
        bool const looks_like_glb =
            bytes.size() >= 4 && bytes[0] == 'g' && bytes[1] == 'l' &&
            bytes[2] == 'T' && bytes[3] == 'F';
        out.issues.push_back(
            looks_like_glb
                ? ErrorIssue(codes::kFormatMismatch, asset.path,
                             "declared kind image but the file is a GLB model")
                : ErrorIssue(codes::kInvalidImage, asset.path,
                             fmt::format("{}: {}", e.kind(), e.what())));
        return;
    }
    auto const& info = *out.image;
    if (asset.role == AssetRole::kPanorama) {
        switch (assets::CheckEquirectangular(info)) {
            case assets::EquirectCheck::kPass:
                break;
            case assets::EquirectCheck::kWarn:
                out.issues.push_back(WarningIssue(
                    codes::kNearlyEquirectangular, asset.path,
                    fmt::format("panorama is {}x{}, not exactly 2:1",
                                info.width, info.height)));
                break;
            case assets::EquirectCheck::kFail:
                out.issues.push_back(ErrorIssue(
                    codes::kNotEquirectangular, asset.path,
                    fmt::format("panorama is {}x{}; equirectangular images "
                                "must be 2:1",
                                info.width, info.height)));
                return;
        }
        if (info.width > kLargePanoramaPixels) {
            out.issues.push_back(WarningIssue(
                codes::kLargePanorama, asset.path,
                fmt::format("panorama width {} exceeds {} px", info.width,
                            kLargePanoramaPixels)));
        }
    }
    try {
        out.preview = assets::DerivePreview(bytes, max_preview);
    } catch (DecodeError const& e) {
        out.issues.push_back(ErrorIssue(codes::kInvalidImage, asset.path,
                                        fmt::format("DecodeError: {}",
                                                    e.what())));
    }
}

void CheckVideo(MediaAsset const& asset, assets::ByteView bytes,
                AssetOutcome& out) {
    auto const ext = ExtensionOf(asset.path);
    if (!assets::IsVideoExtension(ext)) {
        out.issues.push_back(ErrorIssue(
            codes::kInvalidVideo, asset.path,
            fmt::format("unsupported video extension \"{}\"", ext)));
    }
    else if (bytes.empty()) {
        out.issues.push_back(
            ErrorIssue(codes::kInvalidVideo, asset.path, "video file is empty"));
    }
}

auto DefaultExtension(AssetOutcome const& out, AssetKind kind) -> std::string {
    if (kind == AssetKind::kGlb) {
        return "glb";
    }
    if (out.image) {
        return out.image->format == assets::ImageFormat::kPng ? "png" : "jpg";
    }
    return "bin";
}

auto ValidateAsset(MediaAsset const& asset, fs::path const& root,
                   std::uint32_t max_preview) -> AssetOutcome {
    AssetOutcome out;
    if (asset.url) {
        out.ok = true;
        return out;
    }
    out.source = root / asset.path;
    assets::Bytes bytes;
    try {
        bytes = assets::ReadFileBytes(out.source);
    } catch (std::exception const& e) {
        out.issues.push_back(ErrorIssue(codes::kMissingFile, asset.path,
                                        e.what()));
        return out;
    }
    out.size = bytes.size();
    switch (asset.kind) {
        case AssetKind::kGlb:
            CheckGlb(asset, bytes, out);
            break;
        case AssetKind::kImage:
            CheckImage(asset, bytes, max_preview, out);
            break;
        case AssetKind::kVideo:
            CheckVideo(asset, bytes, out);
            break;
    }
    if (HasError(out)) {
        return out;
    }
    auto ext = ExtensionOf(asset.path);
    // The server only accepts short alphanumeric extensions.
    bool const servable =
        !ext.empty() && ext.size() <= 8 &&
        std::all_of(ext.begin(), ext.end(), [](unsigned char c) {
            return std::isdigit(c) != 0 || (c >= 'a' && c <= 'z');
        });
    if (!servable) {
        ext = DefaultExtension(out, asset.kind);
    }
    out.file_name = fmt::format("{}.{}", ContentHash(bytes), ext);
    if (out.image) {
        if (out.preview.size() == bytes.size() &&
            std::equal(out.preview.begin(), out.preview.end(), bytes.begin())) {
            out.preview.clear();
            out.preview_name = out.file_name;
        }
        else {
            out.preview_name = fmt::format("{}.png", ContentHash(out.preview));
        }
    }
    out.ok = true;
    return out;
}

auto ValidateAllAssets(SiteManifest const& site, CompileOptions const& options)
    -> std::vector<AssetOutcome> {
    std::vector<AssetOutcome> outcomes(site.assets.size());
    unsigned jobs = options.jobs != 0 ? options.jobs
                                      : std::max(1U, std::thread::hardware_concurrency());
    jobs = std::min<unsigned>(jobs, static_cast<unsigned>(outcomes.size()));
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (auto i = next.fetch_add(1); i < outcomes.size();
             i = next.fetch_add(1)) {
            outcomes[i] =
                ValidateAsset(site.assets[i], site.root, options.max_preview);
        }
    };
    if (jobs <= 1) {
        worker();
        return outcomes;
    }
    std::vector<std::jthread> pool;
    pool.reserve(jobs);
    for (unsigned j = 0; j < jobs; ++j) {
        pool.emplace_back(worker);
    }
    return outcomes;  // jthreads join before the vector is moved out
}

// --- resolution ----------------------------------------------------------------

struct ResolvedOverlay {
    std::string layer_id;
    content::OverlayRef const* ref{};
    std::array<GeoPoint, 4> corners{};
    std::optional<double> rmse;
    std::size_t gcp_count{};
};

struct ResolvedAnnotation {
    content::PanoAnnotation const* source{};
    Direction direction;
    pano::Uv uv;
};

auto Num(double v) -> json { return PinFloat(v); }

auto PointJson(GeoPoint const& p) -> json {
    if (p.height == 0.0) {
        return json::array({Num(p.lon), Num(p.lat)});
    }
    return json::array({Num(p.lon), Num(p.lat), Num(p.height)});
}

class SiteCompiler {
  public:
    SiteCompiler(SiteManifest site, CompileOptions options, CompileReport& report)
        : site_{std::move(site)}, options_{options}, report_{report} {}

    void Check();
    void Write(fs::path const& out_dir, Bundle& bundle);

  private:
    void CollectStats();
    void ResolveOverlays();
    void ResolveAnnotations();
    void WarnUnusedAssets();
    auto Outcome(std::string const& asset_id) const -> AssetOutcome const*;
    auto AssetPath(std::string const& asset_id) const -> std::string;
    auto MediaJson(std::string const& asset_id) const -> json;
    auto LayerJson(content::TemporalLayer const& layer) const -> json;
    auto SiteJson() const -> json;

    SiteManifest site_;
    CompileOptions options_;
    CompileReport& report_;
    std::vector<AssetOutcome> outcomes_;
    std::map<std::string, std::size_t> outcome_index_;
    std::vector<ResolvedOverlay> overlays_;
    std::map<std::string, std::vector<ResolvedAnnotation>> annotations_;
};

void SiteCompiler::Check() {
    CollectStats();
    outcomes_ = ValidateAllAssets(site_, options_);
    for (std::size_t i = 0; i < outcomes_.size(); ++i) {
        outcome_index_.emplace(site_.assets[i].asset_id, i);
        for (auto& issue : outcomes_[i].issues) {
            report_.Add(issue);
        }
    }
    ResolveOverlays();
    ResolveAnnotations();
    WarnUnusedAssets();
}

void SiteCompiler::CollectStats() {
    auto& stats = report_.stats;
    stats.layers = site_.layers.size();
    stats.assets = site_.assets.size();
    for (auto kind : content::kAllMarkerKinds) {
        stats.markers[std::string{content::ToString(kind)}] = 0;
    }
    for (auto const& layer : site_.layers) {
        for (auto const& marker : layer.markers) {
            ++stats.markers[std::string{content::ToString(marker.kind)}];
        }
    }
}

auto SiteCompiler::Outcome(std::string const& asset_id) const
    -> AssetOutcome const* {
    auto it = outcome_index_.find(asset_id);
    if (it == outcome_index_.end() || !outcomes_[it->second].ok) {
        return nullptr;
    }
    return &outcomes_[it->second];
}

void SiteCompiler::ResolveOverlays() {
    for (auto const& layer : site_.layers) {
        for (std::size_t k = 0; k < layer.overlays.size(); ++k) {
            auto const& ref = layer.overlays[k];
            auto const path =
                fmt::format("layers[{}].overlays[{}]", layer.layer_id, k);
            ResolvedOverlay resolved{layer.layer_id, &ref, {}, std::nullopt, 0};
            if (auto const* c =
                    std::get_if<content::OverlayCorners>(&ref.georeference)) {
                resolved.corners = {c->nw, c->ne, c->se, c->sw};
                overlays_.push_back(resolved);
                continue;
            }
            auto const* outcome = Outcome(ref.asset_id);
            if (outcome == nullptr || !outcome->image) {
                continue;  // the asset problem is already reported
            }
            auto const& gcps =
                std::get<std::vector<GroundControlPoint>>(ref.georeference);
            auto const width = static_cast<double>(outcome->image->width);
            auto const height = static_cast<double>(outcome->image->height);
            auto const outside = std::find_if(
                gcps.begin(), gcps.end(), [&](GroundControlPoint const& g) {
                    return !(g.pixel.x >= 0.0 && g.pixel.x <= width &&
                             g.pixel.y >= 0.0 && g.pixel.y <= height);
                });
            if (outside != gcps.end()) {
                report_.Add(ErrorIssue(
                    codes::kGcpOutOfBounds,
                    fmt::format("{}.gcps[{}]", path, outside - gcps.begin()),
                    fmt::format("pixel ({}, {}) lies outside the {}x{} image",
                                outside->pixel.x, outside->pixel.y, width,
                                height)));
                continue;
            }
            try {
                auto const fit = georef::FitAffine(gcps);
                auto const key = fmt::format("{}/{}", layer.layer_id, ref.asset_id);
                report_.georef_rmse[key] = fit.rmse;
                if (fit.rmse > kRmseErrorMeters) {
                    report_.Add(ErrorIssue(
                        codes::kGeoreferenceRmse, path,
                        fmt::format("GCP fit RMSE {:.2f} m exceeds {} m; check "
                                    "for misplaced control points",
                                    fit.rmse, kRmseErrorMeters)));
                    continue;
                }
                if (fit.rmse > kRmseWarnMeters) {
                    report_.Add(WarningIssue(
                        codes::kRmseHigh, path,
                        fmt::format("GCP fit RMSE {:.2f} m exceeds {} m",
                                    fit.rmse, kRmseWarnMeters)));
                }
                resolved.corners =
                    georef::OverlayCorners(fit.transform, width, height);
                resolved.rmse = fit.rmse;
                resolved.gcp_count = gcps.size();
                overlays_.push_back(resolved);
            } catch (Error const& e) {
                report_.Add(ErrorIssue(codes::kGeoreference, path,
                                       fmt::format("{}: {}", e.kind(),
                                                   e.what())));
            }
        }
    }
}

void SiteCompiler::ResolveAnnotations() {
    for (std::size_t i = 0; i < site_.annotations.size(); ++i) {
        auto const& ann = site_.annotations[i];
        auto const path = fmt::format("annotations[{}]", i);
        auto const* asset = site_.FindAsset(ann.pano_asset_id);
        if (asset == nullptr) {
            continue;
        }
        try {
            Direction direction;
            if (auto const* d = std::get_if<Direction>(&ann.target)) {
                direction = *d;
            }
            else if (asset->pano_pose) {
                direction = pano::AnnotationDirection(
                    *asset->pano_pose, std::get<GeoPoint>(ann.target));
            }
            else {
                continue;  // reported by the manifest loader
            }
            annotations_[ann.pano_asset_id].push_back(
                ResolvedAnnotation{&ann, direction, pano::DirectionToUv(direction)});
        } catch (Error const& e) {
            report_.Add(ErrorIssue(codes::kAnnotation, path,
                                   fmt::format("{}: {}", e.kind(), e.what())));
        }
    }
}

void SiteCompiler::WarnUnusedAssets() {
    std::set<std::string> used;
    for (auto const& layer : site_.layers) {
        for (auto const& overlay : layer.overlays) {
            used.insert(overlay.asset_id);
        }
        for (auto const& marker : layer.markers) {
            used.insert(marker.media.begin(), marker.media.end());
        }
    }
    for (auto const& asset : site_.assets) {
        if (asset.render_hints.dollhouse_variant && used.contains(asset.asset_id)) {
            used.insert(*asset.render_hints.dollhouse_variant);
        }
    }
    for (auto const& asset : site_.assets) {
        if (!used.contains(asset.asset_id)) {
            report_.Add(WarningIssue(
                codes::kUnusedAsset, asset.path.empty() ? asset.asset_id : asset.path,
                fmt::format("asset \"{}\" is not referenced by any layer",
                            asset.asset_id)));
        }
    }
}

auto SiteCompiler::AssetPath(std::string const& asset_id) const -> std::string {
    auto const* outcome = Outcome(asset_id);
    if (outcome == nullptr || outcome->file_name.empty()) {
        return {};
    }
    return "assets/" + outcome->file_name;
}

auto SiteCompiler::MediaJson(std::string const& asset_id) const -> json {
    auto const* asset = site_.FindAsset(asset_id);
    auto const* outcome = Outcome(asset_id);
    json m{{"asset_id", asset_id},
           {"kind", content::ToString(asset->kind)},
           {"role", content::ToString(asset->role)}};
    if (asset->url) {
        m["url"] = *asset->url;
    }
    else {
        m["path"] = AssetPath(asset_id);
        m["bytes"] = outcome->size;
    }
    if (asset->caption) {
        m["caption"] = content::LocalizedTextToJson(*asset->caption);
    }
    if (outcome != nullptr && outcome->image) {
        m["width"] = outcome->image->width;
        m["height"] = outcome->image->height;
        m["preview"] = "assets/" + outcome->preview_name;
    }
    if (asset->kind == AssetKind::kVideo) {
        m["autoplay"] = false;
    }
    auto const& hints = asset->render_hints;
    if (asset->kind == AssetKind::kGlb) {
        m["texture_mode"] = content::ToString(
            hints.texture_mode.value_or(content::TextureMode::kPhotographic));
    }
    if (hints.dollhouse_variant) {
        m["dollhouse"] = {{"asset_id", *hints.dollhouse_variant},
                          {"path", AssetPath(*hints.dollhouse_variant)}};
        if (auto const* variant = site_.FindAsset(*hints.dollhouse_variant);
            variant != nullptr && variant->render_hints.texture_mode) {
            m["dollhouse"]["texture_mode"] =
                content::ToString(*variant->render_hints.texture_mode);
        }
    }
    if (hints.focus_target) {
        m["focus_target"] = *hints.focus_target;
    }
    if (asset->role == AssetRole::kPanorama) {
        auto& list = m["annotations"] = json::array();
        if (auto it = annotations_.find(asset_id); it != annotations_.end()) {
            for (auto const& a : it->second) {
                list.push_back(
                    {{"label", content::LocalizedTextToJson(a.source->label)},
                     {"body", content::LocalizedTextToJson(a.source->body)},
                     {"yaw", Num(a.direction.yaw)},
                     {"pitch", Num(a.direction.pitch)},
                     {"u", Num(a.uv.u)},
                     {"v", Num(a.uv.v)},
                     {"target", std::holds_alternative<GeoPoint>(a.source->target)
                                    ? "geo"
                                    : "direction"}});
            }
        }
    }
    return m;
}

auto SiteCompiler::LayerJson(content::TemporalLayer const& layer) const -> json {
    json doc{{"schema_version", content::kSchemaVersion},
             {"layer_id", layer.layer_id},
             {"label", content::LocalizedTextToJson(layer.label)},
             {"period_start", layer.period_start},
             {"period_end", layer.period_end ? json(*layer.period_end) : json()},
             {"base_style", content::ToString(layer.base_style)}};

    auto& overlays = doc["overlays"] = json::array();
    for (auto const& o : overlays_) {
        if (o.layer_id != layer.layer_id) {
            continue;
        }
        json entry{{"asset_id", o.ref->asset_id},
                   {"image", AssetPath(o.ref->asset_id)},
                   {"opacity_default", Num(o.ref->opacity_default)},
                   {"corners", json::array()}};
        for (auto const& c : o.corners) {
            entry["corners"].push_back(PointJson(GeoPoint{c.lon, c.lat, 0.0}));
        }
        if (o.rmse) {
            entry["georeference"] = {{"method", "gcp"},
                                     {"gcp_count", o.gcp_count},
                                     {"rmse_m", Num(*o.rmse)}};
        }
        else {
            entry["georeference"] = {{"method", "corners"}};
        }
        overlays.push_back(std::move(entry));
    }

    auto& markers = doc["markers"] = json::array();
    for (auto const& marker : layer.markers) {
        json m{{"marker_id", marker.marker_id},
               {"kind", content::ToString(marker.kind)},
               {"position", PointJson(marker.position)},
               {"title", content::LocalizedTextToJson(marker.title)},
               {"body", content::LocalizedTextToJson(marker.body)},
               {"media", json::array()}};
        if (marker.nav_order) {
            m["nav_order"] = *marker.nav_order;
        }
        if (!marker.extras.empty()) {
            m["extras"] = marker.extras;
        }
        for (auto const& id : marker.media) {
            m["media"].push_back(MediaJson(id));
        }
        if (!marker.related_locations.empty()) {
            auto& related = m["related_locations"] = json::array();
            std::vector<GeoPoint> points{marker.position};
            for (auto const& loc : marker.related_locations) {
                related.push_back(
                    {{"label", content::LocalizedTextToJson(loc.label)},
                     {"position", PointJson(loc.position)}});
                points.push_back(loc.position);
            }
            auto const box = FitBounds(points, kZoomOutPadding);
            m["zoom_out_bounds"] = json::array(
                {Num(box.min_lon), Num(box.min_lat), Num(box.max_lon),
                 Num(box.max_lat)});
        }
        markers.push_back(std::move(m));
    }
    return doc;
}

auto SiteCompiler::SiteJson() const -> json {
    json doc{{"schema_version", content::kSchemaVersion},
             {"generator", "heritage-forge"},
             {"site_id", site_.site_id},
             {"title", content::LocalizedTextToJson(site_.title)},
             {"description", content::LocalizedTextToJson(site_.description)},
             {"initial_view",
              {{"center", PointJson(site_.initial_view.center)},
               {"zoom", Num(site_.initial_view.zoom)}}}};
    auto& layers = doc["layers"] = json::array();
    for (auto const& layer : site_.layers) {
        layers.push_back(
            {{"layer_id", layer.layer_id},
             {"label", content::LocalizedTextToJson(layer.label)},
             {"period_start", layer.period_start},
             {"period_end",
              layer.period_end ? json(*layer.period_end) : json()},
             {"base_style", content::ToString(layer.base_style)},
             {"index", fmt::format("layers/{}.json", layer.layer_id)},
             {"marker_count", layer.markers.size()}});
    }
    auto& asset_map = doc["asset_map"] = json::object();
    for (std::size_t i = 0; i < site_.assets.size(); ++i) {
        if (!outcomes_[i].file_name.empty()) {
            asset_map[site_.assets[i].asset_id] = outcomes_[i].file_name;
        }
    }
    return doc;
}

void WriteText(fs::path const& path, std::string const& text) {
    std::ofstream out{path, std::ios::binary | std::ios::trunc};
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    out.close();
    if (!out) {
        throw fs::filesystem_error{"cannot write", path,
                                   std::make_error_code(std::errc::io_error)};
    }
}

void WriteBytes(fs::path const& path, assets::Bytes const& bytes) {
    std::ofstream out{path, std::ios::binary | std::ios::trunc};
    out.write(reinterpret_cast<char const*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    out.close();
    if (!out) {
        throw fs::filesystem_error{"cannot write", path,
                                   std::make_error_code(std::errc::io_error)};
    }
}

auto StagingName(fs::path const& out_dir, std::string_view tag) -> fs::path {
    static std::atomic<unsigned> counter{0};
    auto const stamp =
        std::chrono::steady_clock::now().time_since_epoch().count();
    auto name = out_dir.filename().string();
    if (name.empty()) {
        name = "bundle";
    }
    return out_dir.parent_path() /
           fmt::format(".{}.{}-{}-{}-{}", name, tag, ::getpid(),
                       counter.fetch_add(1), stamp);
}

void SiteCompiler::Write(fs::path const& out_dir_in, Bundle& bundle) {
    auto const out_dir = fs::absolute(out_dir_in).lexically_normal();
    auto const target = out_dir.filename().empty() ? out_dir.parent_path()
                                                   : out_dir;
    if (!target.parent_path().empty()) {
        fs::create_directories(target.parent_path());
    }
    auto const staging = StagingName(target, "staging");
    try {
        fs::create_directories(staging / "assets");
        fs::create_directories(staging / "layers");

        std::uint64_t total = 0;
        for (auto const& outcome : outcomes_) {
            if (outcome.file_name.empty()) {
                continue;
            }
            auto const dest = staging / "assets" / outcome.file_name;
            if (!fs::exists(dest)) {
                fs::copy_file(outcome.source, dest);
                total += outcome.size;
            }
            if (!outcome.preview.empty()) {
                auto const preview = staging / "assets" / outcome.preview_name;
                if (!fs::exists(preview)) {
                    WriteBytes(preview, outcome.preview);
                    total += outcome.preview.size();
                }
            }
        }
        report_.stats.total_bytes = total;

        bundle.root = target;
        bundle.site_index = SiteJson();
        for (auto const& [id, name] : bundle.site_index["asset_map"].items()) {
            bundle.asset_map[id] = name.get<std::string>();
        }
        for (auto const& layer : site_.layers) {
            auto doc = LayerJson(layer);
            WriteText(staging / "layers" / (layer.layer_id + ".json"),
                      DumpIndex(doc));
            bundle.layer_indices[layer.layer_id] = std::move(doc);
        }
        WriteText(staging / "site.json", DumpIndex(bundle.site_index));

        if (fs::exists(fs::symlink_status(target))) {
            if (!fs::is_directory(target)) {
                throw fs::filesystem_error{
                    "output path exists and is not a directory", target,
                    std::make_error_code(std::errc::not_a_directory)};
            }
            auto const old = StagingName(target, "old");
            fs::rename(target, old);
            try {
                fs::rename(staging, target);
            } catch (...) {
                fs::rename(old, target);
                throw;
            }
            std::error_code ignored;
            fs::remove_all(old, ignored);
        }
        else {
            fs::rename(staging, target);
        }
    } catch (std::exception const& e) {
        std::error_code ignored;
        fs::remove_all(staging, ignored);
        report_.io_failure = true;
        report_.Add(ErrorIssue(codes::kOutputIo, target.string(), e.what()));
    }
}

auto Run(fs::path const& site_dir, std::optional<fs::path> const& out_dir,
         CompileOptions const& options) -> CompileResult {
    CompileResult result;
    auto& report = result.report;
    auto const manifest_path = site_dir / content::kManifestFileName;
    std::error_code ec;
    if (!fs::is_regular_file(manifest_path, ec)) {
        report.Add(ErrorIssue(codes::kSiteNotFound, site_dir.string(),
                              "site.json not found"));
        return result;
    }

    spdlog::info("loading {}", manifest_path.string());
    auto load = content::LoadManifestCollect(manifest_path);
    for (auto& issue : load.issues) {
        report.Add(std::move(issue));
    }
    if (!load.manifest) {
        return result;
    }

    SiteCompiler compiler{std::move(*load.manifest), options, report};
    compiler.Check();
    spdlog::info("checked site: {} error(s), {} warning(s)",
                 report.errors.size(), report.warnings.size());
    if (!report.ok() || !out_dir) {
        return result;
    }
    Bundle bundle;
    compiler.Write(*out_dir, bundle);
    if (report.ok()) {
        spdlog::info("wrote bundle to {}", bundle.root.string());
        result.bundle = std::move(bundle);
    }
    return result;
}

}  // namespace

void CompileReport::Add(Issue issue) {
    if (issue.severity == Severity::kError) {
        errors.push_back(std::move(issue));
    }
    else {
        warnings.push_back(std::move(issue));
    }
}

auto CompileReport::ToJson() const -> json {
    auto const issues = [](std::vector<Issue> const& list) {
        json out = json::array();
        for (auto const& i : list) {
            out.push_back({{"severity", ToString(i.severity)},
                           {"code", i.code},
                           {"path", i.path},
                           {"message", i.message}});
        }
        return out;
    };
    json rmse = json::object();
    for (auto const& [key, value] : georef_rmse) {
        rmse[key] = PinFloat(value);
    }
    return {{"ok", ok()},
            {"io_failure", io_failure},
            {"errors", issues(errors)},
            {"warnings", issues(warnings)},
            {"stats",
             {{"layers", stats.layers},
              {"markers", stats.markers},
              {"assets", stats.assets},
              {"total_bytes", stats.total_bytes}}},
            {"georef_rmse", std::move(rmse)}};
}

auto CompileReport::ToText() const -> std::string {
    std::ostringstream out;
    for (auto const* list : {&errors, &warnings}) {
        for (auto const& i : *list) {
            out << fmt::format("{:<7} {} {}: {}\n", ToString(i.severity),
                               i.code, i.path, i.message);
        }
    }
    std::vector<std::string> kinds;
    for (auto const& [kind, count] : stats.markers) {
        kinds.push_back(fmt::format("{}={}", kind, count));
    }
    out << fmt::format("layers: {}  markers: {}  assets: {}  bytes: {}\n",
                       stats.layers, fmt::join(kinds, " "), stats.assets,
                       stats.total_bytes);
    for (auto const& [key, value] : georef_rmse) {
        out << fmt::format("georeference rmse {}: {:.3f} m\n", key, value);
    }
    out << fmt::format("{}: {} error(s), {} warning(s)\n",
                       ok() ? "ok" : "failed", errors.size(), warnings.size());
    return out.str();
}

auto PinFloat(double value) -> double {
    if (!std::isfinite(value)) {
        return value;
    }
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.9g", value);
    double const pinned = std::strtod(buffer, nullptr);
    return pinned == 0.0 ? 0.0 : pinned;  // no "-0.0" in output
}

auto DumpIndex(json const& doc) -> std::string {
    return doc.dump(2, ' ', false, json::error_handler_t::strict) + "\n";
}

auto Compile(fs::path const& site_dir, fs::path const& out_dir,
             CompileOptions const& options) -> CompileResult {
    return Run(site_dir, out_dir, options);
}

auto Validate(fs::path const& site_dir, CompileOptions const& options)
    -> CompileReport {
    return Run(site_dir, std::nullopt, options).report;
}

}  // namespace heritage::bundle
