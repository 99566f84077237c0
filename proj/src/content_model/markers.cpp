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

#include "heritage_forge/content_model/markers.hpp"

#include <algorithm>
#include <array>
#include <exception>
#include <set>
#include <string_view>

#include "fmt/format.h"
#include "heritage_forge/content_model/manifest.hpp"
#include "heritage_forge/errors.hpp"
#include "json_fields.hpp"

namespace heritage::content {

namespace {

constexpr std::array<std::string_view, 7> kKnownProperties{
    "marker_id", "kind",  "title",    "body",
    "media",     "nav_order", "related_locations"};

auto IsKnownProperty(std::string_view key) -> bool {
    return std::find(kKnownProperties.begin(), kKnownProperties.end(), key) !=
           kKnownProperties.end();
}

auto FeaturePath(std::string const& prefix, std::size_t index)
    -> std::string {
    return detail::IndexPath(prefix.empty() ? "features" : prefix + "#features",
                             index);
}

auto MarkerFromFeature(RawFeature const& feature, std::string const& layer_id,
                       std::string const& path) -> Marker {
    auto const props_path = detail::JoinPath(path, "properties");
    detail::FieldReader props{feature.properties, props_path};

    Marker m;
    m.layer_id = layer_id;
    if (props.Has("marker_id")) {
        m.marker_id = props.Slug("marker_id");
    }
    else if (feature.id) {
        m.marker_id = detail::ParseSlug(*feature.id, detail::JoinPath(path, "id"));
    }
    else {
        throw SchemaError{props.PathOf("marker_id"), "required field missing"};
    }

    auto const kind_name = props.String("kind");
    auto kind = ParseMarkerKind(kind_name);
    if (!kind) {
        throw SchemaError{props.PathOf("kind"),
                          fmt::format("unknown marker kind \"{}\" (expected "
                                      "model3d, pano360, info or video)",
                                      kind_name)};
    }
    m.kind = *kind;

    auto const coords_path = detail::JoinPath(path, "geometry.coordinates");
    m.position = detail::ParseGeoPoint(nlohmann::json(feature.coordinates),
                                       coords_path);

    m.title = props.Text("title");
    if (auto body = props.OptionalText("body")) {
        m.body = std::move(*body);
    }

    auto const& media = props.OptionalArray("media");
    for (std::size_t i = 0; i < media.size(); ++i) {
        m.media.push_back(
            detail::ParseSlug(media[i], detail::IndexPath(props.PathOf("media"), i)));
    }
    if (m.media.empty() && m.kind != MarkerKind::kInfo) {
        throw SchemaError{props.PathOf("media"),
                          fmt::format("{} markers need at least one media "
                                      "asset",
                                      ToString(m.kind))};
    }

    auto const& related = props.OptionalArray("related_locations");
    for (std::size_t i = 0; i < related.size(); ++i) {
        detail::FieldReader loc{
            related[i], detail::IndexPath(props.PathOf("related_locations"), i)};
        m.related_locations.push_back(
            RelatedLocation{loc.Text("label"), loc.Point("position")});
    }

    m.nav_order = props.OptionalInt("nav_order");

    for (auto const& [key, value] : feature.properties.items()) {
        if (!IsKnownProperty(key)) {
            m.extras[key] = value;
        }
    }
    return m;
}

auto IssueFromException(std::exception_ptr const& error,
                        std::string const& path) -> Issue {
    try {
        std::rethrow_exception(error);
    } catch (DuplicateIdError const& e) {
        return detail::IssueFromError(e, path, codes::kDuplicateId);
    } catch (Error const& e) {
        return detail::IssueFromError(e, path, codes::kSchema);
    }
}

auto Convert(std::span<RawFeature const> features, std::string const& layer_id,
             std::string const& path_prefix, std::vector<Issue>* issues)
    -> std::vector<Marker> {
    std::vector<Marker> markers;
    std::set<std::string> seen;
    for (std::size_t i = 0; i < features.size(); ++i) {
        auto const path = FeaturePath(path_prefix, i);
        try {
            auto marker = MarkerFromFeature(features[i], layer_id, path);
            if (!seen.insert(marker.marker_id).second) {
                throw DuplicateIdError{marker.marker_id};
            }
            markers.push_back(std::move(marker));
        } catch (Error const&) {
            if (issues == nullptr) {
                throw;
            }
            issues->push_back(IssueFromException(std::current_exception(), path));
        }
    }
    SortMarkers(markers);
    return markers;
}

}  // namespace

auto MarkersFromFeatures(std::span<RawFeature const> features,
                         std::string const& layer_id) -> std::vector<Marker> {
    return Convert(features, layer_id, "", nullptr);
}

auto MarkersFromFeatures(std::span<RawFeature const> features,
                         std::string const& layer_id,
                         std::string const& path_prefix,
                         std::vector<Issue>& issues) -> std::vector<Marker> {
    return Convert(features, layer_id, path_prefix, &issues);
}

void SortMarkers(std::vector<Marker>& markers) {
    std::stable_sort(markers.begin(), markers.end(),
                     [](Marker const& a, Marker const& b) {
                         if (a.nav_order && b.nav_order) {
                             if (*a.nav_order != *b.nav_order) {
                                 return *a.nav_order < *b.nav_order;
                             }
                             return a.marker_id < b.marker_id;
                         }
                         // Unordered markers go last and keep file order.
                         return a.nav_order.has_value() &&
                                !b.nav_order.has_value();
                     });
}

auto MarkerToFeature(Marker const& marker) -> nlohmann::json {
    nlohmann::json props = marker.extras;
    props["marker_id"] = marker.marker_id;
    props["kind"] = ToString(marker.kind);
    props["title"] = LocalizedTextToJson(marker.title);
    if (!marker.body.text.empty() || !marker.body.translations.empty()) {
        props["body"] = LocalizedTextToJson(marker.body);
    }
    if (!marker.media.empty()) {
        props["media"] = marker.media;
    }
    if (!marker.related_locations.empty()) {
        auto& related = props["related_locations"] = nlohmann::json::array();
        for (auto const& loc : marker.related_locations) {
            related.push_back({{"label", LocalizedTextToJson(loc.label)},
                               {"position", GeoPointToJson(loc.position)}});
        }
    }
    if (marker.nav_order) {
        props["nav_order"] = *marker.nav_order;
    }
    return {{"type", "Feature"},
            {"geometry",
             {{"type", "Point"},
              {"coordinates", GeoPointToJson(marker.position)}}},
            {"properties", std::move(props)}};
}

}  // namespace heritage::content
