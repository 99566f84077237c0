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

#ifndef HERITAGE_FORGE_CONTENT_MODEL_MARKERS_HPP
#define HERITAGE_FORGE_CONTENT_MODEL_MARKERS_HPP

#include <span>
#include <string>
#include <vector>

#include "heritage_forge/content_model/geojson.hpp"
#include "heritage_forge/content_model/types.hpp"
#include "heritage_forge/diagnostics.hpp"

namespace heritage::content {

/// Maps raw features onto Markers for `layer_id`.
///
/// Recognized properties: marker_id (falls back to the feature id), kind,
/// title, body, media, related_locations, nav_order. Everything else lands
/// in Marker::extras. Output is sorted by nav_order ascending with ties
/// broken by marker_id; markers without nav_order follow in file order.
///
/// Throws SchemaError for unknown kinds or missing fields and
/// DuplicateIdError when a marker_id repeats.
[[nodiscard]] auto MarkersFromFeatures(std::span<RawFeature const> features,
                                       std::string const& layer_id)
    -> std::vector<Marker>;

/// Same mapping, but every bad feature is recorded in `issues` (with the
/// given path prefix) instead of aborting at the first one.
[[nodiscard]] auto MarkersFromFeatures(std::span<RawFeature const> features,
                                       std::string const& layer_id,
                                       std::string const& path_prefix,
                                       std::vector<Issue>& issues)
    -> std::vector<Marker>;

/// Orders markers in place using the rule above.
void SortMarkers(std::vector<Marker>& markers);

/// Inverse of the property mapping, for writing marker files back out.
[[nodiscard]] auto MarkerToFeature(Marker const& marker) -> nlohmann::json;

}  // namespace heritage::content

#endif  // HERITAGE_FORGE_CONTENT_MODEL_MARKERS_HPP
