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

#ifndef HERITAGE_FORGE_CONTENT_MODEL_GEOJSON_HPP
#define HERITAGE_FORGE_CONTENT_MODEL_GEOJSON_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace heritage::content {

/// A GeoJSON Point feature as read from a marker file. Coordinates keep
/// the file's lon, lat[, height] order.
struct RawFeature {
    std::vector<double> coordinates;
    nlohmann::json properties = nlohmann::json::object();
    // Top-level feature "id" when it is a string or number.
    std::optional<std::string> id;
};

/// Parses a FeatureCollection whose features all have Point geometry.
///
/// Throws SyntaxError when `text` is not JSON and GeoJsonError when it is
/// not a FeatureCollection, a feature is not a Point, or coordinates are
/// missing or malformed.
[[nodiscard]] auto ParseFeatureCollection(std::string_view text)
    -> std::vector<RawFeature>;

/// Parses JSON text, translating parse failures into SyntaxError with a
/// 1-based line and column.
[[nodiscard]] auto ParseJsonText(std::string_view text) -> nlohmann::json;

}  // namespace heritage::content

#endif  // HERITAGE_FORGE_CONTENT_MODEL_GEOJSON_HPP
