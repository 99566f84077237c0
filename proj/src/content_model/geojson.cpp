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

#include "heritage_forge/content_model/geojson.hpp"

#include <algorithm>
#include <cmath>

#include "fmt/format.h"
#include "heritage_forge/errors.hpp"

namespace heritage::content {

namespace {

// nlohmann reports the 1-based byte index of the offending character.
auto LineAndColumn(std::string_view text, std::size_t byte)
    -> std::pair<std::size_t, std::size_t> {
    std::size_t const end = std::min(byte == 0 ? 0 : byte - 1, text.size());
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i < end; ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        }
        else {
            ++column;
        }
    }
    return {line, column};
}

auto ParseFeature(nlohmann::json const& feature, std::size_t index)
    -> RawFeature {
    auto const where = fmt::format("features[{}]", index);
    if (!feature.is_object()) {
        throw GeoJsonError{where + ": feature must be an object"};
    }
    auto type = feature.find("type");
    if (type == feature.end() || *type != "Feature") {
        throw GeoJsonError{where + ": type must be \"Feature\""};
    }

    auto geometry = feature.find("geometry");
    if (geometry == feature.end() || geometry->is_null()) {
        throw GeoJsonError{where + ": missing geometry"};
    }
    if (!geometry->is_object()) {
        throw GeoJsonError{where + ": geometry must be an object"};
    }
    auto geometry_type = geometry->find("type");
    if (geometry_type == geometry->end() || !geometry_type->is_string()) {
        throw GeoJsonError{where + ": geometry has no type"};
    }
    if (*geometry_type != "Point") {
        throw GeoJsonError{fmt::format("{}: markers must be Point (got {})",
                                       where,
                                       geometry_type->get<std::string>())};
    }
    auto coordinates = geometry->find("coordinates");
    if (coordinates == geometry->end() || !coordinates->is_array()) {
        throw GeoJsonError{where + ": missing coordinates"};
    }
    if (coordinates->size() < 2 || coordinates->size() > 3) {
        throw GeoJsonError{where +
                           ": Point needs 2 or 3 coordinates (lon, lat[, h])"};
    }

    RawFeature out;
    for (auto const& c : *coordinates) {
        if (!c.is_number() || !std::isfinite(c.get<double>())) {
            throw GeoJsonError{where + ": coordinates must be finite numbers"};
        }
        out.coordinates.push_back(c.get<double>());
    }

    auto properties = feature.find("properties");
    if (properties != feature.end() && !properties->is_null()) {
        if (!properties->is_object()) {
            throw GeoJsonError{where + ": properties must be an object"};
        }
        out.properties = *properties;
    }

    auto id = feature.find("id");
    if (id != feature.end()) {
        if (id->is_string()) {
            out.id = id->get<std::string>();
        }
        else if (id->is_number_integer()) {
            out.id = id->dump();
        }
    }
    return out;
}

}  // namespace

auto ParseJsonText(std::string_view text) -> nlohmann::json {
    try {
        return nlohmann::json::parse(text.begin(), text.end());
    } catch (nlohmann::json::parse_error const& e) {
        auto [line, column] = LineAndColumn(text, e.byte);
        throw SyntaxError{
            fmt::format("line {}, column {}: {}", line, column, e.what()),
            line, column};
    }
}

auto ParseFeatureCollection(std::string_view text) -> std::vector<RawFeature> {
    auto const root = ParseJsonText(text);
    if (!root.is_object()) {
        throw GeoJsonError{"expected a FeatureCollection object"};
    }
    auto type = root.find("type");
    if (type == root.end() || *type != "FeatureCollection") {
        throw GeoJsonError{"type must be \"FeatureCollection\""};
    }
    auto features = root.find("features");
    if (features == root.end() || !features->is_array()) {
        throw GeoJsonError{"FeatureCollection needs a features array"};
    }
    std::vector<RawFeature> out;
    out.reserve(features->size());
    for (std::size_t i = 0; i < features->size(); ++i) {
        out.push_back(ParseFeature((*features)[i], i));
    }
    return out;
}

}  // namespace heritage::content
