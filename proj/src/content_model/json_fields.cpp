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

#include "json_fields.hpp"

#include <cmath>
#include <limits>

#include "fmt/format.h"
#include "heritage_forge/errors.hpp"

namespace heritage::content::detail {

namespace {

auto TypeName(nlohmann::json const& v) -> std::string {
    return v.type_name();
}

auto EmptyArray() -> nlohmann::json const& {
    static nlohmann::json const kEmpty = nlohmann::json::array();
    return kEmpty;
}

}  // namespace

auto JoinPath(std::string_view base, std::string_view key) -> std::string {
    if (base.empty()) {
        return std::string{key};
    }
    return fmt::format("{}.{}", base, key);
}

auto IndexPath(std::string_view base, std::size_t index) -> std::string {
    return fmt::format("{}[{}]", base, index);
}

FieldReader::FieldReader(nlohmann::json const& object, std::string path)
    : object_{object}, path_{std::move(path)} {
    if (!object_.is_object()) {
        throw SchemaError{path_, "expected an object, got " +
                                     TypeName(object_)};
    }
}

auto FieldReader::Has(std::string_view key) const -> bool {
    auto it = object_.find(key);
    return it != object_.end() && !it->is_null();
}

auto FieldReader::At(std::string_view key) const -> nlohmann::json const& {
    auto it = object_.find(key);
    if (it == object_.end() || it->is_null()) {
        throw SchemaError{PathOf(key), "required field missing"};
    }
    return *it;
}

auto FieldReader::String(std::string_view key) const -> std::string {
    auto const& v = At(key);
    if (!v.is_string()) {
        throw SchemaError{PathOf(key), "expected a string, got " + TypeName(v)};
    }
    return v.get<std::string>();
}

auto FieldReader::OptionalString(std::string_view key) const
    -> std::optional<std::string> {
    if (!Has(key)) {
        return std::nullopt;
    }
    return String(key);
}

auto FieldReader::Slug(std::string_view key) const -> std::string {
    return ParseSlug(At(key), PathOf(key));
}

auto FieldReader::Int(std::string_view key) const -> int {
    auto const& v = At(key);
    if (!v.is_number_integer()) {
        throw SchemaError{PathOf(key),
                          "expected an integer, got " + TypeName(v)};
    }
    if (v.is_number_unsigned()) {
        auto const u = v.get<std::uint64_t>();
        if (u > static_cast<std::uint64_t>(std::numeric_limits<int>::max())) {
            throw SchemaError{PathOf(key), "integer out of range"};
        }
        return static_cast<int>(u);
    }
    auto const i = v.get<std::int64_t>();
    if (i < std::numeric_limits<int>::min() ||
        i > std::numeric_limits<int>::max()) {
        throw SchemaError{PathOf(key), "integer out of range"};
    }
    return static_cast<int>(i);
}

auto FieldReader::OptionalInt(std::string_view key) const
    -> std::optional<int> {
    if (!Has(key)) {
        return std::nullopt;
    }
    return Int(key);
}

auto FieldReader::Number(std::string_view key) const -> double {
    auto const& v = At(key);
    if (!v.is_number()) {
        throw SchemaError{PathOf(key), "expected a number, got " + TypeName(v)};
    }
    return v.get<double>();
}

auto FieldReader::OptionalNumber(std::string_view key) const
    -> std::optional<double> {
    if (!Has(key)) {
        return std::nullopt;
    }
    return Number(key);
}

auto FieldReader::Text(std::string_view key) const -> LocalizedText {
    return ParseLocalizedText(At(key), PathOf(key));
}

auto FieldReader::OptionalText(std::string_view key) const
    -> std::optional<LocalizedText> {
    if (!Has(key)) {
        return std::nullopt;
    }
    return Text(key);
}

auto FieldReader::Array(std::string_view key) const -> nlohmann::json const& {
    auto const& v = At(key);
    if (!v.is_array()) {
        throw SchemaError{PathOf(key), "expected an array, got " + TypeName(v)};
    }
    return v;
}

auto FieldReader::OptionalArray(std::string_view key) const
    -> nlohmann::json const& {
    if (!Has(key)) {
        return EmptyArray();
    }
    return Array(key);
}

auto FieldReader::Object(std::string_view key) const -> FieldReader {
    return FieldReader{At(key), PathOf(key)};
}

auto FieldReader::Point(std::string_view key) const -> GeoPoint {
    return ParseGeoPoint(At(key), PathOf(key));
}

auto ParseLocalizedText(nlohmann::json const& value, std::string const& path)
    -> LocalizedText {
    if (value.is_string()) {
        return LocalizedText{value.get<std::string>(), {}};
    }
    if (!value.is_object()) {
        throw SchemaError{path, "expected text or a locale map, got " +
                                    TypeName(value)};
    }
    LocalizedText text;
    bool has_default = false;
    for (auto const& [locale, entry] : value.items()) {
        if (!entry.is_string()) {
            throw SchemaError{JoinPath(path, locale), "expected a string"};
        }
        if (locale == "default") {
            text.text = entry.get<std::string>();
            has_default = true;
        }
        else {
            text.translations.emplace(locale, entry.get<std::string>());
        }
    }
    if (!has_default) {
        throw SchemaError{JoinPath(path, "default"),
                          "locale map needs a default entry"};
    }
    return text;
}

auto ParseGeoPoint(nlohmann::json const& value, std::string const& path)
    -> GeoPoint {
    if (!value.is_array() || value.size() < 2 || value.size() > 3) {
        throw SchemaError{path, "expected [lon, lat] or [lon, lat, height]"};
    }
    for (auto const& c : value) {
        if (!c.is_number()) {
            throw SchemaError{path, "coordinates must be numbers"};
        }
    }
    GeoPoint p{value[0].get<double>(), value[1].get<double>(),
               value.size() == 3 ? value[2].get<double>() : 0.0};
    if (!IsValidGeoPoint(p)) {
        throw SchemaError{
            path, fmt::format("({}, {}) outside lon [-180, 180] / lat "
                              "[-{}, {}] (order is lon, lat)",
                              p.lon, p.lat, kMercatorMaxLatitude,
                              kMercatorMaxLatitude)};
    }
    return p;
}

auto ParseSlug(nlohmann::json const& value, std::string const& path)
    -> std::string {
    if (!value.is_string()) {
        throw SchemaError{path, "expected an identifier string, got " +
                                    TypeName(value)};
    }
    auto s = value.get<std::string>();
    if (!IsSlug(s)) {
        throw SchemaError{path, fmt::format("\"{}\" is not a valid identifier "
                                            "(lowercase a-z, 0-9, '-', '_')",
                                            s)};
    }
    return s;
}

auto IssueFromError(Error const& e, std::string path, std::string_view code)
    -> Issue {
    std::string message = e.what();
    if (auto const* schema = dynamic_cast<SchemaError const*>(&e);
        schema != nullptr && !schema->field().empty()) {
        path = schema->field();
        auto const prefix = path + ": ";
        if (message.starts_with(prefix)) {
            message.erase(0, prefix.size());
        }
    }
    return Issue{Severity::kError, std::string{code}, std::move(path),
                 std::move(message)};
}

}  // namespace heritage::content::detail
