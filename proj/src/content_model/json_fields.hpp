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

#ifndef HERITAGE_FORGE_SRC_CONTENT_MODEL_JSON_FIELDS_HPP
#define HERITAGE_FORGE_SRC_CONTENT_MODEL_JSON_FIELDS_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "heritage_forge/content_model/types.hpp"
#include "heritage_forge/diagnostics.hpp"
#include "heritage_forge/errors.hpp"
#include "heritage_forge/geo.hpp"
#include "json.hpp"

namespace heritage::content::detail {

[[nodiscard]] auto JoinPath(std::string_view base, std::string_view key)
    -> std::string;
[[nodiscard]] auto IndexPath(std::string_view base, std::size_t index)
    -> std::string;

/// Typed accessors over one JSON object; every failure is a SchemaError
/// carrying the full field path.
class FieldReader {
  public:
    FieldReader(nlohmann::json const& object, std::string path);

    [[nodiscard]] auto path() const noexcept -> std::string const& {
        return path_;
    }
    [[nodiscard]] auto PathOf(std::string_view key) const -> std::string {
        return JoinPath(path_, key);
    }
    [[nodiscard]] auto json() const noexcept -> nlohmann::json const& {
        return object_;
    }

    /// Present and not null.
    [[nodiscard]] auto Has(std::string_view key) const -> bool;
    [[nodiscard]] auto At(std::string_view key) const -> nlohmann::json const&;

    [[nodiscard]] auto String(std::string_view key) const -> std::string;
    [[nodiscard]] auto OptionalString(std::string_view key) const
        -> std::optional<std::string>;
    [[nodiscard]] auto Slug(std::string_view key) const -> std::string;
    [[nodiscard]] auto Int(std::string_view key) const -> int;
    [[nodiscard]] auto OptionalInt(std::string_view key) const
        -> std::optional<int>;
    [[nodiscard]] auto Number(std::string_view key) const -> double;
    [[nodiscard]] auto OptionalNumber(std::string_view key) const
        -> std::optional<double>;
    [[nodiscard]] auto Text(std::string_view key) const -> LocalizedText;
    [[nodiscard]] auto OptionalText(std::string_view key) const
        -> std::optional<LocalizedText>;
    [[nodiscard]] auto Array(std::string_view key) const
        -> nlohmann::json const&;
    /// Empty array when absent.
    [[nodiscard]] auto OptionalArray(std::string_view key) const
        -> nlohmann::json const&;
    [[nodiscard]] auto Object(std::string_view key) const -> FieldReader;
    [[nodiscard]] auto Point(std::string_view key) const -> GeoPoint;

  private:
    nlohmann::json const& object_;
    std::string path_;
};

[[nodiscard]] auto ParseLocalizedText(nlohmann::json const& value,
                                      std::string const& path)
    -> LocalizedText;

/// [lon, lat] or [lon, lat, height]; range-checked.
[[nodiscard]] auto ParseGeoPoint(nlohmann::json const& value,
                                 std::string const& path) -> GeoPoint;

[[nodiscard]] auto ParseSlug(nlohmann::json const& value,
                             std::string const& path) -> std::string;

/// Error issue for `e`. Schema errors report their own field path, which
/// is then not repeated in the message.
[[nodiscard]] auto IssueFromError(Error const& e, std::string path,
                                  std::string_view code) -> Issue;

}  // namespace heritage::content::detail

#endif  // HERITAGE_FORGE_SRC_CONTENT_MODEL_JSON_FIELDS_HPP
