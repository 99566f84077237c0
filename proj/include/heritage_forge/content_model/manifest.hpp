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

#ifndef HERITAGE_FORGE_CONTENT_MODEL_MANIFEST_HPP
#define HERITAGE_FORGE_CONTENT_MODEL_MANIFEST_HPP

#include <filesystem>
#include <optional>
#include <vector>

#include "heritage_forge/content_model/types.hpp"
#include "heritage_forge/diagnostics.hpp"
#include "json.hpp"

namespace heritage::content {

inline constexpr char const* kManifestFileName = "site.json";

/// Loads site.json and every layer's marker file, checking all manifest
/// invariants. Throws SyntaxError, SchemaError, GeoJsonError,
/// DuplicateIdError or ReferenceError (listing every dangling id).
[[nodiscard]] auto LoadManifest(std::filesystem::path const& path)
    -> SiteManifest;

struct ManifestLoad {
    // Empty when the manifest could not be read or parsed at all.
    std::optional<SiteManifest> manifest;
    std::vector<Issue> issues;

    [[nodiscard]] auto HasErrors() const noexcept -> bool;
};

/// Collecting variant used by the compiler: keeps going after recoverable
/// problems so that one run reports all of them. Elements that fail
/// validation are dropped from the returned manifest.
[[nodiscard]] auto LoadManifestCollect(std::filesystem::path const& path)
    -> ManifestLoad;

/// Manifest document for `site`. Marker files are referenced, not inlined.
[[nodiscard]] auto ManifestToJson(SiteManifest const& site) -> nlohmann::json;

[[nodiscard]] auto LocalizedTextToJson(LocalizedText const& text)
    -> nlohmann::json;
[[nodiscard]] auto GeoPointToJson(GeoPoint const& p) -> nlohmann::json;

}  // namespace heritage::content

#endif  // HERITAGE_FORGE_CONTENT_MODEL_MANIFEST_HPP
