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

#ifndef HERITAGE_FORGE_BUNDLE_COMPILER_HPP
#define HERITAGE_FORGE_BUNDLE_COMPILER_HPP

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "heritage_forge/asset_validate/asset_validate.hpp"
#include "heritage_forge/diagnostics.hpp"
#include "json.hpp"

namespace heritage::bundle {

/// RMSE (plane meters) above which a GCP fit is reported as a warning.
inline constexpr double kRmseWarnMeters = 15.0;
/// RMSE above which a GCP fit is rejected.
inline constexpr double kRmseErrorMeters = 100.0;
inline constexpr std::uint64_t kLargeGlbBytes = 50ULL * 1024 * 1024;
inline constexpr std::uint32_t kLargePanoramaPixels = 8192;
/// Padding applied to marker + related-location zoom-out boxes.
inline constexpr double kZoomOutPadding = 0.1;

struct CompileOptions {
    std::uint32_t max_preview{assets::kDefaultPreviewMaxDim};
    // 0 picks the hardware concurrency.
    unsigned jobs{0};
};

struct CompileStats {
    std::size_t layers{};
    std::map<std::string, std::size_t> markers;  // per marker kind
    std::size_t assets{};
    std::uint64_t total_bytes{};  // bytes written under assets/
};

struct CompileReport {
    std::vector<Issue> errors;
    std::vector<Issue> warnings;
    CompileStats stats;
    // "<layer_id>/<asset_id>" -> RMSE in plane meters, GCP overlays only.
    std::map<std::string, double> georef_rmse;
    // Set when the failure was the output filesystem, not the content.
    bool io_failure{false};

    [[nodiscard]] auto ok() const noexcept -> bool { return errors.empty(); }
    void Add(Issue issue);

    [[nodiscard]] auto ToJson() const -> nlohmann::json;
    /// Human-readable multi-line summary.
    [[nodiscard]] auto ToText() const -> std::string;
};

struct Bundle {
    std::filesystem::path root;
    nlohmann::json site_index;
    std::map<std::string, nlohmann::json> layer_indices;
    // asset_id -> hashed file name under assets/
    std::map<std::string, std::string> asset_map;
};

struct CompileResult {
    CompileReport report;
    std::optional<Bundle> bundle;
};

/// Validates `site_dir` and, when clean, writes the bundle to `out_dir`
/// (site.json, layers/<id>.json, assets/<hash>.<ext>). The bundle is staged
/// in a sibling temporary directory and renamed into place, so a failed
/// compile leaves `out_dir` as it was. Errors are collected, not fail-fast.
[[nodiscard]] auto Compile(std::filesystem::path const& site_dir,
                           std::filesystem::path const& out_dir,
                           CompileOptions const& options = {})
    -> CompileResult;

/// Runs every check Compile does without writing anything.
[[nodiscard]] auto Validate(std::filesystem::path const& site_dir,
                            CompileOptions const& options = {})
    -> CompileReport;

/// Rounds to 9 significant digits so the JSON writer emits a stable,
/// platform-independent shortest form.
[[nodiscard]] auto PinFloat(double value) -> double;

/// Canonical index text: sorted keys, 2-space indent, trailing newline.
[[nodiscard]] auto DumpIndex(nlohmann::json const& doc) -> std::string;

}  // namespace heritage::bundle

#endif  // HERITAGE_FORGE_BUNDLE_COMPILER_HPP
