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

#ifndef HERITAGE_FORGE_DIAGNOSTICS_HPP
#define HERITAGE_FORGE_DIAGNOSTICS_HPP

#include <string>
#include <string_view>

namespace heritage {

enum class Severity { kError, kWarning };

[[nodiscard]] auto ToString(Severity severity) noexcept -> char const*;

/// A single finding collected while compiling or validating a site.
struct Issue {
    Severity severity{Severity::kError};
    std::string code;
    std::string path;
    std::string message;

    friend auto operator==(Issue const&, Issue const&) -> bool = default;
};

/// Stable report codes. Errors block a compile, warnings never do.
namespace codes {
inline constexpr std::string_view kSiteNotFound = "E001";
inline constexpr std::string_view kManifestSyntax = "E002";
inline constexpr std::string_view kSchema = "E003";
inline constexpr std::string_view kDanglingReference = "E004";
inline constexpr std::string_view kGeoJson = "E005";
inline constexpr std::string_view kDuplicateId = "E006";
inline constexpr std::string_view kMissingFile = "E007";
inline constexpr std::string_view kInvalidGlb = "E008";
inline constexpr std::string_view kInvalidImage = "E009";
inline constexpr std::string_view kFormatMismatch = "E010";
inline constexpr std::string_view kNotEquirectangular = "E011";
inline constexpr std::string_view kGeoreference = "E012";
inline constexpr std::string_view kGeoreferenceRmse = "E013";
inline constexpr std::string_view kAnnotation = "E014";
inline constexpr std::string_view kGcpOutOfBounds = "E016";
inline constexpr std::string_view kOutputIo = "E017";
inline constexpr std::string_view kInvalidVideo = "E018";

inline constexpr std::string_view kRmseHigh = "W001";
inline constexpr std::string_view kNearlyEquirectangular = "W002";
inline constexpr std::string_view kLargeGlb = "W003";
inline constexpr std::string_view kLargePanorama = "W004";
inline constexpr std::string_view kFocusTargetMissing = "W005";
inline constexpr std::string_view kUnusedAsset = "W007";
}  // namespace codes

}  // namespace heritage

#endif  // HERITAGE_FORGE_DIAGNOSTICS_HPP
