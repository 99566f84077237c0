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

#include <cmath>
#include <string>

#include "fmt/format.h"
#include "heritage_forge/diagnostics.hpp"
#include "heritage_forge/errors.hpp"
#include "heritage_forge/geo.hpp"

namespace heritage {

auto IsValidGeoPoint(GeoPoint const& p) noexcept -> bool {
    return std::isfinite(p.lon) && std::isfinite(p.lat) &&
           std::isfinite(p.height) && p.lon >= -180.0 && p.lon <= 180.0 &&
           p.lat >= -kMercatorMaxLatitude && p.lat <= kMercatorMaxLatitude;
}

void RequireValidGeoPoint(GeoPoint const& p, std::string_view where) {
    if (!IsValidGeoPoint(p)) {
        throw DomainError{fmt::format(
            "{}: ({}, {}) outside lon [-180, 180] / lat [-{}, {}]", where,
            p.lon, p.lat, kMercatorMaxLatitude, kMercatorMaxLatitude)};
    }
}

auto IsValidDirection(Direction const& d) noexcept -> bool {
    return d.yaw > -180.0 && d.yaw <= 180.0 && d.pitch >= -90.0 &&
           d.pitch <= 90.0;
}

ReferenceError::ReferenceError(std::vector<std::string> missing)
    : Error{"ReferenceError",
            fmt::format("undeclared reference(s): {}",
                        fmt::join(missing, ", "))},
      missing_{std::move(missing)} {}

auto ToString(GlbErrorKind kind) noexcept -> char const* {
    switch (kind) {
        case GlbErrorKind::kBadMagic:
            return "BadMagic";
        case GlbErrorKind::kUnsupportedVersion:
            return "UnsupportedVersion";
        case GlbErrorKind::kTruncatedFile:
            return "TruncatedFile";
        case GlbErrorKind::kChunkOrderError:
            return "ChunkOrderError";
        case GlbErrorKind::kAlignmentError:
            return "AlignmentError";
        case GlbErrorKind::kJsonChunkError:
            return "JsonChunkError";
    }
    return "GlbError";
}

auto ToString(ImageErrorKind kind) noexcept -> char const* {
    switch (kind) {
        case ImageErrorKind::kUnknownFormat:
            return "UnknownFormat";
        case ImageErrorKind::kCorruptHeader:
            return "CorruptHeader";
    }
    return "ImageError";
}

auto ToString(Severity severity) noexcept -> char const* {
    return severity == Severity::kError ? "error" : "warning";
}

}  // namespace heritage
