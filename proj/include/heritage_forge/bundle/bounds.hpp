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

#ifndef HERITAGE_FORGE_BUNDLE_BOUNDS_HPP
#define HERITAGE_FORGE_BUNDLE_BOUNDS_HPP

#include <span>

#include "heritage_forge/geo.hpp"

namespace heritage::bundle {

/// Smallest span (degrees) a fitted box may have along either axis.
inline constexpr double kMinBoundsSpan = 1e-4;

struct BoundingBox {
    double min_lon{};
    double min_lat{};
    double max_lon{};
    double max_lat{};

    friend auto operator==(BoundingBox const&, BoundingBox const&) -> bool =
        default;
};

/// Axis-aligned lon/lat box around `points`. Spans narrower than
/// kMinBoundsSpan are widened around their midpoint, then every side moves
/// out by `padding_fraction` of its axis span. The result is clamped to the
/// Web Mercator domain. Throws EmptyInputError for no points and
/// DomainError for a negative padding.
[[nodiscard]] auto FitBounds(std::span<GeoPoint const> points,
                             double padding_fraction) -> BoundingBox;

}  // namespace heritage::bundle

#endif  // HERITAGE_FORGE_BUNDLE_BOUNDS_HPP
