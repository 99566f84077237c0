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

#ifndef HERITAGE_FORGE_PANO_GEOMETRY_PANO_GEOMETRY_HPP
#define HERITAGE_FORGE_PANO_GEOMETRY_PANO_GEOMETRY_HPP

#include "heritage_forge/geo.hpp"

namespace heritage::pano {

/// Mean Earth radius (IUGG), meters.
inline constexpr double kMeanEarthRadius = 6371008.8;

/// Below this ground distance (meters) a target's direction is unstable.
inline constexpr double kMinTargetDistance = 0.5;

/// Great-circle distance in meters (haversine). Heights are ignored.
[[nodiscard]] auto HaversineDistance(GeoPoint const& a, GeoPoint const& b)
    -> double;

/// Initial great-circle bearing from `a` to `b`, degrees clockwise from
/// true north in [0, 360). Throws CoincidentError when a == b.
[[nodiscard]] auto InitialBearing(GeoPoint const& a, GeoPoint const& b)
    -> double;

/// Normalizes any finite angle into (-180, 180]. Idempotent.
[[nodiscard]] auto WrapYaw(double degrees) noexcept -> double;

/// Direction from the panorama camera to a geo target.
///
/// yaw = wrap(bearing - heading); pitch = atan2(target height - eye height,
/// ground distance), with eye height = position.height + camera_height.
/// Pitch uses a flat model over the great-circle distance, which is accurate
/// to well under 0.01 degrees at site scale. Throws TooCloseError when the
/// target is within kMinTargetDistance of the camera.
[[nodiscard]] auto AnnotationDirection(PanoPose const& pose,
                                       GeoPoint const& target) -> Direction;

/// Equirectangular texture coordinate; u spans the width, v runs down.
struct Uv {
    double u{};
    double v{};

    friend auto operator==(Uv const&, Uv const&) -> bool = default;
};

/// u = 0.5 + yaw/360, v = 0.5 - pitch/180. yaw = 180 lands on u = 1.
/// Throws DomainError for directions outside the valid ranges.
[[nodiscard]] auto DirectionToUv(Direction const& d) -> Uv;

/// Inverse of DirectionToUv; u = 0 maps to yaw 180 (the seam belongs to the
/// right edge). Throws DomainError for u or v outside [0, 1].
[[nodiscard]] auto UvToDirection(Uv const& uv) -> Direction;

}  // namespace heritage::pano

#endif  // HERITAGE_FORGE_PANO_GEOMETRY_PANO_GEOMETRY_HPP
