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

#ifndef HERITAGE_FORGE_GEO_HPP
#define HERITAGE_FORGE_GEO_HPP

#include <string_view>

namespace heritage {

/// Largest latitude representable in spherical Web Mercator (degrees).
inline constexpr double kMercatorMaxLatitude = 85.051129;

/// WGS84 position, lon/lat in degrees (east/north positive). `height` is in
/// meters above local ground, not above the ellipsoid.
struct GeoPoint {
    double lon{};
    double lat{};
    double height{};

    friend auto operator==(GeoPoint const&, GeoPoint const&) -> bool = default;
};

/// True when lon is in [-180, 180] and lat inside the Web Mercator band.
[[nodiscard]] auto IsValidGeoPoint(GeoPoint const& p) noexcept -> bool;

/// Throws DomainError naming `where` if `p` is outside the valid domain.
void RequireValidGeoPoint(GeoPoint const& p, std::string_view where);

/// Image-space position in source pixels; y grows downwards.
struct PixelPoint {
    double x{};
    double y{};

    friend auto operator==(PixelPoint const&, PixelPoint const&) -> bool =
        default;
};

struct PixelExtent {
    double width{};
    double height{};
};

struct GroundControlPoint {
    PixelPoint pixel;
    GeoPoint geo;

    friend auto operator==(GroundControlPoint const&,
                           GroundControlPoint const&) -> bool = default;
};

/// View direction inside a panorama. yaw in (-180, 180], 0 at the camera
/// heading and positive to the right; pitch in [-90, 90], positive up.
struct Direction {
    double yaw{};
    double pitch{};

    friend auto operator==(Direction const&, Direction const&) -> bool =
        default;
};

[[nodiscard]] auto IsValidDirection(Direction const& d) noexcept -> bool;

inline constexpr double kDefaultCameraHeight = 1.6;

/// Where a panorama was captured. `heading` is the compass bearing (degrees
/// clockwise from true north) that appears at the horizontal image center.
struct PanoPose {
    GeoPoint position;
    double camera_height{kDefaultCameraHeight};
    double heading{};

    friend auto operator==(PanoPose const&, PanoPose const&) -> bool = default;
};

}  // namespace heritage

#endif  // HERITAGE_FORGE_GEO_HPP
