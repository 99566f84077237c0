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

#include "heritage_forge/pano_geometry/pano_geometry.hpp"

#include <cmath>
#include <numbers>

#include "fmt/format.h"
#include "heritage_forge/errors.hpp"

namespace heritage::pano {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;
constexpr double kRadToDeg = 180.0 / std::numbers::pi;

}  // namespace

auto HaversineDistance(GeoPoint const& a, GeoPoint const& b) -> double {
    double const phi1 = a.lat * kDegToRad;
    double const phi2 = b.lat * kDegToRad;
    double const dphi = (b.lat - a.lat) * kDegToRad;
    double const dlambda = (b.lon - a.lon) * kDegToRad;
    double const s_phi = std::sin(dphi / 2.0);
    double const s_lambda = std::sin(dlambda / 2.0);
    double const h =
        s_phi * s_phi + std::cos(phi1) * std::cos(phi2) * s_lambda * s_lambda;
    return 2.0 * kMeanEarthRadius * std::asin(std::min(1.0, std::sqrt(h)));
}

auto InitialBearing(GeoPoint const& a, GeoPoint const& b) -> double {
    if (a.lon == b.lon && a.lat == b.lat) {
        throw CoincidentError{fmt::format(
            "bearing undefined between coincident points ({}, {})", a.lon,
            a.lat)};
    }
    double const phi1 = a.lat * kDegToRad;
    double const phi2 = b.lat * kDegToRad;
    double const dlambda = (b.lon - a.lon) * kDegToRad;
    double const y = std::sin(dlambda) * std::cos(phi2);
    double const x = std::cos(phi1) * std::sin(phi2) -
                     std::sin(phi1) * std::cos(phi2) * std::cos(dlambda);
    double bearing = std::atan2(y, x) * kRadToDeg;
    if (bearing < 0.0) {
        bearing += 360.0;
    }
    // -0.0 and values that round up to 360 both belong at 0.
    if (bearing >= 360.0 || bearing == 0.0) {
        bearing = 0.0;
    }
    return bearing;
}

auto WrapYaw(double degrees) noexcept -> double {
    double r = std::fmod(degrees, 360.0);
    if (r <= -180.0) {
        r += 360.0;
    }
    else if (r > 180.0) {
        r -= 360.0;
    }
    return r;
}

auto AnnotationDirection(PanoPose const& pose, GeoPoint const& target)
    -> Direction {
    double const distance = HaversineDistance(pose.position, target);
    if (!(distance > kMinTargetDistance)) {
        throw TooCloseError{fmt::format(
            "annotation target is {:.3f} m from the camera (minimum {} m)",
            distance, kMinTargetDistance)};
    }
    double const bearing = InitialBearing(pose.position, target);
    double const eye = pose.position.height + pose.camera_height;
    return Direction{WrapYaw(bearing - pose.heading),
                     std::atan2(target.height - eye, distance) * kRadToDeg};
}

auto DirectionToUv(Direction const& d) -> Uv {
    if (!IsValidDirection(d)) {
        throw DomainError{fmt::format(
            "direction (yaw {}, pitch {}) outside (-180, 180] x [-90, 90]",
            d.yaw, d.pitch)};
    }
    return Uv{0.5 + d.yaw / 360.0, 0.5 - d.pitch / 180.0};
}

auto UvToDirection(Uv const& uv) -> Direction {
    if (!(uv.u >= 0.0 && uv.u <= 1.0 && uv.v >= 0.0 && uv.v <= 1.0)) {
        throw DomainError{
            fmt::format("uv ({}, {}) outside [0, 1] x [0, 1]", uv.u, uv.v)};
    }
    double yaw = (uv.u - 0.5) * 360.0;
    if (yaw <= -180.0) {
        yaw = 180.0;
    }
    return Direction{yaw, (0.5 - uv.v) * 180.0};
}

}  // namespace heritage::pano
