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

#include "heritage_forge/georeference/georeference.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "fmt/format.h"
#include "heritage_forge/errors.hpp"

namespace heritage::georef {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;
constexpr double kRadToDeg = 180.0 / std::numbers::pi;

// Relative pivot threshold below which centered pixel coordinates are
// treated as rank deficient (collinear).
constexpr double kCollinearThreshold = 1e-10;

auto InPlaneBounds(PlanePoint const& p) noexcept -> bool {
    constexpr double kLimit = kMercatorHalfExtent + kPlaneBoundsSlack;
    return std::isfinite(p.x) && std::isfinite(p.y) && std::abs(p.x) <= kLimit &&
           std::abs(p.y) <= kLimit;
}

}  // namespace

auto LonLatToWebMercator(GeoPoint const& p) -> PlanePoint {
    RequireValidGeoPoint(p, "web mercator projection");
    double const lambda = p.lon * kDegToRad;
    double const phi = p.lat * kDegToRad;
    // atanh(sin(phi)) equals ln(tan(pi/4 + phi/2)) and is exact at the
    // equator.
    return PlanePoint{kEarthRadius * lambda,
                      kEarthRadius * std::atanh(std::sin(phi))};
}

auto WebMercatorToLonLat(PlanePoint const& p) -> GeoPoint {
    if (!InPlaneBounds(p)) {
        throw DomainError{fmt::format(
            "plane point ({}, {}) outside the Web Mercator square", p.x, p.y)};
    }
    // atan(sinh(.)) is the Gudermannian; better conditioned near the equator
    // than 2*atan(exp(.)) - pi/2.
    return GeoPoint{p.x / kEarthRadius * kRadToDeg,
                    std::atan(std::sinh(p.y / kEarthRadius)) * kRadToDeg, 0.0};
}

auto AffineTransform::FromCoefficients(double a, double b, double c, double d,
                                       double e, double f) -> AffineTransform {
    std::array<double, 6> const coeffs{a, b, c, d, e, f};
    for (double v : coeffs) {
        if (!std::isfinite(v)) {
            throw SingularError{"affine coefficients must be finite"};
        }
    }
    double const det = a * e - b * d;
    double const scale = std::abs(a * e) + std::abs(b * d);
    if (det == 0.0 || std::abs(det) <= 1e-12 * scale) {
        throw SingularError{
            fmt::format("affine transform is not invertible (det = {})", det)};
    }
    return AffineTransform{coeffs};
}

auto AffineTransform::Identity() -> AffineTransform {
    return AffineTransform{{1.0, 0.0, 0.0, 0.0, 1.0, 0.0}};
}

auto AffineTransform::Translation(double dx, double dy) -> AffineTransform {
    return AffineTransform{{1.0, 0.0, dx, 0.0, 1.0, dy}};
}

auto AffineTransform::Apply(PixelPoint const& p) const noexcept -> PlanePoint {
    auto const& [a, b, c, d, e, f] = coefficients_;
    return PlanePoint{a * p.x + b * p.y + c, d * p.x + e * p.y + f};
}

auto AffineTransform::Determinant() const noexcept -> double {
    return coefficients_[0] * coefficients_[4] -
           coefficients_[1] * coefficients_[3];
}

auto FitAffine(std::span<GroundControlPoint const> gcps,
               std::optional<PixelExtent> image) -> FitReport {
    auto const n = static_cast<Eigen::Index>(gcps.size());
    if (n < 3) {
        throw DegenerateError{fmt::format(
            "affine fit needs at least 3 ground control points, got {}", n)};
    }
    if (image) {
        for (std::size_t i = 0; i < gcps.size(); ++i) {
            auto const& px = gcps[i].pixel;
            if (!(px.x >= 0.0 && px.x <= image->width && px.y >= 0.0 &&
                  px.y <= image->height)) {
                throw DomainError{fmt::format(
                    "gcp {}: pixel ({}, {}) outside the {}x{} image", i, px.x,
                    px.y, image->width, image->height)};
            }
        }
    }

    std::vector<PlanePoint> targets;
    targets.reserve(gcps.size());
    for (auto const& g : gcps) {
        targets.push_back(LonLatToWebMercator(g.geo));
    }

    double mean_px = 0.0;
    double mean_py = 0.0;
    double mean_tx = 0.0;
    double mean_ty = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        mean_px += gcps[i].pixel.x;
        mean_py += gcps[i].pixel.y;
        mean_tx += targets[i].x;
        mean_ty += targets[i].y;
    }
    auto const count = static_cast<double>(n);
    mean_px /= count;
    mean_py /= count;
    mean_tx /= count;
    mean_ty /= count;

    double scale = 0.0;
    for (auto const& g : gcps) {
        scale = std::max({scale, std::abs(g.pixel.x - mean_px),
                          std::abs(g.pixel.y - mean_py)});
    }
    if (!(scale > 0.0) || !std::isfinite(scale)) {
        throw DegenerateError{"ground control point pixels coincide"};
    }

    Eigen::MatrixXd design(n, 2);
    Eigen::MatrixXd rhs(n, 2);
    for (Eigen::Index i = 0; i < n; ++i) {
        design(i, 0) = (gcps[i].pixel.x - mean_px) / scale;
        design(i, 1) = (gcps[i].pixel.y - mean_py) / scale;
        rhs(i, 0) = targets[i].x - mean_tx;
        rhs(i, 1) = targets[i].y - mean_ty;
    }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
    qr.setThreshold(kCollinearThreshold);
    if (qr.rank() < 2) {
        throw DegenerateError{"ground control point pixels are collinear"};
    }
    Eigen::MatrixXd const solution = qr.solve(rhs);

    double const a = solution(0, 0) / scale;
    double const b = solution(1, 0) / scale;
    double const d = solution(0, 1) / scale;
    double const e = solution(1, 1) / scale;
    double const c = mean_tx - a * mean_px - b * mean_py;
    double const f = mean_ty - d * mean_px - e * mean_py;

    FitReport report{AffineTransform::FromCoefficients(a, b, c, d, e, f), {}, 0.0};
    report.residuals.reserve(gcps.size());
    double sum_sq = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        auto const fitted = report.transform.Apply(gcps[i].pixel);
        double const r =
            std::hypot(fitted.x - targets[i].x, fitted.y - targets[i].y);
        report.residuals.push_back(r);
        sum_sq += r * r;
    }
    report.rmse = std::sqrt(sum_sq / count);
    return report;
}

auto OverlayCorners(AffineTransform const& transform, double width,
                    double height) -> std::array<GeoPoint, 4> {
    if (!(width > 0.0) || !(height > 0.0)) {
        throw DomainError{fmt::format(
            "overlay image size must be positive, got {}x{}", width, height)};
    }
    std::array<PixelPoint, 4> const pixels{PixelPoint{0.0, 0.0},
                                           PixelPoint{width, 0.0},
                                           PixelPoint{width, height},
                                           PixelPoint{0.0, height}};
    std::array<GeoPoint, 4> corners{};
    for (std::size_t i = 0; i < pixels.size(); ++i) {
        corners[i] = WebMercatorToLonLat(transform.Apply(pixels[i]));
    }
    return corners;
}

auto SignedArea(std::span<PlanePoint const> polygon) noexcept -> double {
    double twice = 0.0;
    for (std::size_t i = 0; i < polygon.size(); ++i) {
        auto const& p = polygon[i];
        auto const& q = polygon[(i + 1) % polygon.size()];
        twice += p.x * q.y - q.x * p.y;
    }
    return twice / 2.0;
}

}  // namespace heritage::georef
