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

#ifndef HERITAGE_FORGE_GEOREFERENCE_GEOREFERENCE_HPP
#define HERITAGE_FORGE_GEOREFERENCE_GEOREFERENCE_HPP

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "heritage_forge/geo.hpp"

namespace heritage::georef {

/// WGS84 semi-major axis, used as the sphere radius by EPSG:3857.
inline constexpr double kEarthRadius = 6378137.0;
/// R * pi: easting of the antimeridian.
inline constexpr double kMercatorHalfExtent = 20037508.342789244;
/// Slack on plane bounds; lat 85.051129 projects ~0.28 m past R * pi.
inline constexpr double kPlaneBoundsSlack = 1.0;

/// Spherical Web Mercator coordinates in meters.
struct PlanePoint {
    double x{};
    double y{};

    friend auto operator==(PlanePoint const&, PlanePoint const&) -> bool =
        default;
};

/// x = R * lon, y = R * ln(tan(pi/4 + lat/2)), angles in radians.
/// Throws DomainError outside the Web Mercator band.
[[nodiscard]] auto LonLatToWebMercator(GeoPoint const& p) -> PlanePoint;

/// Inverse of LonLatToWebMercator; height is 0. Throws DomainError when the
/// point lies outside the projected square.
[[nodiscard]] auto WebMercatorToLonLat(PlanePoint const& p) -> GeoPoint;

/// Pixel (y down) to plane: (a*px + b*py + c, d*px + e*py + f).
class AffineTransform {
  public:
    /// Throws SingularError when a*e - b*d vanishes.
    [[nodiscard]] static auto FromCoefficients(double a, double b, double c,
                                               double d, double e, double f)
        -> AffineTransform;
    [[nodiscard]] static auto Identity() -> AffineTransform;
    [[nodiscard]] static auto Translation(double dx, double dy)
        -> AffineTransform;

    [[nodiscard]] auto Apply(PixelPoint const& p) const noexcept -> PlanePoint;
    [[nodiscard]] auto Determinant() const noexcept -> double;
    /// {a, b, c, d, e, f}
    [[nodiscard]] auto Coefficients() const noexcept -> std::array<double, 6> {
        return coefficients_;
    }

    friend auto operator==(AffineTransform const&, AffineTransform const&)
        -> bool = default;

  private:
    explicit AffineTransform(std::array<double, 6> c) : coefficients_{c} {}

    std::array<double, 6> coefficients_;
};

struct FitReport {
    AffineTransform transform;
    // Plane distance |A(pixel_i) - mercator(geo_i)| per GCP, in input order.
    std::vector<double> residuals;
    double rmse{};
};

/// Least-squares affine fit from GCP pixels to projected GCP positions.
///
/// Pixels are centered and scaled before an orthogonal (QR) solve. When
/// `image` is given every pixel must fall inside [0, width] x [0, height].
/// Throws DegenerateError (fewer than 3 GCPs, collinear pixels),
/// SingularError (fitted transform not invertible) and DomainError.
[[nodiscard]] auto FitAffine(std::span<GroundControlPoint const> gcps,
                             std::optional<PixelExtent> image = std::nullopt)
    -> FitReport;

/// Geographic corners of a `width` x `height` image placed by `transform`,
/// ordered NW, NE, SE, SW (pixel corners (0,0), (w,0), (w,h), (0,h)).
/// Throws DomainError when a corner leaves the Mercator square.
[[nodiscard]] auto OverlayCorners(AffineTransform const& transform,
                                  double width, double height)
    -> std::array<GeoPoint, 4>;

/// Signed shoelace area of a polygon in plane coordinates (m^2).
[[nodiscard]] auto SignedArea(std::span<PlanePoint const> polygon) noexcept
    -> double;

}  // namespace heritage::georef

#endif  // HERITAGE_FORGE_GEOREFERENCE_GEOREFERENCE_HPP
