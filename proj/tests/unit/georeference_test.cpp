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

#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "heritage_forge/errors.hpp"
#include "heritage_forge/georeference/georeference.hpp"

namespace georef = heritage::georef;
using heritage::GeoPoint;
using heritage::GroundControlPoint;
using heritage::PixelExtent;
using heritage::PixelPoint;

namespace {

// Reference values below were evaluated at 40 significant digits with
// mpmath, independently of this code.
constexpr double kXAt180 = 20037508.34278924307658840888;
constexpr double kSoriaX = -274959.1422593857244398520551962746742091239;
constexpr double kSoriaY = 5126588.581922750636617895337741583024394718;
constexpr double kLonOf100m = 0.0008983152841195214351275012564657229898387;
constexpr double kLatOfMinus50m = -0.0004491576420551602723345646651853438732937;

auto GcpAt(double px, double py, georef::PlanePoint target) -> GroundControlPoint {
    return {PixelPoint{px, py}, georef::WebMercatorToLonLat(target)};
}

}  // namespace

TEST_CASE("forward projection") {
    auto const origin = georef::LonLatToWebMercator({0, 0, 0});
    CHECK(origin.x == 0.0);
    CHECK(origin.y == 0.0);

    auto const edge = georef::LonLatToWebMercator({180, 0, 0});
    CHECK(edge.x == doctest::Approx(kXAt180).epsilon(1e-15));
    CHECK(edge.y == 0.0);

    auto const soria = georef::LonLatToWebMercator({-2.47, 41.77, 0});
    CHECK(std::abs(soria.x - kSoriaX) < 1e-6);
    CHECK(std::abs(soria.y - kSoriaY) < 1e-6);
}

TEST_CASE("forward projection rejects points outside the domain") {
    CHECK_THROWS_AS(georef::LonLatToWebMercator({0, 85.06, 0}), heritage::DomainError);
    CHECK_THROWS_AS(georef::LonLatToWebMercator({0, -89, 0}), heritage::DomainError);
    CHECK_THROWS_AS(georef::LonLatToWebMercator({180.5, 0, 0}), heritage::DomainError);
    CHECK_THROWS_AS(georef::LonLatToWebMercator({NAN, 0, 0}), heritage::DomainError);
    CHECK_NOTHROW(georef::LonLatToWebMercator({-180, heritage::kMercatorMaxLatitude, 0}));
}

TEST_CASE("inverse projection") {
    auto const origin = georef::WebMercatorToLonLat({0, 0});
    CHECK(origin.lon == 0.0);
    CHECK(origin.lat == 0.0);

    auto const edge = georef::WebMercatorToLonLat({kXAt180, 0});
    CHECK(edge.lon == doctest::Approx(180.0).epsilon(1e-15));

    // The square's corner sits 0.28 m beyond R*pi at the maximum latitude.
    CHECK_NOTHROW(georef::WebMercatorToLonLat({0, kXAt180 + 0.5}));
    CHECK_THROWS_AS(georef::WebMercatorToLonLat({0, kXAt180 + 2.0}), heritage::DomainError);
    CHECK_THROWS_AS(georef::WebMercatorToLonLat({kXAt180 + 2.0, 0}), heritage::DomainError);
}

TEST_CASE("projection round trip on random points") {
    std::mt19937_64 rng{20260101};
    std::uniform_real_distribution<double> lon{-180.0, 180.0};
    std::uniform_real_distribution<double> lat{-heritage::kMercatorMaxLatitude,
                                               heritage::kMercatorMaxLatitude};
    double worst = 0.0;
    for (int i = 0; i < 2000; ++i) {
        GeoPoint const g{lon(rng), lat(rng), 0.0};
        auto const back = georef::WebMercatorToLonLat(georef::LonLatToWebMercator(g));
        worst = std::max({worst, std::abs(back.lon - g.lon), std::abs(back.lat - g.lat)});
    }
    CHECK(worst < 1e-9);
}

TEST_CASE("affine transform invariants") {
    CHECK_THROWS_AS(georef::AffineTransform::FromCoefficients(1, 2, 0, 2, 4, 0),
                    heritage::SingularError);
    CHECK_THROWS_AS(georef::AffineTransform::FromCoefficients(0, 0, 5, 0, 0, 5),
                    heritage::SingularError);
    CHECK_THROWS_AS(georef::AffineTransform::FromCoefficients(1, 0, NAN, 0, 1, 0),
                    heritage::SingularError);

    auto const t = georef::AffineTransform::FromCoefficients(2, 0.5, 10, -0.25, -3, 7);
    CHECK(t.Determinant() == doctest::Approx(2 * -3 - 0.5 * -0.25));
    auto const p = t.Apply({4, 2});
    CHECK(p.x == doctest::Approx(2 * 4 + 0.5 * 2 + 10));
    CHECK(p.y == doctest::Approx(-0.25 * 4 - 3 * 2 + 7));
    CHECK(georef::AffineTransform::Identity().Apply({3, 4}) == georef::PlanePoint{3, 4});
}

TEST_CASE("fit recovers the identity from three consistent points") {
    std::vector<GroundControlPoint> const gcps{
        GcpAt(0, 0, {0, 0}), GcpAt(100, 0, {100, 0}), GcpAt(0, 100, {0, 100})};
    auto const fit = georef::FitAffine(gcps);
    auto const c = fit.transform.Coefficients();
    std::array<double, 6> const identity{1, 0, 0, 0, 1, 0};
    for (std::size_t i = 0; i < 6; ++i) {
        CHECK(c[i] == doctest::Approx(identity[i]).epsilon(1e-9));
    }
    CHECK(fit.rmse < 1e-6);
    CHECK(fit.residuals.size() == 3);
}

TEST_CASE("fit recovers a known transform from four noiseless points") {
    auto const truth = georef::AffineTransform::FromCoefficients(
        0.42, 0.013, -274900.0, -0.011, -0.41, 5126600.0);
    std::vector<GroundControlPoint> gcps;
    for (auto const& px : {PixelPoint{10, 20}, PixelPoint{1190, 15},
                           PixelPoint{1180, 880}, PixelPoint{25, 870}}) {
        gcps.push_back(GcpAt(px.x, px.y, truth.Apply(px)));
    }
    auto const fit = georef::FitAffine(gcps);
    auto const got = fit.transform.Coefficients();
    auto const want = truth.Coefficients();
    for (std::size_t i = 0; i < 6; ++i) {
        CHECK(std::abs(got[i] - want[i]) <= 1e-9 * std::abs(want[i]));
    }
    CHECK(fit.rmse < 1e-6);
}

TEST_CASE("fit residuals of a perturbed square") {
    // Moving one corner of a square by 4 m adds a bilinear term that an affine
    // map cannot absorb; it is split evenly as +-1 m over the four corners.
    std::vector<GroundControlPoint> const gcps{
        GcpAt(0, 0, {1000, 2000}), GcpAt(100, 0, {1100, 2000}),
        GcpAt(100, 100, {1104, 1900}), GcpAt(0, 100, {1000, 1900})};
    auto const fit = georef::FitAffine(gcps);
    CHECK(fit.rmse == doctest::Approx(1.0).epsilon(1e-6));
    for (double r : fit.residuals) {
        CHECK(r == doctest::Approx(1.0).epsilon(1e-6));
    }
}

TEST_CASE("fit rejects degenerate control points") {
    std::vector<GroundControlPoint> two{GcpAt(0, 0, {0, 0}), GcpAt(1, 1, {1, 1})};
    CHECK_THROWS_AS(georef::FitAffine(two), heritage::DegenerateError);

    std::vector<GroundControlPoint> const collinear{
        GcpAt(0, 0, {0, 0}), GcpAt(50, 50, {50, 10}), GcpAt(100, 100, {70, 90})};
    CHECK_THROWS_AS(georef::FitAffine(collinear), heritage::DegenerateError);

    std::vector<GroundControlPoint> const same{
        GcpAt(5, 5, {0, 0}), GcpAt(5, 5, {50, 10}), GcpAt(5, 5, {70, 90})};
    CHECK_THROWS_AS(georef::FitAffine(same), heritage::DegenerateError);
}

TEST_CASE("fit checks pixels against the image extent") {
    std::vector<GroundControlPoint> const gcps{
        GcpAt(0, 0, {0, 0}), GcpAt(120, 0, {120, 0}), GcpAt(0, 50, {0, 50})};
    CHECK_NOTHROW(georef::FitAffine(gcps, PixelExtent{120, 50}));
    CHECK_THROWS_AS(georef::FitAffine(gcps, PixelExtent{100, 50}), heritage::DomainError);
}

TEST_CASE("overlay corners of an identity-scale transform") {
    auto const t = georef::AffineTransform::FromCoefficients(1, 0, 0, 0, -1, 0);
    auto const c = georef::OverlayCorners(t, 100, 50);
    CHECK(c[0].lon == 0.0);
    CHECK(c[0].lat == 0.0);
    CHECK(c[1].lon == doctest::Approx(kLonOf100m).epsilon(1e-14));
    CHECK(c[1].lat == 0.0);
    CHECK(c[2].lon == doctest::Approx(kLonOf100m).epsilon(1e-14));
    CHECK(c[2].lat == doctest::Approx(kLatOfMinus50m).epsilon(1e-14));
    CHECK(c[3].lon == 0.0);
    CHECK(c[3].lat == doctest::Approx(kLatOfMinus50m).epsilon(1e-14));
}

TEST_CASE("translated overlay keeps the image rectangle") {
    auto const t = georef::AffineTransform::Translation(-274959.0, 5126588.0);
    auto const c = georef::OverlayCorners(t, 640, 480);
    std::array<georef::PlanePoint, 4> plane{};
    for (std::size_t i = 0; i < 4; ++i) {
        plane[i] = georef::LonLatToWebMercator(c[i]);
    }
    auto const side = [&](std::size_t a, std::size_t b) {
        return std::hypot(plane[b].x - plane[a].x, plane[b].y - plane[a].y);
    };
    CHECK(side(0, 1) == doctest::Approx(640).epsilon(1e-9));
    CHECK(side(1, 2) == doctest::Approx(480).epsilon(1e-9));
    CHECK(side(2, 3) == doctest::Approx(640).epsilon(1e-9));
    CHECK(side(3, 0) == doctest::Approx(480).epsilon(1e-9));
    CHECK(std::abs(georef::SignedArea(plane)) == doctest::Approx(640.0 * 480.0).epsilon(1e-9));
}

TEST_CASE("shoelace area") {
    std::array<georef::PlanePoint, 4> const ccw{{{0, 0}, {2, 0}, {2, 3}, {0, 3}}};
    CHECK(georef::SignedArea(ccw) == 6.0);
    std::array<georef::PlanePoint, 4> const cw{{{0, 0}, {0, 3}, {2, 3}, {2, 0}}};
    CHECK(georef::SignedArea(cw) == -6.0);
}
