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

#include "heritage_forge/bundle/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "fmt/format.h"
#include "heritage_forge/errors.hpp"

namespace heritage::bundle {

namespace {

struct Span {
    double lo;
    double hi;
};

auto Widen(Span s, double padding) -> Span {
    if (s.hi - s.lo < kMinBoundsSpan) {
        double const mid = (s.lo + s.hi) / 2.0;
        s = Span{mid - kMinBoundsSpan / 2.0, mid + kMinBoundsSpan / 2.0};
    }
    double const pad = (s.hi - s.lo) * padding;
    return Span{s.lo - pad, s.hi + pad};
}

}  // namespace

auto FitBounds(std::span<GeoPoint const> points, double padding_fraction)
    -> BoundingBox {
    if (points.empty()) {
        throw EmptyInputError{"cannot fit bounds around zero points"};
    }
    if (!(padding_fraction >= 0.0) || !std::isfinite(padding_fraction)) {
        throw DomainError{
            fmt::format("padding fraction must be >= 0, got {}",
                        padding_fraction)};
    }
    Span lon{points.front().lon, points.front().lon};
    Span lat{points.front().lat, points.front().lat};
    for (auto const& p : points) {
        RequireValidGeoPoint(p, "fit_bounds");
        lon = Span{std::min(lon.lo, p.lon), std::max(lon.hi, p.lon)};
        lat = Span{std::min(lat.lo, p.lat), std::max(lat.hi, p.lat)};
    }
    lon = Widen(lon, padding_fraction);
    lat = Widen(lat, padding_fraction);
    return BoundingBox{std::max(lon.lo, -180.0),
                       std::max(lat.lo, -kMercatorMaxLatitude),
                       std::min(lon.hi, 180.0),
                       std::min(lat.hi, kMercatorMaxLatitude)};
}

}  // namespace heritage::bundle
