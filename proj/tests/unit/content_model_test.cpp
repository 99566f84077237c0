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

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "doctest.h"
#include "fixture_site.hpp"
#include "heritage_forge/content_model/geojson.hpp"
#include "heritage_forge/content_model/manifest.hpp"
#include "heritage_forge/content_model/markers.hpp"
#include "heritage_forge/errors.hpp"
#include "rapidjson/document.h"

namespace content = heritage::content;
namespace testing = heritage::testing;
using nlohmann::json;

namespace {

auto Collection(json features) -> std::string {
    return json{{"type", "FeatureCollection"}, {"features", std::move(features)}}.dump();
}

auto PointFeature(json properties, double lon = 1.0, double lat = 2.0) -> json {
    return {{"type", "Feature"},
            {"geometry", {{"type", "Point"}, {"coordinates", {lon, lat}}}},
            {"properties", std::move(properties)}};
}

template <typename Fn>
auto ErrorMessage(Fn&& fn) -> std::string {
    try {
        fn();
    } catch (heritage::Error const& e) {
        return e.kind() + ": " + e.what();
    }
    return "no error";
}

// Smallest site that loads: one layer, no assets.
auto MinimalSite() -> json {
    return {{"schema_version", 1},
            {"site_id", "mini"},
            {"title", "Mini"},
            {"initial_view", {{"center", {0.0, 0.0}}, {"zoom", 3}}},
            {"layers", json::array({{{"layer_id", "now"},
                                     {"label", "Now"},
                                     {"period_start", 2000},
                                     {"base_style", "plain"},
                                     {"markers_file", "now.geojson"}}})},
            {"assets", json::array()}};
}

}  // namespace

TEST_CASE("feature collections") {
    CHECK(content::ParseFeatureCollection(R"({"type":"FeatureCollection","features":[]})").empty());

    auto const text = Collection(json::array(
        {PointFeature({{"kind", "pano360"}, {"title", "Cloister"}}, -2.4712, 41.7698)}));
    auto const features = content::ParseFeatureCollection(text);
    REQUIRE(features.size() == 1);

    // Independent reader for the same document.
    rapidjson::Document doc;
    doc.Parse(text.c_str());
    REQUIRE_FALSE(doc.HasParseError());
    auto const& f = doc["features"][0];
    auto const& coords = f["geometry"]["coordinates"];
    CHECK(features[0].coordinates ==
          std::vector<double>{coords[0].GetDouble(), coords[1].GetDouble()});
    CHECK(features[0].properties.size() == f["properties"].MemberCount());
    CHECK(features[0].properties["kind"] == f["properties"]["kind"].GetString());
    CHECK(features[0].properties["title"] == f["properties"]["title"].GetString());
}

TEST_CASE("feature collection errors") {
    auto line = Collection(json::array(
        {{{"type", "Feature"},
          {"geometry", {{"type", "LineString"}, {"coordinates", {{0, 0}, {1, 1}}}}},
          {"properties", json::object()}}}));
    CHECK(ErrorMessage([&] { (void)content::ParseFeatureCollection(line); })
              .find("markers must be Point") != std::string::npos);
    CHECK_THROWS_AS(content::ParseFeatureCollection(R"({"type":"Feature"})"), heritage::GeoJsonError);
    CHECK_THROWS_AS(content::ParseFeatureCollection(R"({"type":"FeatureCollection"})"), heritage::GeoJsonError);
    CHECK_THROWS_AS(content::ParseFeatureCollection(
                        R"({"type":"FeatureCollection","features":[{"type":"Feature","geometry":{"type":"Point","coordinates":[1]},"properties":{}}]})"),
                    heritage::GeoJsonError);
    CHECK_THROWS_AS(content::ParseFeatureCollection(
                        R"({"type":"FeatureCollection","features":[{"type":"Feature","geometry":{"type":"Point","coordinates":["a","b"]},"properties":{}}]})"),
                    heritage::GeoJsonError);

    try {
        (void)content::ParseFeatureCollection("{\n  \"type\": ,\n}");
        FAIL("expected a SyntaxError");
    } catch (heritage::SyntaxError const& e) {
        CHECK(e.line() == 2);
        CHECK(e.column() == 11);
    }
}

TEST_CASE("markers of every kind") {
    std::vector<content::RawFeature> features;
    for (auto const* kind : {"model3d", "pano360", "info", "video"}) {
        features.push_back({{1.0, 2.0},
                            {{"marker_id", kind}, {"kind", kind}, {"title", kind},
                             {"media", json::array({"m"})}},
                            std::nullopt});
    }
    auto const markers = content::MarkersFromFeatures(features, "camp");
    REQUIRE(markers.size() == 4);
    std::vector<std::string> kinds;
    for (auto const& m : markers) {
        kinds.emplace_back(content::ToString(m.kind));
        CHECK(m.layer_id == "camp");
    }
    std::sort(kinds.begin(), kinds.end());
    CHECK(kinds == std::vector<std::string>{"info", "model3d", "pano360", "video"});
}

TEST_CASE("marker mapping details") {
    std::vector<content::RawFeature> const features{
        {{-2.5, 41.7, 3.0},
         {{"kind", "info"},
          {"title", {{"default", "Gate"}, {"es", "Puerta"}}},
          {"architect", "unknown"},
          {"related_locations",
           json::array({{{"label", "Burgos"}, {"position", {-3.7, 42.3}}}})}},
         "gate"}};
    auto const markers = content::MarkersFromFeatures(features, "present");
    REQUIRE(markers.size() == 1);
    auto const& m = markers[0];
    CHECK(m.marker_id == "gate");
    CHECK(m.position == heritage::GeoPoint{-2.5, 41.7, 3.0});
    CHECK(m.title.text == "Gate");
    CHECK(m.title.translations.at("es") == "Puerta");
    CHECK(m.extras == json{{"architect", "unknown"}});
    REQUIRE(m.related_locations.size() == 1);
    CHECK(m.related_locations[0].position.lon == -3.7);

    auto const feature = content::MarkerToFeature(m);
    CHECK(feature["properties"]["architect"] == "unknown");
    CHECK(feature["properties"]["marker_id"] == "gate");
}

TEST_CASE("marker errors") {
    std::vector<content::RawFeature> dup{
        {{0, 0}, {{"marker_id", "nave"}, {"kind", "info"}, {"title", "a"}}, std::nullopt},
        {{0, 0}, {{"marker_id", "nave"}, {"kind", "info"}, {"title", "b"}}, std::nullopt}};
    try {
        (void)content::MarkersFromFeatures(dup, "l");
        FAIL("expected a DuplicateIdError");
    } catch (heritage::DuplicateIdError const& e) {
        CHECK(e.id() == "nave");
    }

    std::vector<content::RawFeature> unknown{
        {{0, 0}, {{"marker_id", "x"}, {"kind", "hologram"}, {"title", "a"}}, std::nullopt}};
    CHECK_THROWS_AS(content::MarkersFromFeatures(unknown, "l"), heritage::SchemaError);

    std::vector<content::RawFeature> no_media{
        {{0, 0}, {{"marker_id", "x"}, {"kind", "video"}, {"title", "a"}}, std::nullopt}};
    CHECK_THROWS_AS(content::MarkersFromFeatures(no_media, "l"), heritage::SchemaError);

    std::vector<heritage::Issue> issues;
    auto const kept = content::MarkersFromFeatures(
        std::vector<content::RawFeature>{unknown[0], dup[0]}, "l", "markers/l.geojson", issues);
    CHECK(kept.size() == 1);
    REQUIRE(issues.size() == 1);
    CHECK(issues[0].path.find("markers/l.geojson") == 0);
}

TEST_CASE("marker order matches a reference sort for every permutation") {
    struct Spec {
        std::string id;
        std::optional<int> nav;
    };
    std::vector<Spec> const specs{{"a", 2}, {"b", 1}, {"c", std::nullopt},
                                  {"d", 1}, {"e", std::nullopt}, {"f", 2}};
    std::vector<std::size_t> order(specs.size());
    std::iota(order.begin(), order.end(), 0);
    int permutations = 0;
    do {
        std::vector<content::RawFeature> features;
        std::vector<Spec> input;
        for (auto i : order) {
            json props{{"marker_id", specs[i].id}, {"kind", "info"}, {"title", "t"}};
            if (specs[i].nav) {
                props["nav_order"] = *specs[i].nav;
            }
            features.push_back({{0, 0}, props, std::nullopt});
            input.push_back(specs[i]);
        }
        // Reference: ordered entries by (nav, id), then unordered in input order.
        std::vector<Spec> ordered;
        std::vector<Spec> rest;
        for (auto const& s : input) {
            (s.nav ? ordered : rest).push_back(s);
        }
        std::sort(ordered.begin(), ordered.end(), [](Spec const& x, Spec const& y) {
            return std::tie(*x.nav, x.id) < std::tie(*y.nav, y.id);
        });
        ordered.insert(ordered.end(), rest.begin(), rest.end());

        auto const markers = content::MarkersFromFeatures(features, "l");
        REQUIRE(markers.size() == ordered.size());
        for (std::size_t k = 0; k < markers.size(); ++k) {
            CHECK(markers[k].marker_id == ordered[k].id);
        }
        ++permutations;
    } while (std::next_permutation(order.begin(), order.end()));
    CHECK(permutations == 720);
}

TEST_CASE("fixture manifest") {
    testing::TempDir dir{"manifest"};
    testing::WriteFixtureSite(dir.path());
    auto const site = content::LoadManifest(dir.path() / "site.json");
    REQUIRE(site.layers.size() == 3);
    CHECK(site.layers[0].layer_id == "convent-1835");
    CHECK(site.layers[1].layer_id == "camp-1936");
    CHECK(site.layers[2].layer_id == "present");
    auto const* camp = site.FindLayer("camp-1936");
    REQUIRE(camp != nullptr);
    auto const model3d = std::count_if(camp->markers.begin(), camp->markers.end(),
                                       [](content::Marker const& m) {
                                           return m.kind == content::MarkerKind::kModel3d;
                                       });
    CHECK(model3d == 16);
    CHECK(site.annotations.size() == 2);
    auto const* pano = site.FindAsset("courtyard-pano");
    REQUIRE(pano != nullptr);
    REQUIRE(pano->pano_pose.has_value());
    CHECK(pano->pano_pose->heading == 30.0);
}

TEST_CASE("manifest with no layers") {
    testing::TempDir dir{"manifest"};
    auto doc = MinimalSite();
    doc["layers"] = json::array();
    testing::WriteJson(dir.path() / "site.json", doc);
    try {
        (void)content::LoadManifest(dir.path() / "site.json");
        FAIL("expected a SchemaError");
    } catch (heritage::SchemaError const& e) {
        CHECK(std::string{e.what()} == "layers: at least 1 required");
    }
}

TEST_CASE("manifest with a dangling media reference") {
    testing::TempDir dir{"manifest"};
    testing::WriteJson(dir.path() / "site.json", MinimalSite());
    testing::WriteText(dir.path() / "now.geojson",
                       Collection(json::array({PointFeature({{"marker_id", "m"},
                                                             {"kind", "video"},
                                                             {"title", "t"},
                                                             {"media", json::array({"ghost"})}})})));
    try {
        (void)content::LoadManifest(dir.path() / "site.json");
        FAIL("expected a ReferenceError");
    } catch (heritage::ReferenceError const& e) {
        CHECK(e.missing() == std::vector<std::string>{"ghost"});
        CHECK(std::string{e.what()}.find("ghost") != std::string::npos);
    }
}

TEST_CASE("manifest schema errors carry the field path") {
    testing::TempDir dir{"manifest"};
    testing::WriteText(dir.path() / "now.geojson", Collection(json::array()));

    auto doc = MinimalSite();
    doc["schema_version"] = 2;
    testing::WriteJson(dir.path() / "site.json", doc);
    CHECK_THROWS_AS(content::LoadManifest(dir.path() / "site.json"), heritage::SchemaError);

    doc = MinimalSite();
    doc["layers"][0]["period_end"] = 1990;
    testing::WriteJson(dir.path() / "site.json", doc);
    auto const message = ErrorMessage([&] { (void)content::LoadManifest(dir.path() / "site.json"); });
    CHECK(message.find("layers[0].period_end") != std::string::npos);

    doc = MinimalSite();
    doc["initial_view"]["center"] = {0.0, 91.0};
    testing::WriteJson(dir.path() / "site.json", doc);
    CHECK_THROWS_AS(content::LoadManifest(dir.path() / "site.json"), heritage::SchemaError);

    doc = MinimalSite();
    doc["layers"].push_back(doc["layers"][0]);
    testing::WriteJson(dir.path() / "site.json", doc);
    CHECK_THROWS_AS(content::LoadManifest(dir.path() / "site.json"), heritage::DuplicateIdError);

    testing::WriteText(dir.path() / "site.json", "{ \"schema_version\": 1,, }");
    CHECK_THROWS_AS(content::LoadManifest(dir.path() / "site.json"), heritage::SyntaxError);
}

TEST_CASE("collecting loader reports several problems at once") {
    testing::TempDir dir{"manifest"};
    auto doc = MinimalSite();
    doc["layers"][0]["base_style"] = "sepia";
    doc["title"] = 5;
    doc["assets"].push_back({{"asset_id", "clip"}, {"path", "a.mp4"},
                             {"kind", "video"}, {"role", "overlay"}});
    testing::WriteJson(dir.path() / "site.json", doc);
    auto const load = content::LoadManifestCollect(dir.path() / "site.json");
    CHECK(load.HasErrors());
    std::vector<std::string> paths;
    for (auto const& issue : load.issues) {
        paths.push_back(issue.path);
    }
    std::sort(paths.begin(), paths.end());
    CHECK(paths == std::vector<std::string>{"assets[0].role", "layers[0].base_style", "title"});
}

TEST_CASE("localized text") {
    content::LocalizedText plain{"Hello", {}};
    CHECK(content::LocalizedTextToJson(plain) == "Hello");
    content::LocalizedText both{"Hello", {{"es", "Hola"}}};
    CHECK(content::LocalizedTextToJson(both) == json{{"default", "Hello"}, {"es", "Hola"}});
}

TEST_CASE("slugs") {
    CHECK(content::IsSlug("camp-1936"));
    CHECK(content::IsSlug("a_b"));
    CHECK_FALSE(content::IsSlug(""));
    CHECK_FALSE(content::IsSlug("-x"));
    CHECK_FALSE(content::IsSlug("Camp"));
    CHECK_FALSE(content::IsSlug("../etc"));
    CHECK_FALSE(content::IsSlug(std::string(65, 'a')));
}
