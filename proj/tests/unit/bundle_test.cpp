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
#include <cmath>
#include <cstdlib>
#include <iterator>
#include <string>
#include <system_error>
#include <vector>

#include "doctest.h"
#include "fixture_site.hpp"
#include "heritage_forge/bundle/bounds.hpp"
#include "heritage_forge/bundle/compiler.hpp"
#include "heritage_forge/bundle/content_hash.hpp"
#include "heritage_forge/errors.hpp"

namespace bundle = heritage::bundle;
namespace testing = heritage::testing;
namespace fs = std::filesystem;
using heritage::GeoPoint;
using heritage::Issue;
using nlohmann::json;

namespace {

auto Codes(std::vector<Issue> const& issues) -> std::vector<std::string> {
    std::vector<std::string> out;
    for (auto const& issue : issues) {
        out.push_back(issue.code);
    }
    std::sort(out.begin(), out.end());
    return out;
}

auto HasCode(std::vector<Issue> const& issues, std::string_view code) -> bool {
    return std::any_of(issues.begin(), issues.end(),
                       [&](Issue const& i) { return i.code == code; });
}

// A fresh copy of the fixture site whose manifest can be edited in place.
class Site {
  public:
    Site() { testing::WriteFixtureSite(dir_.path()); }

    [[nodiscard]] auto dir() const -> fs::path const& { return dir_.path(); }

    template <typename Fn>
    void EditManifest(Fn&& fn) {
        auto doc = json::parse(testing::ReadText(dir() / "site.json"));
        fn(doc);
        testing::WriteJson(dir() / "site.json", doc);
    }

    auto Asset(json& doc, std::string_view id) -> json& {
        for (auto& a : doc["assets"]) {
            if (a["asset_id"] == id) {
                return a;
            }
        }
        FAIL("no asset " << id);
        return doc;
    }

    [[nodiscard]] auto Validate() const -> bundle::CompileReport {
        return bundle::Validate(dir());
    }

  private:
    testing::TempDir dir_{"hf-site"};
};

auto CampOverlay(json& doc) -> json& {
    for (auto& layer : doc["layers"]) {
        if (layer["layer_id"] == testing::kCampLayer) {
            return layer["overlays"][0];
        }
    }
    FAIL("no camp layer");
    return doc;
}

auto Cli(std::string const& args) -> int {
    auto const command = std::string{HF_CLI_PATH} + " " + args + " >/dev/null 2>&1";
    int const status = std::system(command.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("content hash uses the sha-256 prefix") {
    CHECK(bundle::ContentHash(std::string_view{""}) == "e3b0c44298fc1c14");
    CHECK(bundle::ContentHash(std::string_view{"abc"}) == "ba7816bf8f01cfea");
    CHECK(bundle::ContentHash(std::string_view{"abc"}).size() ==
          bundle::kContentHashLength);
    std::string const abc = "abc";
    std::vector<std::uint8_t> const bytes(abc.begin(), abc.end());
    CHECK(bundle::Sha256Hex(bytes) ==
          "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");

    testing::TempDir tmp;
    testing::WriteText(tmp.path() / "x.bin", "abc");
    CHECK(bundle::ContentHashOfFile(tmp.path() / "x.bin") == "ba7816bf8f01cfea");
    CHECK_THROWS_AS(bundle::ContentHashOfFile(tmp.path() / "missing"),
                    std::system_error);
}

TEST_CASE("fit bounds") {
    SUBCASE("a single point gets the minimum span") {
        GeoPoint const p{10.0, 20.0, 0.0};
        auto const box = bundle::FitBounds({&p, 1}, 0.0);
        CHECK(box.max_lon - box.min_lon == doctest::Approx(bundle::kMinBoundsSpan));
        CHECK(box.max_lat - box.min_lat == doctest::Approx(bundle::kMinBoundsSpan));
        CHECK((box.min_lon + box.max_lon) / 2 == doctest::Approx(10.0));
    }
    SUBCASE("padding is a fraction of each span") {
        std::vector<GeoPoint> const pts{{-2.4693, 41.7709, 0.0},
                                        {-3.7038, 42.3439, 0.0},
                                        {-2.9465, 42.6866, 0.0}};
        auto const tight = bundle::FitBounds(pts, 0.0);
        CHECK(tight == bundle::BoundingBox{-3.7038, 41.7709, -2.4693, 42.6866});
        auto const padded = bundle::FitBounds(pts, 0.1);
        CHECK(padded.min_lon == doctest::Approx(-3.82725));
        CHECK(padded.min_lat == doctest::Approx(41.67933));
        CHECK(padded.max_lon == doctest::Approx(-2.34585));
        CHECK(padded.max_lat == doctest::Approx(42.77817));
    }
    SUBCASE("bad input") {
        CHECK_THROWS_AS(bundle::FitBounds({}, 0.1), heritage::EmptyInputError);
        GeoPoint const p{0.0, 0.0, 0.0};
        CHECK_THROWS_AS(bundle::FitBounds({&p, 1}, -0.1), heritage::DomainError);
    }
}

TEST_CASE("index floats are pinned") {
    CHECK(bundle::PinFloat(0.1 + 0.2) == 0.3);
    CHECK(bundle::PinFloat(20.779841682692956) == 20.7798417);
    CHECK(!std::signbit(bundle::PinFloat(-0.0)));
    CHECK(bundle::PinFloat(-1e-30) == -1e-30);
    CHECK(bundle::DumpIndex(json{{"b", 1}, {"a", 2}}) ==
          "{\n  \"a\": 2,\n  \"b\": 1\n}\n");
}

TEST_CASE("fixture site compiles") {
    Site site;
    testing::TempDir out_parent{"hf-out"};
    auto const out = out_parent.path() / "bundle";
    auto const result = bundle::Compile(site.dir(), out);

    REQUIRE_MESSAGE(result.report.ok(), result.report.ToText());
    CHECK(result.report.warnings.empty());
    REQUIRE(result.bundle.has_value());
    CHECK(result.bundle->root == out);

    auto const& stats = result.report.stats;
    CHECK(stats.layers == 3);
    CHECK(stats.markers.at("model3d") == testing::kCampBuildings);
    CHECK(stats.markers.at("pano360") == 2);
    CHECK(stats.markers.at("video") == 1);
    CHECK(stats.markers.at("info") == 4);
    CHECK(stats.assets == 24);

    CHECK(result.report.georef_rmse.size() == 2);
    CHECK(result.report.georef_rmse.at("convent-1835/convent-plan") < 1e-3);
    CHECK(result.report.georef_rmse.at("camp-1936/camp-plan") ==
          doctest::Approx(1.313).epsilon(1e-3));

    CHECK(testing::BundleClosureMisses(out).empty());

    auto const& camp = result.bundle->layer_indices.at(std::string{testing::kCampLayer});
    std::vector<std::string> kinds;
    for (auto const& m : camp["markers"]) {
        kinds.push_back(m["kind"]);
    }
    for (auto const* kind : {"model3d", "pano360", "info", "video"}) {
        CHECK(std::count(kinds.begin(), kinds.end(), kind) >= 1);
    }

    // Every asset lands under a content-hashed name.
    for (auto const& [id, name] : result.bundle->asset_map) {
        auto const hash = bundle::ContentHashOfFile(out / "assets" / name);
        CHECK_MESSAGE(name.rfind(hash, 0) == 0, id);
    }
    CHECK(fs::is_directory(out_parent.path()));
    for (auto const& entry : fs::directory_iterator(out_parent.path())) {
        CHECK(entry.path().filename() == "bundle");
    }
}

TEST_CASE("compiles are deterministic and replace the old bundle") {
    Site site;
    testing::TempDir a{"hf-a"};
    testing::TempDir b{"hf-b"};
    auto const first = bundle::Compile(site.dir(), a.path() / "out", {.jobs = 1});
    testing::WriteText(b.path() / "out" / "stale.txt", "old");
    auto const second = bundle::Compile(site.dir(), b.path() / "out", {.jobs = 8});
    REQUIRE(first.report.ok());
    REQUIRE(second.report.ok());
    CHECK(testing::IndexFiles(a.path() / "out") == testing::IndexFiles(b.path() / "out"));
    CHECK(!fs::exists(b.path() / "out" / "stale.txt"));
}

TEST_CASE("missing manifest") {
    testing::TempDir empty;
    auto const report = bundle::Validate(empty.path());
    REQUIRE(report.errors.size() == 1);
    CHECK(report.errors[0].code == "E001");
    CHECK(report.errors[0].message.find("site.json not found") != std::string::npos);
}

TEST_CASE("a failed compile leaves out_dir untouched") {
    Site site;
    testing::WriteText(site.dir() / "models" / "barrack-07.glb", "glTF but not really");
    site.EditManifest([](json& doc) {
        doc["layers"][0]["overlays"][0]["asset_id"] = "lost-plan";
    });

    testing::TempDir out_parent{"hf-out"};
    auto const existing = out_parent.path() / "existing";
    testing::WriteText(existing / "keep.txt", "previous bundle");
    auto const fresh = out_parent.path() / "fresh";

    for (auto const& out : {existing, fresh}) {
        auto const result = bundle::Compile(site.dir(), out);
        CHECK(!result.bundle.has_value());
        CHECK(!result.report.io_failure);
        CHECK(Codes(result.report.errors) == std::vector<std::string>{"E004", "E008"});
    }
    CHECK(testing::ReadText(existing / "keep.txt") == "previous bundle");
    CHECK(std::distance(fs::directory_iterator(existing), fs::directory_iterator{}) == 1);
    CHECK(!fs::exists(fresh));
    for (auto const& entry : fs::directory_iterator(out_parent.path())) {
        CHECK(entry.path().filename() == "existing");
    }
}

TEST_CASE("georeference quality thresholds") {
    SUBCASE("moderate residuals warn") {
        Site site;
        site.EditManifest([](json& doc) {
            auto& geo = CampOverlay(doc)["gcps"][4]["geo"];
            geo[1] = geo[1].get<double>() + 0.0005;
        });
        auto const report = site.Validate();
        CHECK(report.ok());
        CHECK(HasCode(report.warnings, "W001"));
        auto const rmse = report.georef_rmse.at("camp-1936/camp-plan");
        CHECK(rmse > bundle::kRmseWarnMeters);
        CHECK(rmse <= bundle::kRmseErrorMeters);
    }
    SUBCASE("large residuals fail") {
        Site site;
        site.EditManifest([](json& doc) {
            auto& geo = CampOverlay(doc)["gcps"][4]["geo"];
            geo[1] = geo[1].get<double>() + 0.01;
        });
        auto const report = site.Validate();
        CHECK(Codes(report.errors) == std::vector<std::string>{"E013"});
    }
    SUBCASE("control points outside the image") {
        Site site;
        site.EditManifest([](json& doc) {
            CampOverlay(doc)["gcps"][2]["pixel"] = {5000.0, 10.0};
        });
        auto const report = site.Validate();
        REQUIRE(report.errors.size() == 1);
        CHECK(report.errors[0].code == "E016");
        CHECK(report.errors[0].path.find("gcps[2]") != std::string::npos);
    }
    SUBCASE("collinear control points") {
        Site site;
        site.EditManifest([](json& doc) {
            auto& gcps = CampOverlay(doc)["gcps"];
            for (std::size_t i = 0; i < gcps.size(); ++i) {
                gcps[i]["pixel"] = {100.0 * static_cast<double>(i + 1), 100.0};
            }
        });
        CHECK(Codes(site.Validate().errors) == std::vector<std::string>{"E012"});
    }
}

TEST_CASE("panorama shape checks") {
    SUBCASE("not 2:1") {
        Site site;
        auto const bytes = testing::EncodeJpeg(testing::PatternImage(1000, 800, 3, 1));
        testing::WriteBytes(site.dir() / "panoramas" / "courtyard.jpg", bytes);
        CHECK(Codes(site.Validate().errors) == std::vector<std::string>{"E011"});
    }
    SUBCASE("nearly 2:1") {
        Site site;
        auto const bytes = testing::EncodeJpeg(testing::PatternImage(1002, 500, 3, 1));
        testing::WriteBytes(site.dir() / "panoramas" / "courtyard.jpg", bytes);
        auto const report = site.Validate();
        CHECK(report.ok());
        CHECK(HasCode(report.warnings, "W002"));
    }
}

TEST_CASE("asset content problems") {
    SUBCASE("image bytes in a glb slot") {
        Site site;
        auto const bytes = testing::EncodeJpeg(testing::PatternImage(16, 16, 3, 2));
        testing::WriteBytes(site.dir() / "models" / "barrack-05.glb", bytes);
        CHECK(Codes(site.Validate().errors) == std::vector<std::string>{"E010"});
    }
    SUBCASE("missing file") {
        Site site;
        fs::remove(site.dir() / "photos" / "gate.jpg");
        CHECK(Codes(site.Validate().errors) == std::vector<std::string>{"E007"});
    }
    SUBCASE("video with an unknown container") {
        Site site;
        testing::WriteText(site.dir() / "media" / "interview.txt", "not a video");
        site.EditManifest([&](json& doc) {
            site.Asset(doc, "interview")["path"] = "media/interview.txt";
        });
        CHECK(Codes(site.Validate().errors) == std::vector<std::string>{"E018"});
    }
    SUBCASE("unused asset") {
        Site site;
        testing::WriteText(site.dir() / "media" / "spare.mp4", "spare");
        site.EditManifest([](json& doc) {
            doc["assets"].push_back({{"asset_id", "spare"},
                                     {"kind", "video"},
                                     {"role", "clip"},
                                     {"path", "media/spare.mp4"}});
        });
        auto const report = site.Validate();
        CHECK(report.ok());
        REQUIRE(report.warnings.size() == 1);
        CHECK(report.warnings[0].code == "W007");
    }
}

TEST_CASE("annotation at the camera position is rejected") {
    Site site;
    site.EditManifest([](json& doc) {
        doc["annotations"][0]["target"] = {testing::kPanoPosition.lon,
                                           testing::kPanoPosition.lat, 1.6};
    });
    CHECK(Codes(site.Validate().errors) == std::vector<std::string>{"E014"});
}

TEST_CASE("report serialization") {
    testing::TempDir empty;
    auto const report = bundle::Validate(empty.path());
    auto const doc = report.ToJson();
    CHECK(doc["ok"] == false);
    CHECK(doc["errors"].size() == 1);
    CHECK(doc["errors"][0]["code"] == "E001");
    CHECK(report.ToText().find("E001") != std::string::npos);
}

TEST_CASE("command line exit codes") {
    Site site;
    testing::TempDir out{"hf-cli"};
    auto const site_arg = site.dir().string();
    CHECK(Cli("validate " + site_arg) == 0);
    CHECK(Cli("compile " + site_arg + " -o " + (out.path() / "b").string()) == 0);
    CHECK(fs::is_regular_file(out.path() / "b" / "site.json"));

    testing::TempDir empty;
    CHECK(Cli("validate " + empty.path().string()) == 1);
    CHECK(Cli("--json compile " + empty.path().string() + " -o " +
              (out.path() / "c").string()) == 1);

    // Output path whose parent is a regular file cannot be created.
    testing::WriteText(out.path() / "file", "x");
    CHECK(Cli("compile " + site_arg + " -o " + (out.path() / "file" / "b").string()) == 2);
    CHECK(Cli("frobnicate") == 2);
}
