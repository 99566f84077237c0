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

#include <set>
#include <string>

#include "doctest.h"
#include "fixture_site.hpp"
#include "heritage_forge/bundle/compiler.hpp"
#include "heritage_forge/errors.hpp"
#include "running_server.hpp"

namespace fs = std::filesystem;
namespace server = heritage::server;
namespace testing = heritage::testing;
using nlohmann::json;

namespace {

// The fixture bundle, compiled once and shared read-only by every case.
struct CompiledFixture {
    testing::TempDir site{"hf-site"};
    testing::TempDir out{"hf-bundle"};
    fs::path root = out.path() / "bundle";

    CompiledFixture() {
        testing::WriteFixtureSite(site.path());
        auto const result = heritage::bundle::Compile(site.path(), root);
        REQUIRE(result.report.ok());
    }
};

auto Fixture() -> CompiledFixture const& {
    static CompiledFixture const fixture;
    return fixture;
}

auto Config(fs::path const& root) -> server::ServerConfig {
    server::ServerConfig config;
    config.bundle_dir = root;
    return config;
}

auto CampVideoAsset(fs::path const& root) -> std::string {
    auto const camp = json::parse(testing::ReadText(root / "layers" / "camp-1936.json"));
    for (auto const& m : camp["markers"]) {
        if (m["kind"] == "video") {
            return m["media"][0]["path"];
        }
    }
    FAIL("no video marker");
    return {};
}

}  // namespace

TEST_CASE("asset name and content type helpers") {
    CHECK(server::IsHashedAssetName("0123456789abcdef.glb"));
    CHECK(server::IsHashedAssetName("0123456789abcdef.jpg"));
    CHECK(!server::IsHashedAssetName("0123456789ABCDEF.glb"));
    CHECK(!server::IsHashedAssetName("0123456789abcde.glb"));
    CHECK(!server::IsHashedAssetName("0123456789abcdef"));
    CHECK(!server::IsHashedAssetName("../../etc/passwd"));
    CHECK(!server::IsHashedAssetName("0123456789abcdef.glb/x"));
    CHECK(server::ContentTypeForExtension("glb") == "model/gltf-binary");
    CHECK(server::ContentTypeForExtension("png") == "image/png");
    CHECK(server::ContentTypeForExtension("jpg") == "image/jpeg");
    CHECK(server::ContentTypeForExtension("mp4") == "video/mp4");
    CHECK(server::ContentTypeForExtension("zzz") == "application/octet-stream");
}

TEST_CASE("configuration is checked up front") {
    testing::TempDir empty;
    CHECK_THROWS_AS(server::BundleServer{Config(empty.path() / "missing")},
                    heritage::ConfigError);
    CHECK_THROWS_AS(server::BundleServer{Config(empty.path())}, heritage::ConfigError);
}

TEST_CASE("site and layer endpoints") {
    auto const& fx = Fixture();
    testing::RunningServer running{Config(fx.root)};
    auto client = running.Client();

    auto site = client.Get("/api/site");
    REQUIRE(site);
    CHECK(site->status == 200);
    CHECK(site->get_header_value("Content-Type").rfind("application/json", 0) == 0);
    auto const doc = json::parse(site->body);
    CHECK(doc["layers"].size() == 3);
    CHECK(site->body == testing::ReadText(fx.root / "site.json"));

    auto camp = client.Get("/api/layers/camp-1936");
    REQUIRE(camp);
    CHECK(camp->status == 200);
    auto const layer = json::parse(camp->body);
    std::set<std::string> kinds;
    nlohmann::json pano_media;
    for (auto const& m : layer["markers"]) {
        kinds.insert(m["kind"].get<std::string>());
        if (m["kind"] == "pano360") {
            pano_media = m["media"][0];
        }
    }
    CHECK(kinds == std::set<std::string>{"info", "model3d", "pano360", "video"});

    // Annotations come back exactly as compiled.
    auto const on_disk =
        json::parse(testing::ReadText(fx.root / "layers" / "camp-1936.json"));
    for (auto const& m : on_disk["markers"]) {
        if (m["kind"] == "pano360") {
            CHECK(pano_media["annotations"] == m["media"][0]["annotations"]);
        }
    }

    auto missing = client.Get("/api/layers/atlantis");
    REQUIRE(missing);
    CHECK(missing->status == 404);
    CHECK(json::parse(missing->body) == json{{"error", "layer not found"}, {"code", 404}});

    auto bad = client.Get("/api/layers/..%2Fsite");
    REQUIRE(bad);
    CHECK(bad->status == 404);

    auto nowhere = client.Get("/nope");
    REQUIRE(nowhere);
    CHECK(nowhere->status == 404);
    CHECK(json::parse(nowhere->body)["code"] == 404);
}

TEST_CASE("conditional requests") {
    auto const& fx = Fixture();
    testing::RunningServer running{Config(fx.root)};
    auto client = running.Client();

    auto first = client.Get("/api/site");
    REQUIRE(first);
    auto const etag = first->get_header_value("ETag");
    CHECK(!etag.empty());
    CHECK(first->get_header_value("Cache-Control") == "no-cache");

    auto again = client.Get("/api/site", {{"If-None-Match", etag}});
    REQUIRE(again);
    CHECK(again->status == 304);
    CHECK(again->body.empty());

    auto weak = client.Get("/api/site", {{"If-None-Match", "\"other\", W/" + etag}});
    REQUIRE(weak);
    CHECK(weak->status == 304);

    auto stale = client.Get("/api/site", {{"If-None-Match", "\"0000000000000000\""}});
    REQUIRE(stale);
    CHECK(stale->status == 200);

    auto const asset = CampVideoAsset(fx.root);
    auto a = client.Get("/" + asset);
    REQUIRE(a);
    CHECK(a->status == 200);
    CHECK(a->get_header_value("Cache-Control") == server::kImmutableCacheControl);
    auto a2 = client.Get("/" + asset, {{"If-None-Match", a->get_header_value("ETag")}});
    REQUIRE(a2);
    CHECK(a2->status == 304);
}

TEST_CASE("asset downloads and byte ranges") {
    auto const& fx = Fixture();
    testing::RunningServer running{Config(fx.root)};
    auto client = running.Client();
    auto const asset = CampVideoAsset(fx.root);
    auto const bytes = testing::ReadText(fx.root / asset);
    REQUIRE(bytes.size() == 8192);

    auto whole = client.Get("/" + asset);
    REQUIRE(whole);
    CHECK(whole->status == 200);
    CHECK(whole->body == bytes);
    CHECK(whole->get_header_value("Content-Type") == "video/mp4");
    CHECK(whole->get_header_value("Accept-Ranges") == "bytes");

    auto head = client.Get("/" + asset, {{"Range", "bytes=0-1023"}});
    REQUIRE(head);
    CHECK(head->status == 206);
    CHECK(head->get_header_value("Content-Range") == "bytes 0-1023/8192");
    CHECK(head->body == bytes.substr(0, 1024));

    auto clamped = client.Get("/" + asset, {{"Range", "bytes=8000-99999"}});
    REQUIRE(clamped);
    CHECK(clamped->status == 206);
    CHECK(clamped->get_header_value("Content-Range") == "bytes 8000-8191/8192");
    CHECK(clamped->body == bytes.substr(8000));

    auto suffix = client.Get("/" + asset, {{"Range", "bytes=-100"}});
    REQUIRE(suffix);
    CHECK(suffix->status == 206);
    CHECK(suffix->get_header_value("Content-Range") == "bytes 8092-8191/8192");
    CHECK(suffix->body == bytes.substr(8092));

    for (auto const* range : {"bytes=999999999-", "bytes=0-10,20-30", "bytes=-0"}) {
        auto res = client.Get("/" + asset, {{"Range", range}});
        REQUIRE(res);
        CHECK_MESSAGE(res->status == 416, range);
        CHECK(res->get_header_value("Content-Range") == "bytes */8192");
        CHECK(json::parse(res->body)["code"] == 416);
    }

    auto glb_name = fx.root / "assets";
    for (auto const& entry : fs::directory_iterator(glb_name)) {
        if (entry.path().extension() == ".glb") {
            auto res = client.Head("/assets/" + entry.path().filename().string());
            REQUIRE(res);
            CHECK(res->status == 200);
            CHECK(res->get_header_value("Content-Type") == "model/gltf-binary");
            CHECK(res->get_header_value("Content-Length") ==
                  std::to_string(fs::file_size(entry.path())));
            CHECK(res->body.empty());
            break;
        }
    }

    auto unknown = client.Get("/assets/0000000000000000.glb");
    REQUIRE(unknown);
    CHECK(unknown->status == 404);
    CHECK(json::parse(unknown->body)["error"] == "asset not found");
}

TEST_CASE("paths outside the bundle are never served") {
    auto const& fx = Fixture();
    testing::TempDir viewer{"hf-viewer"};
    testing::WriteText(viewer.path() / "index.html", "<!doctype html><title>viewer</title>");
    testing::WriteText(viewer.path() / "js" / "app.js", "console.log(1)");
    auto config = Config(fx.root);
    config.viewer_dir = viewer.path();
    testing::RunningServer running{config};
    auto client = running.Client();
    client.set_url_encode(false);

    auto index = client.Get("/");
    REQUIRE(index);
    CHECK(index->status == 200);
    CHECK(index->body.find("viewer") != std::string::npos);
    auto js = client.Get("/js/app.js");
    REQUIRE(js);
    CHECK(js->status == 200);

    for (auto const* path :
         {"/assets/../site.json", "/assets/..%2f..%2fsite.json", "/assets/%2e%2e/site.json",
          "/../site.json", "/%2e%2e/%2e%2e/etc/passwd", "/js/../../bundle/site.json",
          "/assets/..\\site.json", "/assets//etc/passwd"}) {
        auto res = client.Get(path);
        REQUIRE(res);
        CHECK_MESSAGE(res->status == 404, path);
    }
}

TEST_CASE("cross-origin headers") {
    auto const& fx = Fixture();
    SUBCASE("any origin by default") {
        testing::RunningServer running{Config(fx.root)};
        auto client = running.Client();
        auto res = client.Get("/api/site", {{"Origin", "https://example.org"}});
        REQUIRE(res);
        CHECK(res->get_header_value("Access-Control-Allow-Origin") == "*");
        auto preflight = client.Options("/api/site");
        REQUIRE(preflight);
        CHECK(preflight->status == 204);
        CHECK(preflight->get_header_value("Access-Control-Allow-Headers").find("Range") !=
              std::string::npos);
    }
    SUBCASE("allowlist echoes known origins only") {
        auto config = Config(fx.root);
        config.cors_origins = {"https://museum.example"};
        testing::RunningServer running{config};
        auto client = running.Client();
        auto ok = client.Get("/api/site", {{"Origin", "https://museum.example"}});
        REQUIRE(ok);
        CHECK(ok->get_header_value("Access-Control-Allow-Origin") == "https://museum.example");
        CHECK(ok->get_header_value("Vary") == "Origin");
        auto other = client.Get("/api/site", {{"Origin", "https://elsewhere.example"}});
        REQUIRE(other);
        CHECK(!other->has_header("Access-Control-Allow-Origin"));
    }
}

TEST_CASE("a bundle removed at runtime yields server errors") {
    testing::TempDir site{"hf-site"};
    testing::TempDir out{"hf-bundle"};
    testing::WriteFixtureSite(site.path());
    auto const root = out.path() / "bundle";
    REQUIRE(heritage::bundle::Compile(site.path(), root).report.ok());

    testing::RunningServer running{Config(root)};
    auto client = running.Client();
    fs::remove(root / "site.json");
    auto res = client.Get("/api/site");
    REQUIRE(res);
    CHECK(res->status == 500);
    CHECK(json::parse(res->body)["error"] == "bundle unreadable");
    auto layer = client.Get("/api/layers/atlantis");
    REQUIRE(layer);
    CHECK(layer->status == 500);
}
