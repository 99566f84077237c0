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

#include "heritage_forge/server/server.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <sstream>
#include <utility>

#include "fmt/format.h"
#include "heritage_forge/bundle/content_hash.hpp"
#include "heritage_forge/content_model/types.hpp"
#include "heritage_forge/errors.hpp"
#include "httplib.h"
#include "json.hpp"
#include "spdlog/spdlog.h"

namespace heritage::server {

namespace fs = std::filesystem;

namespace {

constexpr std::size_t kReadChunk = 64 * 1024;

void SendError(httplib::Response& res, int status, std::string_view message) {
    res.status = status;
    nlohmann::json const body{{"error", message}, {"code", status}};
    res.set_content(body.dump(), "application/json");
}

auto ReadWholeFile(fs::path const& path) -> std::optional<std::string> {
    std::ifstream in{path, std::ios::binary};
    if (!in) {
        return std::nullopt;
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) {
        return std::nullopt;
    }
    return std::move(buffer).str();
}

auto Lowercase(std::string s) -> std::string {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) {
        return static_cast<char>(std::tolower(c));
    });
    return s;
}

auto Quoted(std::string_view tag) -> std::string {
    return fmt::format("\"{}\"", tag);
}

// If-None-Match holds "*" or a comma-separated list of (possibly weak) tags.
auto MatchesIfNoneMatch(httplib::Request const& req, std::string const& etag)
    -> bool {
    if (!req.has_header("If-None-Match")) {
        return false;
    }
    auto const value = req.get_header_value("If-None-Match");
    std::string_view header = value;
    while (!header.empty()) {
        auto const comma = header.find(',');
        auto item = header.substr(0, comma);
        header = comma == std::string_view::npos ? std::string_view{}
                                                 : header.substr(comma + 1);
        while (!item.empty() && item.front() == ' ') {
            item.remove_prefix(1);
        }
        while (!item.empty() && item.back() == ' ') {
            item.remove_suffix(1);
        }
        if (item.starts_with("W/")) {
            item.remove_prefix(2);
        }
        if (item == "*" || item == etag) {
            return true;
        }
    }
    return false;
}

void IgnoreRanges(httplib::Request const& req) {
    // JSON and viewer files are served whole; httplib would otherwise slice
    // them when the client sends a Range header.
    const_cast<httplib::Request&>(req).ranges.clear();
}

void SendNotModified(httplib::Response& res, std::string const& etag) {
    res.status = 304;
    res.set_header("ETag", etag);
}

void SendDocument(httplib::Request const& req, httplib::Response& res,
                  std::string body, std::string_view content_type,
                  std::string_view cache_control) {
    IgnoreRanges(req);
    auto const etag = Quoted(bundle::ContentHash(body));
    res.set_header("Cache-Control", std::string{cache_control});
    if (MatchesIfNoneMatch(req, etag)) {
        SendNotModified(res, etag);
        return;
    }
    res.status = 200;
    res.set_header("ETag", etag);
    res.set_content(std::move(body), std::string{content_type});
}

auto StartsWithPath(fs::path const& path, fs::path const& prefix) -> bool {
    auto const [p, _] =
        std::mismatch(prefix.begin(), prefix.end(), path.begin(), path.end());
    return p == prefix.end();
}

auto ViewerContentType(std::string const& ext) -> std::string_view {
    static constexpr std::array<std::pair<std::string_view, std::string_view>, 15>
        kTypes{{{".html", "text/html; charset=utf-8"},
                {".js", "text/javascript; charset=utf-8"},
                {".mjs", "text/javascript; charset=utf-8"},
                {".css", "text/css; charset=utf-8"},
                {".json", "application/json"},
                {".map", "application/json"},
                {".svg", "image/svg+xml"},
                {".png", "image/png"},
                {".jpg", "image/jpeg"},
                {".jpeg", "image/jpeg"},
                {".ico", "image/x-icon"},
                {".woff2", "font/woff2"},
                {".wasm", "application/wasm"},
                {".txt", "text/plain; charset=utf-8"},
                {".webmanifest", "application/manifest+json"}}};
    for (auto const& [key, type] : kTypes) {
        if (key == ext) {
            return type;
        }
    }
    return "application/octet-stream";
}

struct ByteRange {
    std::size_t first{};
    std::size_t last{};
};

// Resolves the parsed Range header against `size`. Returns nullopt when the
// request cannot be satisfied (multiple ranges included).
auto ResolveRange(httplib::Ranges const& ranges, std::size_t size)
    -> std::optional<ByteRange> {
    if (ranges.size() != 1 || size == 0) {
        return std::nullopt;
    }
    auto const [first, last] = ranges.front();
    auto const n = static_cast<long long>(size);
    if (first == -1) {
        if (last <= 0) {
            return std::nullopt;
        }
        auto const suffix = std::min<long long>(last, n);
        return ByteRange{static_cast<std::size_t>(n - suffix), size - 1};
    }
    if (first >= n || (last != -1 && last < first)) {
        return std::nullopt;
    }
    auto const end = last == -1 ? n - 1 : std::min<long long>(last, n - 1);
    return ByteRange{static_cast<std::size_t>(first),
                     static_cast<std::size_t>(end)};
}

}  // namespace

auto IsHashedAssetName(std::string_view name) noexcept -> bool {
    auto const hex = bundle::kContentHashLength;
    if (name.size() < hex + 2 || name.size() > hex + 9 || name[hex] != '.') {
        return false;
    }
    auto const is_hex = [](char c) {
        return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f');
    };
    auto const is_ext = [](char c) {
        return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z');
    };
    return std::all_of(name.begin(), name.begin() + hex, is_hex) &&
           std::all_of(name.begin() + hex + 1, name.end(), is_ext);
}

auto ContentTypeForExtension(std::string_view ext) noexcept -> std::string_view {
    if (ext == "glb") {
        return "model/gltf-binary";
    }
    if (ext == "png") {
        return "image/png";
    }
    if (ext == "jpg" || ext == "jpeg") {
        return "image/jpeg";
    }
    if (ext == "mp4" || ext == "m4v") {
        return "video/mp4";
    }
    if (ext == "webm") {
        return "video/webm";
    }
    if (ext == "ogv") {
        return "video/ogg";
    }
    if (ext == "mov") {
        return "video/quicktime";
    }
    return "application/octet-stream";
}

struct BundleServer::Impl {
    ServerConfig config;
    fs::path root;
    std::optional<fs::path> viewer_root;
    httplib::Server http;
    bool bound{false};

    explicit Impl(ServerConfig c) : config{std::move(c)} {}

    void Install();
    void Cors(httplib::Request const& req, httplib::Response& res) const;
    void ServeSite(httplib::Request const& req, httplib::Response& res) const;
    void ServeLayer(httplib::Request const& req, httplib::Response& res) const;
    void ServeAsset(httplib::Request const& req, httplib::Response& res) const;
    void ServeViewer(httplib::Request const& req, httplib::Response& res) const;
};

void BundleServer::Impl::Install() {
    http.Get("/api/site", [this](auto const& req, auto& res) {
        ServeSite(req, res);
    });
    http.Get(R"(/api/layers/([^/]+))", [this](auto const& req, auto& res) {
        ServeLayer(req, res);
    });
    http.Get(R"(/assets/(.*))", [this](auto const& req, auto& res) {
        ServeAsset(req, res);
    });
    if (viewer_root) {
        http.Get(R"(/.*)", [this](auto const& req, auto& res) {
            ServeViewer(req, res);
        });
    }
    http.Options(R"(.*)", [](auto const&, auto& res) {
        res.status = 204;
        res.set_header("Access-Control-Allow-Methods", "GET, HEAD, OPTIONS");
        res.set_header("Access-Control-Allow-Headers", "Range, If-None-Match");
        res.set_header("Access-Control-Max-Age", "600");
    });
    http.set_error_handler([](auto const&, auto& res) {
        if (!res.body.empty()) {
            return httplib::Server::HandlerResponse::Unhandled;
        }
        auto const* reason = httplib::status_message(res.status);
        SendError(res, res.status,
                  res.status == 404 ? "not found" : Lowercase(reason));
        return httplib::Server::HandlerResponse::Handled;
    });
    http.set_exception_handler([](auto const&, auto& res, std::exception_ptr ep) {
        try {
            std::rethrow_exception(ep);
        } catch (std::exception const& e) {
            spdlog::error("request failed: {}", e.what());
        } catch (...) {
            spdlog::error("request failed");
        }
        SendError(res, 500, "internal error");
    });
    http.set_post_routing_handler([this](auto const& req, auto& res) {
        Cors(req, res);
    });
    http.set_logger([](auto const& req, auto const& res) {
        spdlog::debug("{} {} -> {}", req.method, req.path, res.status);
    });
}

void BundleServer::Impl::Cors(httplib::Request const& req,
                              httplib::Response& res) const {
    if (!req.has_header("Origin")) {
        return;
    }
    auto const origin = req.get_header_value("Origin");
    auto const& allowed = config.cors_origins;
    if (allowed.empty()) {
        res.set_header("Access-Control-Allow-Origin", "*");
    }
    else if (std::find(allowed.begin(), allowed.end(), origin) != allowed.end()) {
        res.set_header("Access-Control-Allow-Origin", origin);
        res.set_header("Vary", "Origin");
    }
    else {
        return;
    }
    res.set_header("Access-Control-Expose-Headers",
                   "ETag, Content-Range, Accept-Ranges, Content-Length");
}

void BundleServer::Impl::ServeSite(httplib::Request const& req,
                                   httplib::Response& res) const {
    auto body = ReadWholeFile(root / "site.json");
    if (!body) {
        IgnoreRanges(req);
        SendError(res, 500, "bundle unreadable");
        return;
    }
    SendDocument(req, res, std::move(*body), "application/json", "no-cache");
}

void BundleServer::Impl::ServeLayer(httplib::Request const& req,
                                    httplib::Response& res) const {
    IgnoreRanges(req);
    auto const id = req.matches[1].str();
    if (!content::IsSlug(id)) {
        SendError(res, 404, "layer not found");
        return;
    }
    auto body = ReadWholeFile(root / "layers" / (id + ".json"));
    if (!body) {
        std::error_code ec;
        bool const intact = fs::is_regular_file(root / "site.json", ec);
        SendError(res, intact ? 404 : 500,
                  intact ? "layer not found" : "bundle unreadable");
        return;
    }
    SendDocument(req, res, std::move(*body), "application/json", "no-cache");
}

void BundleServer::Impl::ServeAsset(httplib::Request const& req,
                                    httplib::Response& res) const {
    auto const name = req.matches[1].str();
    std::error_code ec;
    auto const path = root / "assets" / name;
    if (!IsHashedAssetName(name) || !fs::is_regular_file(path, ec)) {
        IgnoreRanges(req);
        SendError(res, 404, "asset not found");
        return;
    }
    auto const size = static_cast<std::size_t>(fs::file_size(path, ec));
    if (ec) {
        IgnoreRanges(req);
        SendError(res, 404, "asset not found");
        return;
    }
    auto const dot = name.find('.');
    auto const etag = Quoted(name.substr(0, dot));
    res.set_header("Cache-Control", kImmutableCacheControl);
    res.set_header("Accept-Ranges", "bytes");
    if (MatchesIfNoneMatch(req, etag)) {
        IgnoreRanges(req);
        SendNotModified(res, etag);
        return;
    }
    res.set_header("ETag", etag);

    if (!req.ranges.empty()) {
        auto const range = ResolveRange(req.ranges, size);
        IgnoreRanges(req);
        if (!range) {
            res.set_header("Content-Range", fmt::format("bytes */{}", size));
            SendError(res, 416, "range not satisfiable");
            return;
        }
        // httplib slices the provider output and writes Content-Range.
        const_cast<httplib::Request&>(req).ranges.emplace_back(
            static_cast<ssize_t>(range->first), static_cast<ssize_t>(range->last));
        res.status = 206;
    }
    else {
        res.status = 200;
    }

    auto stream = std::make_shared<std::ifstream>(path, std::ios::binary);
    if (!*stream) {
        IgnoreRanges(req);
        res.headers.erase("ETag");
        SendError(res, 500, "bundle unreadable");
        return;
    }
    auto const ext = name.substr(dot + 1);
    res.set_content_provider(
        size, std::string{ContentTypeForExtension(ext)},
        [stream](std::size_t offset, std::size_t length, httplib::DataSink& sink) {
            std::array<char, kReadChunk> buffer{};
            stream->clear();
            stream->seekg(static_cast<std::streamoff>(offset));
            auto const want = std::min(length, buffer.size());
            stream->read(buffer.data(), static_cast<std::streamsize>(want));
            auto const got = static_cast<std::size_t>(stream->gcount());
            return got > 0 && sink.write(buffer.data(), got);
        });
}

void BundleServer::Impl::ServeViewer(httplib::Request const& req,
                                     httplib::Response& res) const {
    IgnoreRanges(req);
    auto relative = fs::path{req.path}.relative_path();
    std::error_code ec;
    auto candidate = fs::weakly_canonical(*viewer_root / relative, ec);
    if (ec || !StartsWithPath(candidate, *viewer_root)) {
        SendError(res, 404, "not found");
        return;
    }
    if (fs::is_directory(candidate, ec)) {
        candidate /= "index.html";
    }
    auto body = fs::is_regular_file(candidate, ec) ? ReadWholeFile(candidate)
                                                   : std::nullopt;
    if (!body) {
        SendError(res, 404, "not found");
        return;
    }
    SendDocument(req, res, std::move(*body),
                 ViewerContentType(candidate.extension().string()), "no-cache");
}

BundleServer::BundleServer(ServerConfig config)
    : impl_{std::make_unique<Impl>(std::move(config))} {
    auto& cfg = impl_->config;
    std::error_code ec;
    impl_->root = fs::canonical(cfg.bundle_dir, ec);
    if (ec) {
        throw ConfigError{fmt::format("bundle directory {} does not exist",
                                      cfg.bundle_dir.string())};
    }
    auto const text = ReadWholeFile(impl_->root / "site.json");
    if (!text) {
        throw ConfigError{fmt::format("{} has no site.json; run compile first",
                                      impl_->root.string())};
    }
    auto const site = nlohmann::json::parse(*text, nullptr, false);
    if (site.is_discarded() || !site.is_object() ||
        site.value("schema_version", nlohmann::json{}) !=
            content::kSchemaVersion) {
        throw ConfigError{fmt::format(
            "{}/site.json is not a schema_version {} bundle index",
            impl_->root.string(), content::kSchemaVersion)};
    }
    if (cfg.viewer_dir) {
        impl_->viewer_root = fs::canonical(*cfg.viewer_dir, ec);
        if (ec || !fs::is_directory(*impl_->viewer_root)) {
            throw ConfigError{fmt::format("viewer directory {} does not exist",
                                          cfg.viewer_dir->string())};
        }
    }
    impl_->Install();
}

BundleServer::~BundleServer() { Stop(); }

auto BundleServer::config() const noexcept -> ServerConfig const& {
    return impl_->config;
}

void BundleServer::Bind() {
    auto const& cfg = impl_->config;
    if (!impl_->http.bind_to_port(cfg.host, cfg.port)) {
        throw ConfigError{
            fmt::format("cannot bind {}:{}", cfg.host, cfg.port)};
    }
    impl_->bound = true;
}

auto BundleServer::BindToAnyPort() -> int {
    auto const port = impl_->http.bind_to_any_port(impl_->config.host);
    if (port < 0) {
        throw ConfigError{
            fmt::format("cannot bind {} on any port", impl_->config.host)};
    }
    impl_->config.port = port;
    impl_->bound = true;
    return port;
}

void BundleServer::Listen() {
    if (!impl_->bound) {
        Bind();
    }
    spdlog::info("serving {} on http://{}:{}", impl_->root.string(),
                 impl_->config.host, impl_->config.port);
    impl_->http.listen_after_bind();
}

void BundleServer::Stop() {
    if (impl_ && impl_->http.is_running()) {
        impl_->http.stop();
    }
}

void BundleServer::WaitUntilReady() const { impl_->http.wait_until_ready(); }

}  // namespace heritage::server
