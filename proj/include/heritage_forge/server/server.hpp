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

#ifndef HERITAGE_FORGE_SERVER_SERVER_HPP
#define HERITAGE_FORGE_SERVER_SERVER_HPP

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace heritage::server {

inline constexpr char const* kImmutableCacheControl =
    "public, max-age=31536000, immutable";

struct ServerConfig {
    std::filesystem::path bundle_dir;
    std::string host{"127.0.0.1"};
    int port{8080};
    // Empty means any origin may read the API.
    std::vector<std::string> cors_origins;
    std::optional<std::filesystem::path> viewer_dir;
};

/// True for names the compiler emits under assets/: 16 hex digits, a dot
/// and a short lowercase extension. Everything else is rejected before any
/// filesystem access.
[[nodiscard]] auto IsHashedAssetName(std::string_view name) noexcept -> bool;

[[nodiscard]] auto ContentTypeForExtension(std::string_view ext) noexcept
    -> std::string_view;

/// Read-only HTTP front end for a compiled bundle.
///
///   GET /api/site              site index, ETag + If-None-Match
///   GET /api/layers/{id}       layer index
///   GET|HEAD /assets/{name}    immutable bytes, single-range requests
///   GET /...                   viewer files when a viewer_dir is configured
///
/// Errors are JSON envelopes {"error": ..., "code": ...}.
class BundleServer {
  public:
    /// Throws ConfigError unless bundle_dir holds a schema-1 site.json.
    explicit BundleServer(ServerConfig config);
    ~BundleServer();

    BundleServer(BundleServer const&) = delete;
    auto operator=(BundleServer const&) -> BundleServer& = delete;

    [[nodiscard]] auto config() const noexcept -> ServerConfig const&;

    /// Binds config().host:config().port. Throws ConfigError on failure.
    void Bind();
    /// Binds an ephemeral port on config().host and returns it.
    [[nodiscard]] auto BindToAnyPort() -> int;
    /// Serves until Stop(); requires a prior bind.
    void Listen();
    void Stop();
    void WaitUntilReady() const;

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace heritage::server

#endif  // HERITAGE_FORGE_SERVER_SERVER_HPP
