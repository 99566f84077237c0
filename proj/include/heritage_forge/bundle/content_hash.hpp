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

#ifndef HERITAGE_FORGE_BUNDLE_CONTENT_HASH_HPP
#define HERITAGE_FORGE_BUNDLE_CONTENT_HASH_HPP

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>

namespace heritage::bundle {

inline constexpr std::size_t kContentHashLength = 16;

/// First 16 lowercase hex characters of the SHA-256 of `bytes`.
[[nodiscard]] auto ContentHash(std::span<std::uint8_t const> bytes)
    -> std::string;
[[nodiscard]] auto ContentHash(std::string_view bytes) -> std::string;

/// Streams a file through SHA-256; throws std::system_error on I/O errors.
[[nodiscard]] auto ContentHashOfFile(std::filesystem::path const& path)
    -> std::string;

/// Full 64-character SHA-256 hex digest.
[[nodiscard]] auto Sha256Hex(std::span<std::uint8_t const> bytes)
    -> std::string;

}  // namespace heritage::bundle

#endif  // HERITAGE_FORGE_BUNDLE_CONTENT_HASH_HPP
