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

#include "heritage_forge/bundle/content_hash.hpp"

#include <array>
#include <fstream>
#include <memory>
#include <stdexcept>
#include <system_error>

#include <openssl/evp.h>

#include "fmt/format.h"

namespace heritage::bundle {

namespace {

using Digest = std::array<unsigned char, 32>;

class Sha256 {
  public:
    Sha256() : ctx_{EVP_MD_CTX_new(), &EVP_MD_CTX_free} {
        if (!ctx_ || EVP_DigestInit_ex(ctx_.get(), EVP_sha256(), nullptr) != 1) {
            throw std::runtime_error{"SHA-256 initialisation failed"};
        }
    }

    void Update(void const* data, std::size_t size) {
        if (EVP_DigestUpdate(ctx_.get(), data, size) != 1) {
            throw std::runtime_error{"SHA-256 update failed"};
        }
    }

    auto Finish() -> Digest {
        Digest digest{};
        unsigned int length = 0;
        if (EVP_DigestFinal_ex(ctx_.get(), digest.data(), &length) != 1 ||
            length != digest.size()) {
            throw std::runtime_error{"SHA-256 finalisation failed"};
        }
        return digest;
    }

  private:
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx_;
};

auto ToHex(Digest const& digest, std::size_t chars) -> std::string {
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out;
    out.reserve(digest.size() * 2);
    for (auto byte : digest) {
        out.push_back(kHex[byte >> 4U]);
        out.push_back(kHex[byte & 0x0FU]);
    }
    out.resize(chars);
    return out;
}

}  // namespace

auto Sha256Hex(std::span<std::uint8_t const> bytes) -> std::string {
    Sha256 sha;
    sha.Update(bytes.data(), bytes.size());
    return ToHex(sha.Finish(), 64);
}

auto ContentHash(std::span<std::uint8_t const> bytes) -> std::string {
    Sha256 sha;
    sha.Update(bytes.data(), bytes.size());
    return ToHex(sha.Finish(), kContentHashLength);
}

auto ContentHash(std::string_view bytes) -> std::string {
    Sha256 sha;
    sha.Update(bytes.data(), bytes.size());
    return ToHex(sha.Finish(), kContentHashLength);
}

auto ContentHashOfFile(std::filesystem::path const& path) -> std::string {
    std::ifstream in{path, std::ios::binary};
    if (!in) {
        throw std::system_error{std::make_error_code(std::errc::io_error),
                                fmt::format("cannot open {}", path.string())};
    }
    Sha256 sha;
    std::array<char, 1 << 16> buffer{};
    while (in) {
        in.read(buffer.data(), buffer.size());
        sha.Update(buffer.data(), static_cast<std::size_t>(in.gcount()));
    }
    if (in.bad()) {
        throw std::system_error{std::make_error_code(std::errc::io_error),
                                fmt::format("cannot read {}", path.string())};
    }
    return ToHex(sha.Finish(), kContentHashLength);
}

}  // namespace heritage::bundle
