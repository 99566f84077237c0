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

#include "heritage_forge/logging.hpp"

#include <cstdlib>
#include <string_view>

#include "spdlog/sinks/stdout_color_sinks.h"
#include "spdlog/spdlog.h"

namespace heritage {

namespace {

auto LevelFromEnv() -> spdlog::level::level_enum {
    char const* raw = std::getenv(kLogEnvVar);
    if (raw == nullptr) {
        return spdlog::level::warn;
    }
    std::string_view const value{raw};
    if (value == "error") {
        return spdlog::level::err;
    }
    if (value == "info") {
        return spdlog::level::info;
    }
    if (value == "debug") {
        return spdlog::level::debug;
    }
    return spdlog::level::warn;
}

}  // namespace

void ConfigureLogging() {
    if (auto existing = spdlog::get("heritage-forge")) {
        existing->set_level(LevelFromEnv());
        return;
    }
    auto logger = spdlog::stderr_color_mt("heritage-forge");
    logger->set_pattern("[%H:%M:%S.%e] [%^%l%$] %v");
    logger->set_level(LevelFromEnv());
    spdlog::set_default_logger(std::move(logger));
}

}  // namespace heritage
