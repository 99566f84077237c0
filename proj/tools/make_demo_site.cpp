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

// Writes the three-layer demonstration site used by the tests.

#include <filesystem>
#include <iostream>

#include "fixture_site.hpp"

auto main(int argc, char** argv) -> int {
    if (argc != 2) {
        std::cerr << "usage: make-demo-site <dir>\n";
        return 2;
    }
    std::filesystem::path const dir{argv[1]};
    std::filesystem::create_directories(dir);
    heritage::testing::WriteFixtureSite(dir);
    std::cout << "wrote " << dir.string() << '\n';
    return 0;
}
