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

// heritage-forge: validate, compile and serve heritage site bundles.

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "heritage_forge/bundle/compiler.hpp"
#include "heritage_forge/errors.hpp"
#include "heritage_forge/logging.hpp"
#include "heritage_forge/server/server.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitIo = 2;

auto PrintReport(heritage::bundle::CompileReport const& report, bool as_json)
    -> int {
    if (as_json) {
        std::cout << report.ToJson().dump(2) << '\n';
    }
    else {
        std::cout << report.ToText();
    }
    if (report.io_failure) {
        return kExitIo;
    }
    return report.ok() ? kExitOk : kExitInvalid;
}

}  // namespace

auto main(int argc, char** argv) -> int {
    heritage::ConfigureLogging();

    CLI::App app{"Compile geo-temporal heritage sites into static bundles and "
                 "serve them over HTTP."};
    app.require_subcommand(1);
    app.fallthrough();
    bool as_json = false;
    app.add_flag("--json", as_json, "Print the compile report as JSON");

    std::string site_dir;
    heritage::bundle::CompileOptions options;

    auto* validate = app.add_subcommand("validate", "Check a site without writing");
    validate->add_option("site_dir", site_dir, "Directory holding site.json")
        ->required();
    validate->add_option("--max-preview", options.max_preview,
                         "Longest preview side in pixels")
        ->check(CLI::PositiveNumber);

    std::string out_dir;
    auto* compile = app.add_subcommand("compile", "Validate and write a bundle");
    compile->add_option("site_dir", site_dir, "Directory holding site.json")
        ->required();
    compile->add_option("-o,--out", out_dir, "Bundle output directory")
        ->required();
    compile->add_option("--max-preview", options.max_preview,
                        "Longest preview side in pixels")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    compile->add_option("-j,--jobs", options.jobs,
                        "Parallel asset checks (0 = all cores)");

    heritage::server::ServerConfig serve_config;
    std::string viewer_dir;
    auto* serve = app.add_subcommand("serve", "Serve a compiled bundle");
    serve->add_option("bundle_dir", serve_config.bundle_dir,
                      "Output of compile")
        ->required();
    serve->add_option("--port", serve_config.port, "TCP port")
        ->check(CLI::Range(0, 65535))
        ->capture_default_str();
    serve->add_option("--bind", serve_config.host, "Address to listen on")
        ->capture_default_str();
    serve->add_option("--viewer-dir", viewer_dir,
                      "Built viewer files to serve at /");
    serve->add_option("--cors-origin", serve_config.cors_origins,
                      "Allowed origin (repeatable); default allows any");

    try {
        app.parse(argc, argv);
    } catch (CLI::ParseError const& e) {
        // Help and version exit 0; usage errors share the I/O exit code.
        return app.exit(e) == 0 ? kExitOk : kExitIo;
    }

    try {
        if (validate->parsed()) {
            return PrintReport(heritage::bundle::Validate(site_dir, options),
                               as_json);
        }
        if (compile->parsed()) {
            auto const result =
                heritage::bundle::Compile(site_dir, out_dir, options);
            return PrintReport(result.report, as_json);
        }
        if (!viewer_dir.empty()) {
            serve_config.viewer_dir = viewer_dir;
        }
        heritage::server::BundleServer server{serve_config};
        server.Listen();
        return kExitOk;
    } catch (heritage::ConfigError const& e) {
        std::cerr << "heritage-forge: " << e.what() << '\n';
        return kExitIo;
    } catch (std::exception const& e) {
        std::cerr << "heritage-forge: " << e.what() << '\n';
        return kExitIo;
    }
}
