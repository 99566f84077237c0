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

#ifndef HERITAGE_FORGE_LOGGING_HPP
#define HERITAGE_FORGE_LOGGING_HPP

namespace heritage {

/// Name of the environment variable selecting log verbosity
/// (error|warn|info|debug). Unset or unknown values mean "warn".
inline constexpr char const* kLogEnvVar = "HERITAGE_FORGE_LOG";

/// Configures the process-wide logger from HERITAGE_FORGE_LOG. Logs go to
/// stderr so report output on stdout stays machine-readable.
void ConfigureLogging();

}  // namespace heritage

#endif  // HERITAGE_FORGE_LOGGING_HPP
