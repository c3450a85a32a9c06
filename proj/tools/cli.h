// Copyright 2026 The onebit Authors.
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

// Command-line front end: run, range-check and selftest.

#ifndef ONEBIT_TOOLS_CLI_H_
#define ONEBIT_TOOLS_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace onebit::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;

// args excludes the program name.
int Main(const std::vector<std::string>& args, std::ostream& out,
         std::ostream& err);

// Reads a flat key=value file into "--key=value" tokens. '#' starts a
// comment. Throws onebit::ConfigError on a malformed line or a missing file.
std::vector<std::string> ReadConfigFile(const std::string& path);

}  // namespace onebit::cli

#endif  // ONEBIT_TOOLS_CLI_H_
