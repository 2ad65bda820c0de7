// Copyright 2026 The Subchar Authors.
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

#ifndef SUBCHAR_CLI_H_
#define SUBCHAR_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace subchar {

inline constexpr const char* kToolkitVersion = "0.1.0";

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitDataError = 1;
inline constexpr int kExitUsage = 2;

// Runs the command line tool. args excludes the program name. Data goes to
// out, diagnostics to err; stdin-style input is read from in.
int RunCli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
           std::ostream& err);

std::string VersionString();

}  // namespace subchar

#endif  // SUBCHAR_CLI_H_
