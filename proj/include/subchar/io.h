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

#ifndef SUBCHAR_IO_H_
#define SUBCHAR_IO_H_

#include <istream>
#include <span>
#include <string>
#include <vector>

namespace subchar {

// One entry per line, trailing CR removed. Throws IoError.
std::vector<std::string> ReadLines(std::istream& in);
std::vector<std::string> ReadLines(const std::string& path);

// LF-terminated lines. Throws IoError.
void WriteLines(const std::string& path, std::span<const std::string> lines);

}  // namespace subchar

#endif  // SUBCHAR_IO_H_
