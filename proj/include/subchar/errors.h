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

#ifndef SUBCHAR_ERRORS_H_
#define SUBCHAR_ERRORS_H_

#include <stdexcept>
#include <string>

namespace subchar {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A file could not be opened, read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

// Input data (table file, model file, UTF-8) is malformed.
class FormatError : public Error {
 public:
  using Error::Error;
};

// Invalid option combination, e.g. an inconsistent SchemeConfig.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace subchar

#endif  // SUBCHAR_ERRORS_H_
