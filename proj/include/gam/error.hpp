// Copyright 2026 The GAM Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GAM_ERROR_HPP_
#define GAM_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gam {

// Input-contract violation: malformed files, inconsistent annotations,
// out-of-range arguments. Maps to exit code 1 at the CLI.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
  InputError(const std::string& source, std::size_t line, const std::string& what)
      : std::runtime_error(source + ":" + std::to_string(line) + ": " + what),
        line_(line) {}

  // 1-based line of the offending record, 0 when not line-oriented.
  std::size_t line() const { return line_; }

 private:
  std::size_t line_ = 0;
};

// A file could not be opened, read or written.
class IoError : public InputError {
 public:
  explicit IoError(const std::string& what) : InputError(what) {}
};

// A computed result broke one of its own invariants. Maps to exit code 2.
class InvariantError : public std::logic_error {
 public:
  explicit InvariantError(const std::string& what) : std::logic_error(what) {}
};

#define GAM_CHECK(cond, msg)                                      \
  do {                                                            \
    if (!(cond)) throw ::gam::InvariantError(std::string(msg));   \
  } while (0)

}  // namespace gam

#endif  // GAM_ERROR_HPP_
