// Copyright 2026 The Narraframe Authors.
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

#ifndef NARRAFRAME_ERROR_HPP_
#define NARRAFRAME_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace narraframe {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input files that cannot be read or parsed as a whole.
class IoError : public Error {
 public:
  using Error::Error;
};

// Invalid or inconsistent pipeline configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A pipeline stage failed; carries the stage name.
class StageError : public Error {
 public:
  StageError(std::string stage, const std::string& cause)
      : Error(stage + ": " + cause), stage_(std::move(stage)) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

}  // namespace narraframe

#endif  // NARRAFRAME_ERROR_HPP_
