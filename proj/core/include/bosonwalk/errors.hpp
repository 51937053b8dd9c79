// Copyright 2026 The bosonwalk authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace bosonwalk {

/// Base class for all errors thrown by the library.
class Error : public std::runtime_error {
  public:
    explicit Error(const std::string &what) : std::runtime_error(what) {}
};

/// An argument violated a documented precondition (bad size, non-unitary
/// matrix, mismatched dimensions, ...).
class ValidationError : public Error {
  public:
    using Error::Error;
};

/// A vertex, mode, or multiset key does not exist in the queried structure.
class LookupError : public Error {
  public:
    using Error::Error;
};

/// Two requests resolved to the same canonical multiset key with different
/// values (defect patterns are symmetric by construction).
class SymmetryConflictError : public Error {
  public:
    using Error::Error;
};

/// A resource limit was exceeded (walker count, permanent size, state space).
class CapError : public Error {
  public:
    using Error::Error;
};

/// A network cannot be embedded into the requested walk topology.
class SizingError : public Error {
  public:
    using Error::Error;
};

/// A configuration document failed validation. `path()` is the JSON-pointer
/// style location of the offending field.
class ConfigError : public Error {
  public:
    ConfigError(const std::string &path, const std::string &message)
        : Error("config error at " + (path.empty() ? std::string("/") : path) + ": " + message), path_(path) {}

    const std::string &path() const {
        return path_;
    }

  private:
    std::string path_;
};

}  // namespace bosonwalk
