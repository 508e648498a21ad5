/*
 * Copyright 2026 The rddce Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <stdexcept>
#include <string>

namespace rddce {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A matrix that must be inverted (or a Gram matrix that must be solved) is singular.
class SingularMatrix : public Error {
 public:
  using Error::Error;
};

/// A configuration value violates its documented constraints. The message names the field.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Fewer usable subcarriers than the selection stage needs; the episode cannot continue.
class SelectionStarvation : public Error {
 public:
  using Error::Error;
};

}  // namespace rddce
