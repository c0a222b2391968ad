/* Copyright 2026 The OmniSense Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef OMNISENSE_ERROR_H_
#define OMNISENSE_ERROR_H_

#include <stdexcept>
#include <string>

namespace omnisense {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed configuration, profile, or instance data. The CLI maps this to
// exit code 2.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Argument outside the mathematical domain of an operation (e.g. a point at
// or beyond 90 degrees from a gnomonic projection center).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Argument outside an index or pixel range.
class RangeError : public Error {
 public:
  using Error::Error;
};

}  // namespace omnisense

#endif  // OMNISENSE_ERROR_H_
