/*
   Copyright 2026 The vnets Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <stdexcept>
#include <string>

namespace vnets {

/// Caller passed something malformed: bad flags, wrong shapes, mixed fields.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input is well formed but outside the domain of the operation (inv(0), zero vector, singular matrix).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Plane does not meet the nucleus plane, so it is not part of the classified family.
class OutOfFamilyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// No parameter value satisfies the constraints of a representative.
class ConfigurationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Orbit enumeration would exceed the configured key budget.
class ResourceError : public std::runtime_error {
 public:
  ResourceError(const std::string& what, std::size_t keys_so_far)
      : std::runtime_error(what), keys_so_far_(keys_so_far) {}

  std::size_t keys_so_far() const noexcept { return keys_so_far_; }

 private:
  std::size_t keys_so_far_;
};

/// Internal consistency check failed; never expected on correct input.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace vnets
