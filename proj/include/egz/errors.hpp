// Copyright 2026 The egz Authors
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

namespace egz {

/// Raised when an algorithm invariant is violated. Never expected on valid
/// input; the message names the invariant and the offending location.
class InvariantError : public std::logic_error {
 public:
  explicit InvariantError(const std::string& what) : std::logic_error(what) {}
};

#define EGZ_CHECK(cond, msg)                                                      \
  do {                                                                            \
    if (!(cond)) throw ::egz::InvariantError(std::string(__func__) + ": " + (msg)); \
  } while (0)

}  // namespace egz
