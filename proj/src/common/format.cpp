// Copyright 2026 The artigen Authors
// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "common/format.hpp"

#include <charconv>
#include <cmath>

namespace artigen {

std::string format_real(double value) {
  if (value == 0.0) return "0";
  char buffer[64];
  const double magnitude = std::fabs(value);
  const auto style = (magnitude >= 1e-3 && magnitude < 1e6) ? std::chars_format::fixed : std::chars_format::scientific;
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value, style);
  return std::string(buffer, result.ptr);
}

}  // namespace artigen
