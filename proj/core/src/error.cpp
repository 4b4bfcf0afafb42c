// Copyright 2026 The chiralq Authors
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

#include "chiralq/error.hpp"

namespace chiralq {

const char* to_string(ErrorCategory category) noexcept {
  switch (category) {
    case ErrorCategory::Parse:
      return "parse";
    case ErrorCategory::Range:
      return "range";
    case ErrorCategory::Consistency:
      return "consistency";
    case ErrorCategory::Dimension:
      return "dimension";
    case ErrorCategory::Selection:
      return "selection";
    case ErrorCategory::Config:
      return "config";
    case ErrorCategory::Compute:
      return "compute";
    case ErrorCategory::Io:
      return "io";
  }
  return "unknown";
}

}  // namespace chiralq
