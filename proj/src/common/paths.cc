// Copyright 2026 The Aspire Authors.
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

#include "common/paths.h"

#include <cstdlib>

namespace aspire {

std::string DataDir() {
  if (const char *env = std::getenv("ASPIRE_DATA_DIR"); env != nullptr && *env != '\0') {
    return env;
  }
  return ASPIRE_DATA_DIR;
}

std::string DataPath(const std::string &relative) { return DataDir() + "/" + relative; }

}  // namespace aspire
