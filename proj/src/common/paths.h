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

#ifndef ASPIRE_COMMON_PATHS_H_
#define ASPIRE_COMMON_PATHS_H_

#include <string>

namespace aspire {

// Root of the shipped data directory: $ASPIRE_DATA_DIR when set, else the
// build-time default.
std::string DataDir();
std::string DataPath(const std::string &relative);

}  // namespace aspire

#endif  // ASPIRE_COMMON_PATHS_H_
