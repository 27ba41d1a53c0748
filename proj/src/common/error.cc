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

#include "common/error.h"

namespace aspire {

const char *ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParse: return "parse error";
    case ErrorCode::kSemantic: return "semantic error";
    case ErrorCode::kGroundLimit: return "ground limit exceeded";
    case ErrorCode::kOracleCap: return "oracle cap exceeded";
    case ErrorCode::kIo: return "i/o error";
    case ErrorCode::kNotFound: return "not found";
    case ErrorCode::kNoPlan: return "no plan";
    case ErrorCode::kInvalidArgument: return "invalid argument";
    case ErrorCode::kTemplateFill: return "template fill error";
    case ErrorCode::kUnparseableQuestion: return "unparseable question";
    case ErrorCode::kInternal: return "internal error";
  }
  return "unknown error";
}

void Fail(ErrorCode code, const std::string &message) {
  throw Error(code, message);
}

}  // namespace aspire
