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

#ifndef ASPIRE_COMMON_TEXT_H_
#define ASPIRE_COMMON_TEXT_H_

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace aspire {

std::string Trim(std::string_view s);
std::string Lower(std::string_view s);
std::vector<std::string> Split(std::string_view s, char sep);
std::vector<std::string> SplitWhitespace(std::string_view s);
std::string Join(const std::vector<std::string> &parts, std::string_view sep);
bool StartsWith(std::string_view s, std::string_view prefix);
std::string ReplaceAll(std::string s, std::string_view from,
                       std::string_view to);

// Formats a double with a fixed number of decimals.
std::string FormatFixed(double value, int decimals);

// Whole-file helpers. Both throw kIo on failure.
std::string ReadFile(const std::string &path);
void WriteFile(const std::string &path, const std::string &contents);

// While alive, every ReadFile call records the path and the digest of
// what it read. At most one recorder exists at a time.
class ReadRecorder {
 public:
  ReadRecorder();
  ~ReadRecorder();
  ReadRecorder(const ReadRecorder &) = delete;
  ReadRecorder &operator=(const ReadRecorder &) = delete;

  std::map<std::string, std::string> Digests() const;
};

// 64-bit FNV-1a, printed as 16 hex digits.
uint64_t Fnv1a(std::string_view data);
std::string HexDigest(std::string_view data);

// Parses "key = value" lines; '#' starts a comment.
std::map<std::string, std::string> ParseKeyValues(std::string_view text);

// Minimal CSV with quoting of fields containing ',', '"' or newlines.
using CsvRow = std::vector<std::string>;
std::vector<CsvRow> ParseCsv(std::string_view text);
std::string CsvEscape(std::string_view field);
std::string FormatCsvRow(const CsvRow &row);

}  // namespace aspire

#endif  // ASPIRE_COMMON_TEXT_H_
