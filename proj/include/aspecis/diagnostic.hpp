// Copyright 2026 The AspeCiS Weaver Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ASPECIS_DIAGNOSTIC_HPP
#define ASPECIS_DIAGNOSTIC_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace aspecis {

enum class Code {
  // metamodel language
  Parse,
  DupClass,
  DupFeature,
  BadType,
  Cycle,
  NoClass,
  // model instances
  Io,
  Json,
  Schema,
  DupId,
  Name,
  Type,
  Feat,
  Val,
  Ref,
  Contain,
  NoName,
  Ambiguous,
  NoResolve,
  // weaving model
  Root,
  EndResolve,
  ModelRef,
  // pointcuts
  Pattern,
  PcType,
  // weaving
  EndNotMatched,
  NoAdvice,
  NoPointcut,
  Kind,
  Conflict,
  NameClash,
  // command line
  Usage,
};

/// Stable textual form, e.g. "E_CONTAIN".
std::string_view code_name(Code code);
std::optional<Code> code_from_name(std::string_view name);

/// Process exit status the CLI reports for a failure carrying `code`:
/// 3 for I/O and parse failures, 2 for unresolved conflicts, 1 otherwise.
int exit_code_for(Code code);

struct Diagnostic {
  Code code;
  // model#element.feature, or the closest available coordinates
  std::string path;
  std::string message;

  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

std::string to_string(const Diagnostic& d);

std::string make_path(std::string_view container, std::string_view element = {},
                      std::string_view feature = {});

using Diagnostics = std::vector<Diagnostic>;

/// Raised by every operation that fails; carries one or more diagnostics.
class Error : public std::runtime_error {
 public:
  Error(Code code, std::string path, std::string message);
  explicit Error(Diagnostics diagnostics);

  Code code() const { return diagnostics_.front().code; }
  const Diagnostics& diagnostics() const { return diagnostics_; }

 private:
  Diagnostics diagnostics_;
};

}  // namespace aspecis

#endif  // ASPECIS_DIAGNOSTIC_HPP
