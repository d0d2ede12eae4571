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

#ifndef ASPECIS_POINTCUT_HPP
#define ASPECIS_POINTCUT_HPP

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "aspecis/model.hpp"

namespace aspecis {

enum class JoinPointKind { Call, Execution };

std::string_view to_string(JoinPointKind kind);
/// "call" or "execution"; anything else is absent.
std::optional<JoinPointKind> parse_joinpoint_kind(std::string_view text);

/// A class-owned operation in the core model, identified by element ids.
struct JoinPoint {
  std::string class_id;
  std::string operation_id;
  JoinPointKind kind = JoinPointKind::Call;

  friend bool operator==(const JoinPoint&, const JoinPoint&) = default;
  friend auto operator<=>(const JoinPoint&, const JoinPoint&) = default;
};

/// `<class>.<operation>`; each segment may use `*` for any run of characters.
struct Pattern {
  std::string class_pattern;
  std::string operation_pattern;

  std::string str() const { return class_pattern + "." + operation_pattern; }

  friend bool operator==(const Pattern&, const Pattern&) = default;
};

/// Throws E_PATTERN unless `text` is two non-empty segments of identifier
/// characters or `*`, separated by a single dot.
Pattern parse_pattern(std::string_view text);

/// Glob match where `*` stands for any (possibly empty) run of characters.
bool wildcard_match(std::string_view pattern, std::string_view text);

/// One join point per (Class, contained Operation) pair, sorted by operation id.
std::vector<JoinPoint> enumerate_joinpoints(const ModelInstance& core, JoinPointKind kind);

/// The join points whose class and operation names match `pattern`.
/// Throws E_PCTYPE when `type_pointcut` is neither "call" nor "execution".
std::vector<JoinPoint> match_pointcut(const ModelInstance& core, std::string_view type_pointcut,
                                      const Pattern& pattern);

}  // namespace aspecis

#endif  // ASPECIS_POINTCUT_HPP
