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

#ifndef ASPECIS_WEAVER_HPP
#define ASPECIS_WEAVER_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "aspecis/awm.hpp"
#include "aspecis/model.hpp"
#include "aspecis/pointcut.hpp"

namespace aspecis {

enum class AdviceKind { Before, Around, After };

std::string_view to_string(AdviceKind kind);
std::optional<AdviceKind> parse_advice_kind(std::string_view text);

/// One advice attached at one join point. Within a (join point, kind) group
/// order_index counts up from 0 by descending priority, then aspect name,
/// then advice name.
struct AdviceApplication {
  JoinPoint join_point;
  // identifier of the Advice in the aspect model
  std::string advice_id;
  std::string advice_name;
  std::string aspect_name;
  AdviceKind kind = AdviceKind::Before;
  // stakeholder priority of the owning aspect, higher wins
  std::int64_t priority = 0;
  std::size_t order_index = 0;

  friend bool operator==(const AdviceApplication&, const AdviceApplication&) = default;
};

struct Contender {
  std::string advice_id;
  std::int64_t priority = 0;

  friend bool operator==(const Contender&, const Contender&) = default;
};

/// Two or more around advices competing for one join point.
struct Conflict {
  JoinPoint join_point;
  std::vector<Contender> contenders;
  // set when one contender has strictly the highest priority
  std::optional<std::string> dominant;
};

enum class ResolveMode { Fail, Priority };

/// The woven cooperative-requirements model. `model` conforms to WovenMM:
/// the core elements plus injected Operation elements (their `origin` slot
/// names the aspect template) and one WeaveBinding element per application.
struct WovenModel {
  ModelInstance model;

  std::vector<const Element*> bindings() const;
  /// injected operation id -> identifier of the aspect template it came from
  std::map<std::string, std::string> provenance() const;
};

/// Resolves every link to its advice, owning aspect and pointcut, matches
/// the pointcut against the core and emits one application per matched
/// join point. The link's core end must be among the matches.
/// Throws E_NOADVICE, E_NOPOINTCUT, E_KIND, E_PCTYPE, E_PATTERN or
/// E_ENDNOTMATCHED, all problems at once.
std::vector<AdviceApplication> collect_applications(const ModelRoleSet& rs, const WeavingView& view);

/// One Conflict per join point holding at least two around applications.
std::vector<Conflict> detect_conflicts(std::span<const AdviceApplication> apps);

/// The contender with strictly maximal priority; E_CONFLICT on a tie.
std::string resolve_dominant(const Conflict& conflict);

/// Keeps only the dominant around application at each conflicting join
/// point. Ties raise E_CONFLICT; ResolveMode::Fail raises E_CONFLICT for
/// any conflict at all.
std::vector<AdviceApplication> resolve_conflicts(std::vector<AdviceApplication> apps,
                                                 ResolveMode mode);

/// Copies the core, injects each advice's added operations into the join
/// point's class and records a WeaveBinding per application. Identical
/// repeated injections collapse into one; a same-named operation with a
/// different signature is E_NAMECLASH.
WovenModel apply_weave(const ModelRoleSet& rs, std::span<const AdviceApplication> apps);

/// open_weaving, collect_applications, conflict handling, apply_weave.
WovenModel weave(const ModelRoleSet& rs, ResolveMode mode = ResolveMode::Fail);

}  // namespace aspecis

#endif  // ASPECIS_WEAVER_HPP
