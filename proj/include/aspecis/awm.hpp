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

#ifndef ASPECIS_AWM_HPP
#define ASPECIS_AWM_HPP

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "aspecis/km3.hpp"
#include "aspecis/model.hpp"

namespace aspecis {

inline constexpr std::string_view kCoreMM = "CoreMM";
inline constexpr std::string_view kAspectMM = "AspectMM";
inline constexpr std::string_view kAwmMM = "AWM";
inline constexpr std::string_view kWovenMM = "WovenMM";

/// Source text of a shipped metamodel (CoreMM, AspectMM, AWM, WovenMM).
std::string_view builtin_km3(std::string_view name);

/// The shipped metamodels keyed by package name, parsed once.
const std::map<std::string, Metamodel, std::less<>>& builtin_metamodels();
const Metamodel& builtin_metamodel(std::string_view name);

/// Core (existing requirements), aspect (aspectual requirements) and the
/// weaving model linking them.
struct ModelRoleSet {
  ModelInstance core;
  ModelInstance aspect;
  ModelInstance weaving;
};

/// Conformance of each role against its shipped metamodel; E_NAME is
/// reported as a diagnostic rather than thrown.
Diagnostics check_roles(const ModelRoleSet& rs);

struct ModelRefRecord {
  std::string model_name;
  std::string path;
};

struct PointcutLink {
  std::string name;
  // identifier into the core model
  std::string end_core;
  // identifier into the aspect model
  std::string end_aspect;

  friend bool operator==(const PointcutLink&, const PointcutLink&) = default;
};

/// Typed view over a Weaving-Core_Aspect model. Refers into the role set it
/// was opened on.
struct WeavingView {
  const Element* root = nullptr;
  ModelRefRecord core_ref;
  ModelRefRecord aspect_ref;
  std::vector<PointcutLink> links;
};

/// Validates all three roles and every link end. Throws an Error carrying
/// every problem found: conformance diagnostics, E_ROOT, E_MODELREF,
/// E_ENDRESOLVE. Never returns a partial view.
WeavingView open_weaving(const ModelRoleSet& rs);

/// (core end type, aspect end type), e.g. ("Operation", "Advice").
std::pair<std::string, std::string> link_kind(const PointcutLink& link, const ModelRoleSet& rs);

}  // namespace aspecis

#endif  // ASPECIS_AWM_HPP
