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

#include "aspecis/awm.hpp"

#include <algorithm>

namespace aspecis {

namespace resources {
extern const std::string_view kCoreKm3;
extern const std::string_view kAspectKm3;
extern const std::string_view kAwmKm3;
extern const std::string_view kWovenKm3;
}  // namespace resources

std::string_view builtin_km3(std::string_view name) {
  if (name == kCoreMM) return resources::kCoreKm3;
  if (name == kAspectMM) return resources::kAspectKm3;
  if (name == kAwmMM) return resources::kAwmKm3;
  if (name == kWovenMM) return resources::kWovenKm3;
  throw Error(Code::NoClass, std::string(name), "no shipped metamodel named " + std::string(name));
}

const std::map<std::string, Metamodel, std::less<>>& builtin_metamodels() {
  static const auto metamodels = [] {
    std::map<std::string, Metamodel, std::less<>> out;
    for (auto name : {kCoreMM, kAspectMM, kAwmMM, kWovenMM}) {
      Metamodel mm = parse_km3(builtin_km3(name));
      out.emplace(mm.name, std::move(mm));
    }
    return out;
  }();
  return metamodels;
}

const Metamodel& builtin_metamodel(std::string_view name) {
  const auto& all = builtin_metamodels();
  auto it = all.find(name);
  if (it == all.end())
    throw Error(Code::NoClass, std::string(name), "no shipped metamodel named " + std::string(name));
  return it->second;
}

Diagnostics check_roles(const ModelRoleSet& rs) {
  Diagnostics out;
  const std::pair<const ModelInstance*, std::string_view> roles[] = {
      {&rs.core, kCoreMM}, {&rs.aspect, kAspectMM}, {&rs.weaving, kAwmMM}};
  for (const auto& [model, mm_name] : roles) {
    try {
      auto diagnostics = check_conformance(*model, builtin_metamodel(mm_name));
      out.insert(out.end(), diagnostics.begin(), diagnostics.end());
    } catch (const Error& e) {
      out.insert(out.end(), e.diagnostics().begin(), e.diagnostics().end());
    }
  }
  return out;
}

namespace {

const Element* single_target(const ModelInstance& m, const Element& owner, std::string_view feature) {
  const auto targets = owner.refs(feature);
  return targets.size() == 1 ? m.find(targets.front()) : nullptr;
}

// The `ref` text held by the link end under `feature`, or empty.
std::string end_ref(const ModelInstance& weaving, const Element& link, std::string_view feature) {
  const Element* end = single_target(weaving, link, feature);
  if (!end) return {};
  return end->text("ref").value_or("");
}

}  // namespace

WeavingView open_weaving(const ModelRoleSet& rs) {
  if (auto diagnostics = check_roles(rs); !diagnostics.empty()) throw Error(std::move(diagnostics));

  const Metamodel& awm = builtin_metamodel(kAwmMM);
  const ModelInstance& wm = rs.weaving;
  Diagnostics problems;
  WeavingView view;

  std::vector<const Element*> roots;
  for (const auto& e : wm.elements)
    if (is_subclass_of(awm, e.type, "Weaving-Core_Aspect")) roots.push_back(&e);
  if (roots.size() != 1)
    throw Error(Code::Root, wm.name,
                "expected exactly one Weaving-Core_Aspect, found " + std::to_string(roots.size()));
  view.root = roots.front();

  const auto read_model_ref = [&](std::string_view feature, const ModelInstance& expected,
                                  ModelRefRecord& out) {
    const auto path = make_path(wm.name, view.root->id, feature);
    const Element* ref = single_target(wm, *view.root, feature);
    if (!ref) {
      problems.push_back({Code::ModelRef, path, "missing WModelRef"});
      return;
    }
    out.model_name = ref->text("modelName").value_or("");
    out.path = ref->text("path").value_or("");
    if (out.model_name != expected.name)
      problems.push_back({Code::ModelRef, path,
                          "refers to model \"" + out.model_name + "\" but the " +
                              std::string(feature) + " model is \"" + expected.name + "\""});
  };
  read_model_ref("Core", rs.core, view.core_ref);
  read_model_ref("Aspect", rs.aspect, view.aspect_ref);
  if (problems.empty() && view.core_ref.model_name == view.aspect_ref.model_name)
    problems.push_back({Code::ModelRef, make_path(wm.name, view.root->id),
                        "Core and Aspect name the same model"});

  const Identification core_ids(rs.core, builtin_metamodel(kCoreMM));
  const Identification aspect_ids(rs.aspect, builtin_metamodel(kAspectMM));
  const auto check_end = [&](const Element& link, std::string_view feature,
                             const std::string& ident, const Identification& ids) {
    const auto path = make_path(wm.name, link.id, feature);
    if (ident.empty()) {
      problems.push_back({Code::EndResolve, path, "link end has no ref"});
      return;
    }
    try {
      ids.resolve(ident);
    } catch (const Error& e) {
      problems.push_back({Code::EndResolve, path, e.diagnostics().front().message});
    }
  };

  for (const auto& e : wm.elements) {
    if (!is_subclass_of(awm, e.type, "Pointcut-Core_Aspect")) continue;
    PointcutLink link{e.text("name").value_or(e.id), end_ref(wm, e, "endCore"),
                      end_ref(wm, e, "endAspect")};
    check_end(e, "endCore", link.end_core, core_ids);
    check_end(e, "endAspect", link.end_aspect, aspect_ids);
    view.links.push_back(std::move(link));
  }

  if (!problems.empty()) throw Error(std::move(problems));
  return view;
}

std::pair<std::string, std::string> link_kind(const PointcutLink& link, const ModelRoleSet& rs) {
  const auto resolve_end = [](const ModelInstance& m, std::string_view mm, const std::string& ident) {
    try {
      return resolve_id(m, builtin_metamodel(mm), ident).type;
    } catch (const Error& e) {
      throw Error(Code::EndResolve, make_path(m.name, ident), e.diagnostics().front().message);
    }
  };
  return {resolve_end(rs.core, kCoreMM, link.end_core),
          resolve_end(rs.aspect, kAspectMM, link.end_aspect)};
}

}  // namespace aspecis
