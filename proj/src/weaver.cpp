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

#include "aspecis/weaver.hpp"

#include <algorithm>
#include <tuple>

namespace aspecis {

std::string_view to_string(AdviceKind kind) {
  switch (kind) {
    case AdviceKind::Before: return "before";
    case AdviceKind::Around: return "around";
    case AdviceKind::After: return "after";
  }
  return "before";
}

std::optional<AdviceKind> parse_advice_kind(std::string_view text) {
  if (text == "before") return AdviceKind::Before;
  if (text == "around") return AdviceKind::Around;
  if (text == "after") return AdviceKind::After;
  return std::nullopt;
}

std::vector<const Element*> WovenModel::bindings() const {
  std::vector<const Element*> out;
  for (const auto& e : model.elements)
    if (e.type == "WeaveBinding") out.push_back(&e);
  return out;
}

std::map<std::string, std::string> WovenModel::provenance() const {
  std::map<std::string, std::string> out;
  for (const auto& e : model.elements) {
    if (e.type != "Operation") continue;
    if (auto origin = e.text("origin")) out.emplace(e.id, *origin);
  }
  return out;
}

namespace {

bool same_group(const AdviceApplication& a, const AdviceApplication& b) {
  return a.join_point == b.join_point && a.kind == b.kind;
}

// Sorts into canonical order and renumbers order_index within each group.
void normalize(std::vector<AdviceApplication>& apps) {
  const auto key = [](const AdviceApplication& a) {
    return std::make_tuple(std::cref(a.join_point.operation_id), std::cref(a.join_point.class_id),
                           a.join_point.kind, a.kind, -a.priority, std::cref(a.aspect_name),
                           std::cref(a.advice_name), std::cref(a.advice_id));
  };
  std::sort(apps.begin(), apps.end(),
            [&](const AdviceApplication& a, const AdviceApplication& b) { return key(a) < key(b); });
  apps.erase(std::unique(apps.begin(), apps.end(),
                         [](const AdviceApplication& a, const AdviceApplication& b) {
                           return a.join_point == b.join_point && a.advice_id == b.advice_id;
                         }),
             apps.end());
  for (std::size_t i = 0; i < apps.size(); ++i)
    apps[i].order_index = (i > 0 && same_group(apps[i - 1], apps[i])) ? apps[i - 1].order_index + 1 : 0;
}

std::string describe(const Conflict& c) {
  std::string out = "around advices conflict at " + c.join_point.operation_id + ":";
  for (const auto& contender : c.contenders)
    out += " " + contender.advice_id + " (priority " + std::to_string(contender.priority) + ")";
  return out;
}

}  // namespace

std::vector<AdviceApplication> collect_applications(const ModelRoleSet& rs, const WeavingView& view) {
  const Metamodel& aspect_mm = builtin_metamodel(kAspectMM);
  const Identification core_ids(rs.core, builtin_metamodel(kCoreMM));
  const Identification aspect_ids(rs.aspect, aspect_mm);

  Diagnostics problems;
  std::vector<AdviceApplication> apps;

  for (const auto& link : view.links) {
    const auto path = make_path(rs.weaving.name, link.name);
    const auto fail = [&](Code code, std::string message) {
      problems.push_back({code, path, std::move(message)});
    };

    const Element* advice = nullptr;
    try {
      advice = &aspect_ids.resolve(link.end_aspect);
    } catch (const Error& e) {
      fail(Code::NoAdvice, e.diagnostics().front().message);
      continue;
    }
    if (!is_subclass_of(aspect_mm, advice->type, "Advice")) {
      fail(Code::NoAdvice, link.end_aspect + " is a " + advice->type + ", not an Advice");
      continue;
    }
    const Element* aspect = aspect_ids.container_of(*advice);
    if (!aspect || !is_subclass_of(aspect_mm, aspect->type, "Aspect")) {
      fail(Code::NoAdvice, "advice " + link.end_aspect + " is not owned by an Aspect");
      continue;
    }
    const auto kind = parse_advice_kind(advice->text("kind").value_or(""));
    if (!kind) {
      fail(Code::Kind, "advice " + link.end_aspect + " must have kind before, after or around");
      continue;
    }
    const auto pointcut_refs = advice->refs("pointcut");
    const Element* pointcut = pointcut_refs.size() == 1 ? rs.aspect.find(pointcut_refs.front()) : nullptr;
    if (!pointcut) {
      fail(Code::NoPointcut, "advice " + link.end_aspect + " has no pointcut");
      continue;
    }

    std::vector<JoinPoint> matched;
    try {
      matched = match_pointcut(rs.core, pointcut->text("typePointcut").value_or(""),
                               parse_pattern(pointcut->text("pattern").value_or("")));
    } catch (const Error& e) {
      fail(e.code(), e.diagnostics().front().message);
      continue;
    }

    // The link pins the intended site: an operation, or a class owning one.
    const bool pinned = std::any_of(matched.begin(), matched.end(), [&](const JoinPoint& jp) {
      return jp.operation_id == link.end_core || jp.class_id == link.end_core;
    });
    if (!pinned) {
      fail(Code::EndNotMatched, link.end_core + " is not matched by pointcut " +
                                    pointcut->text("name").value_or(pointcut->id));
      continue;
    }

    for (auto& jp : matched) {
      apps.push_back(AdviceApplication{std::move(jp), link.end_aspect,
                                       advice->text("name").value_or(""),
                                       aspect->text("name").value_or(""), *kind,
                                       aspect->integer("priority").value_or(0), 0});
    }
  }

  if (!problems.empty()) throw Error(std::move(problems));
  normalize(apps);
  return apps;
}

std::vector<Conflict> detect_conflicts(std::span<const AdviceApplication> apps) {
  std::vector<Conflict> out;
  std::map<JoinPoint, std::vector<const AdviceApplication*>> around;
  for (const auto& app : apps)
    if (app.kind == AdviceKind::Around) around[app.join_point].push_back(&app);

  for (const auto& [jp, group] : around) {
    if (group.size() < 2) continue;
    Conflict c{jp, {}, std::nullopt};
    for (const auto* app : group) c.contenders.push_back({app->advice_id, app->priority});
    const auto best = std::max_element(
        c.contenders.begin(), c.contenders.end(),
        [](const Contender& a, const Contender& b) { return a.priority < b.priority; });
    const auto holders = std::count_if(c.contenders.begin(), c.contenders.end(),
                                       [&](const Contender& x) { return x.priority == best->priority; });
    if (holders == 1) c.dominant = best->advice_id;
    out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end(), [](const Conflict& a, const Conflict& b) {
    return std::tie(a.join_point.operation_id, a.join_point.class_id, a.join_point.kind) <
           std::tie(b.join_point.operation_id, b.join_point.class_id, b.join_point.kind);
  });
  return out;
}

std::string resolve_dominant(const Conflict& conflict) {
  if (conflict.contenders.empty())
    throw Error(Code::Conflict, conflict.join_point.operation_id, "conflict without contenders");
  const Contender* best = &conflict.contenders.front();
  bool tied = false;
  for (const auto& c : conflict.contenders) {
    if (&c == best) continue;
    if (c.priority > best->priority) {
      best = &c;
      tied = false;
    } else if (c.priority == best->priority) {
      tied = true;
    }
  }
  if (tied)
    throw Error(Code::Conflict, conflict.join_point.operation_id,
                describe(conflict) + "; no dominant advice");
  return best->advice_id;
}

std::vector<AdviceApplication> resolve_conflicts(std::vector<AdviceApplication> apps,
                                                 ResolveMode mode) {
  const auto conflicts = detect_conflicts(apps);
  if (conflicts.empty()) return apps;

  Diagnostics problems;
  std::map<JoinPoint, std::string> dominant;
  for (const auto& c : conflicts) {
    if (mode == ResolveMode::Fail) {
      problems.push_back({Code::Conflict, c.join_point.operation_id, describe(c)});
      continue;
    }
    try {
      dominant.emplace(c.join_point, resolve_dominant(c));
    } catch (const Error& e) {
      problems.insert(problems.end(), e.diagnostics().begin(), e.diagnostics().end());
    }
  }
  if (!problems.empty()) throw Error(std::move(problems));

  std::erase_if(apps, [&](const AdviceApplication& a) {
    if (a.kind != AdviceKind::Around) return false;
    auto it = dominant.find(a.join_point);
    return it != dominant.end() && it->second != a.advice_id;
  });
  normalize(apps);
  return apps;
}

WovenModel apply_weave(const ModelRoleSet& rs, std::span<const AdviceApplication> apps) {
  const Identification core_ids(rs.core, builtin_metamodel(kCoreMM));
  const Identification aspect_ids(rs.aspect, builtin_metamodel(kAspectMM));

  WovenModel woven{rs.core};
  ModelInstance& out = woven.model;
  out.conforms_to = std::string(kWovenMM);
  Diagnostics problems;

  for (const auto& app : apps) {
    const std::string class_key = core_ids.resolve(app.join_point.class_id).id;
    const Element& advice = aspect_ids.resolve(app.advice_id);

    for (const auto& template_id : advice.refs("addedOperations")) {
      const Element* tmpl = rs.aspect.find(template_id);
      if (!tmpl) continue;
      const std::string name = tmpl->text("name").value_or("");
      const auto params = tmpl->text("params");
      const auto return_type = tmpl->text("returnType");
      const auto path = make_path(out.name, class_key, name);

      Element& cls = *out.find(class_key);
      bool present = false;
      bool clash = false;
      for (const auto& op_id : cls.refs("operations")) {
        const Element* op = out.find(op_id);
        if (!op || op->text("name") != name) continue;
        present = true;
        clash = op->text("params") != params || op->text("returnType") != return_type;
      }
      if (clash) {
        problems.push_back({Code::NameClash, path,
                            "advice " + app.advice_name + " injects operation " + name +
                                " with a different signature than the existing one"});
        continue;
      }
      if (present) continue;

      Element op;
      op.id = class_key + "/" + name;
      if (out.find(op.id)) {
        problems.push_back({Code::NameClash, path, "element id " + op.id + " is already taken"});
        continue;
      }
      op.type = "Operation";
      op.slots.emplace("name", name);
      if (params) op.slots.emplace("params", *params);
      if (return_type) op.slots.emplace("returnType", *return_type);
      op.slots.emplace("origin", aspect_ids.element_id(*tmpl));

      auto& slot = cls.slots["operations"];
      RefList ops;
      for (auto& id : cls.refs("operations")) ops.push_back({std::move(id)});
      ops.push_back({op.id});
      slot = std::move(ops);
      out.elements.push_back(std::move(op));
    }

    Element binding;
    binding.id = "binding:" + app.join_point.operation_id + ":" +
                 std::string(to_string(app.join_point.kind)) + ":" + std::string(to_string(app.kind)) +
                 ":" + std::to_string(app.order_index);
    binding.type = "WeaveBinding";
    binding.slots.emplace("joinPointRef", app.join_point.operation_id);
    binding.slots.emplace("joinPointKind", std::string(to_string(app.join_point.kind)));
    binding.slots.emplace("adviceName", app.advice_name);
    binding.slots.emplace("adviceRef", app.advice_id);
    binding.slots.emplace("kind", std::string(to_string(app.kind)));
    binding.slots.emplace("orderIndex", static_cast<std::int64_t>(app.order_index));
    if (auto body = advice.text("bodyAdvice")) binding.slots.emplace("bodyAdvice", *body);
    if (out.find(binding.id)) {
      problems.push_back({Code::NameClash, make_path(out.name, binding.id),
                          "element id " + binding.id + " is already taken"});
      continue;
    }
    out.elements.push_back(std::move(binding));
  }

  if (!problems.empty()) throw Error(std::move(problems));
  return woven;
}

WovenModel weave(const ModelRoleSet& rs, ResolveMode mode) {
  const WeavingView view = open_weaving(rs);
  auto apps = resolve_conflicts(collect_applications(rs, view), mode);
  return apply_weave(rs, apps);
}

}  // namespace aspecis
