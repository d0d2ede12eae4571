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

#include "aspecis/pointcut.hpp"

#include <algorithm>
#include <cctype>
#include <tuple>

#include "aspecis/awm.hpp"

namespace aspecis {

std::string_view to_string(JoinPointKind kind) {
  return kind == JoinPointKind::Call ? "call" : "execution";
}

std::optional<JoinPointKind> parse_joinpoint_kind(std::string_view text) {
  if (text == "call") return JoinPointKind::Call;
  if (text == "execution") return JoinPointKind::Execution;
  return std::nullopt;
}

namespace {

bool is_segment_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_' || c == '-' || c == '*';
}

struct Site {
  JoinPoint jp;
  std::string class_name;
  std::string operation_name;
};

std::vector<Site> sites(const ModelInstance& core, JoinPointKind kind) {
  const Metamodel& mm = builtin_metamodel(kCoreMM);
  const Identification ids(core, mm);
  std::vector<Site> out;
  for (const auto& cls : core.elements) {
    if (!is_subclass_of(mm, cls.type, "Class")) continue;
    for (const auto& op_id : cls.refs("operations")) {
      const Element* op = core.find(op_id);
      if (!op || !is_subclass_of(mm, op->type, "Operation")) continue;
      out.push_back({JoinPoint{ids.element_id(cls), ids.element_id(*op), kind},
                     cls.text("name").value_or(""), op->text("name").value_or("")});
    }
  }
  std::sort(out.begin(), out.end(), [](const Site& a, const Site& b) {
    return std::tie(a.jp.operation_id, a.jp.class_id) < std::tie(b.jp.operation_id, b.jp.class_id);
  });
  return out;
}

}  // namespace

Pattern parse_pattern(std::string_view text) {
  const auto dot = text.find('.');
  if (dot == std::string_view::npos)
    throw Error(Code::Pattern, std::string(text), "pattern must have the form <class>.<operation>");
  Pattern p{std::string(text.substr(0, dot)), std::string(text.substr(dot + 1))};
  for (const auto& segment : {p.class_pattern, p.operation_pattern}) {
    if (segment.empty())
      throw Error(Code::Pattern, std::string(text), "empty pattern segment");
    if (!std::all_of(segment.begin(), segment.end(), is_segment_char))
      throw Error(Code::Pattern, std::string(text),
                  "segment \"" + segment + "\" may only hold identifier characters and '*'");
  }
  return p;
}

bool wildcard_match(std::string_view pattern, std::string_view text) {
  std::size_t p = 0;
  std::size_t t = 0;
  std::size_t star = std::string_view::npos;
  std::size_t resume = 0;
  while (t < text.size()) {
    if (p < pattern.size() && pattern[p] == '*') {
      star = p++;
      resume = t;
    } else if (p < pattern.size() && pattern[p] == text[t]) {
      ++p;
      ++t;
    } else if (star != std::string_view::npos) {
      p = star + 1;
      t = ++resume;
    } else {
      return false;
    }
  }
  while (p < pattern.size() && pattern[p] == '*') ++p;
  return p == pattern.size();
}

std::vector<JoinPoint> enumerate_joinpoints(const ModelInstance& core, JoinPointKind kind) {
  std::vector<JoinPoint> out;
  for (auto& site : sites(core, kind)) out.push_back(std::move(site.jp));
  return out;
}

std::vector<JoinPoint> match_pointcut(const ModelInstance& core, std::string_view type_pointcut,
                                      const Pattern& pattern) {
  const auto kind = parse_joinpoint_kind(type_pointcut);
  if (!kind)
    throw Error(Code::PcType, std::string(type_pointcut),
                "pointcut type must be \"call\" or \"execution\"");
  std::vector<JoinPoint> out;
  for (auto& site : sites(core, *kind)) {
    if (wildcard_match(pattern.class_pattern, site.class_name) &&
        wildcard_match(pattern.operation_pattern, site.operation_name))
      out.push_back(std::move(site.jp));
  }
  return out;
}

}  // namespace aspecis
