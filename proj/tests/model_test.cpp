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

#include "doctest.h"

#include <algorithm>

#include "aspecis/awm.hpp"
#include "aspecis/model.hpp"
#include "generators.hpp"

using namespace aspecis;
using aspecis::testing::Gen;
using aspecis::testing::make_element;

namespace {

const Metamodel& core_mm() { return builtin_metamodel(kCoreMM); }

ModelInstance m1() { return parse_model(aspecis::testing::slurp(aspecis::testing::source_path("fixtures/m1_core.json"))); }

Code code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an aspecis::Error");
  return Code::Usage;
}

std::vector<Code> codes(const Diagnostics& diagnostics) {
  std::vector<Code> out;
  for (const auto& d : diagnostics) out.push_back(d.code);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Element> sorted_elements(const ModelInstance& m) {
  auto out = m.elements;
  std::sort(out.begin(), out.end(), [](const Element& a, const Element& b) { return a.id < b.id; });
  return out;
}

// Tiny metamodel where containment cycles are expressible.
const Metamodel& tree_mm() {
  static const Metamodel mm = parse_km3(
      "package T { class Node { attribute name : String; reference kids container : Node; reference peer : Node; } }");
  return mm;
}

}  // namespace

TEST_CASE("model: the core fixture") {
  const auto m = m1();
  CHECK(m.name == "M1");
  CHECK(m.conforms_to == "CoreMM");
  std::vector<std::string> classes;
  for (const auto& e : m.elements)
    if (e.type == "Class") classes.push_back(*e.text("name"));
  CHECK(classes == std::vector<std::string>{"University", "Student", "Speciality"});
  CHECK(m.find("Student")->refs("operations").size() == 3);
  CHECK(check_conformance(m, core_mm()).empty());
}

TEST_CASE("model: empty model") {
  const auto m = parse_model(R"({"model":"Empty","conformsTo":"CoreMM","elements":[]})");
  CHECK(m.name == "Empty");
  CHECK(m.elements.empty());
  CHECK(canonical_serialize(m) ==
        "{\n  \"conformsTo\": \"CoreMM\",\n  \"elements\": [],\n  \"model\": \"Empty\"\n}\n");
}

TEST_CASE("model: parse errors") {
  CHECK(code_of([] { parse_model("{ not json"); }) == Code::Json);
  CHECK(code_of([] { parse_model(R"({"model":"X","elements":[]})"); }) == Code::Schema);
  CHECK(code_of([] { parse_model(R"({"model":"X","conformsTo":"C","elements":[],"extra":1})"); }) == Code::Schema);
  CHECK(code_of([] { parse_model(R"({"model":"X","conformsTo":"C","elements":[{"id":"a","type":"T"}]})"); }) ==
        Code::Schema);
  CHECK(code_of([] {
          parse_model(R"({"model":"X","conformsTo":"C","elements":[{"id":"a","type":"T","slots":{"x":1.5}}]})");
        }) == Code::Schema);
  CHECK(code_of([] {
          parse_model(R"({"model":"X","conformsTo":"C","elements":[{"id":"a","type":"T","slots":{"x":{"ref":"b","y":1}}}]})");
        }) == Code::Schema);
  CHECK(code_of([] {
          parse_model(R"({"model":"X","conformsTo":"C","elements":[{"id":"a","type":"T","slots":{}},{"id":"a","type":"T","slots":{}}]})");
        }) == Code::DupId);
}

TEST_CASE("model: serialize then parse is the identity up to element order") {
  Gen g(1);
  for (int round = 0; round < 100; ++round) {
    const auto m = aspecis::testing::gen_core(g).model;
    const auto text = canonical_serialize(m);
    const auto back = parse_model(text);
    CHECK(back.name == m.name);
    CHECK(back.conforms_to == m.conforms_to);
    CHECK(back.elements == sorted_elements(m));
    CHECK(canonical_serialize(back) == text);
  }
}

TEST_CASE("model: canonical bytes ignore element order") {
  Gen g(2);
  auto m = m1();
  const auto reference = canonical_serialize(m);
  CHECK(canonical_serialize(m) == reference);
  for (int round = 0; round < 20; ++round) {
    std::shuffle(m.elements.begin(), m.elements.end(), g.engine());
    CHECK(canonical_serialize(m) == reference);
  }
}

TEST_CASE("model: conformance diagnostics") {
  ModelInstance m{"X", "CoreMM", {}};
  m.elements.push_back(make_element("a", "Clazz", {{"name", std::string("A")}}));
  CHECK(codes(check_conformance(m, core_mm())) == std::vector<Code>{Code::Type});

  m.elements = {make_element("a", "Class", {{"name", std::string("A")}, {"colour", std::string("red")}})};
  CHECK(codes(check_conformance(m, core_mm())) == std::vector<Code>{Code::Feat});

  m.elements = {make_element("a", "Class", {{"name", std::int64_t{3}}})};
  CHECK(codes(check_conformance(m, core_mm())) == std::vector<Code>{Code::Val});

  m.elements = {make_element("a", "Class", {{"operations", ElementRef{"ghost"}}})};
  CHECK(codes(check_conformance(m, core_mm())) == std::vector<Code>{Code::Ref});

  m.elements = {make_element("a", "Class", {{"operations", RefList{{"b"}}}}), make_element("b", "Attribute", {})};
  CHECK(codes(check_conformance(m, core_mm())) == std::vector<Code>{Code::Val});

  m.elements = {make_element("a", "Class", {{"operations", RefList{{"op"}}}}),
                make_element("b", "Class", {{"operations", RefList{{"op"}}}}), make_element("op", "Operation", {})};
  CHECK(codes(check_conformance(m, core_mm())) == std::vector<Code>{Code::Contain});

  m.conforms_to = "AWM";
  CHECK(code_of([&] { check_conformance(m, core_mm()); }) == Code::Name);
}

TEST_CASE("model: containment cycles") {
  ModelInstance m{"T", "T", {}};
  m.elements = {make_element("x", "Node", {{"kids", RefList{{"y"}}}}), make_element("y", "Node", {{"kids", RefList{{"x"}}}})};
  CHECK(codes(check_conformance(m, tree_mm())) == std::vector<Code>{Code::Contain});

  m.elements = {make_element("x", "Node", {{"kids", ElementRef{"x"}}})};
  CHECK(codes(check_conformance(m, tree_mm())) == std::vector<Code>{Code::Contain});

  // a non-container back reference is fine
  m.elements = {make_element("x", "Node", {{"kids", ElementRef{"y"}}}), make_element("y", "Node", {{"peer", ElementRef{"x"}}})};
  CHECK(check_conformance(m, tree_mm()).empty());
}

TEST_CASE("model: diagnostics do not depend on element order") {
  Gen g(3);
  for (int round = 0; round < 100; ++round) {
    auto m = aspecis::testing::gen_core(g).model;
    // inject a few faults at random
    for (int k = g.range(0, 3); k > 0 && !m.elements.empty(); --k) {
      auto& e = m.elements[static_cast<std::size_t>(g.range(0, static_cast<int>(m.elements.size()) - 1))];
      switch (g.range(0, 3)) {
        case 0: e.type = "Ghost"; break;
        case 1: e.slots["bogus"] = true; break;
        case 2: e.slots["name"] = std::int64_t{1}; break;
        default: m.elements.push_back(make_element("cyc" + std::to_string(k), "Class", {{"operations", ElementRef{"missing"}}}));
      }
    }
    const auto before = check_conformance(m, core_mm());
    std::shuffle(m.elements.begin(), m.elements.end(), g.engine());
    auto after = check_conformance(m, core_mm());
    auto by_text = [](const Diagnostic& a, const Diagnostic& b) { return to_string(a) < to_string(b); };
    auto sorted_before = before;
    std::sort(sorted_before.begin(), sorted_before.end(), by_text);
    std::sort(after.begin(), after.end(), by_text);
    CHECK(after == sorted_before);
  }
}

TEST_CASE("model: removing an unreferenced leaf never adds diagnostics") {
  Gen g(4);
  for (int round = 0; round < 100; ++round) {
    auto m = aspecis::testing::gen_core(g).model;
    for (auto& e : m.elements)
      if (g.chance(0.2)) e.slots["bogus"] = true;
    std::vector<std::string> leaves;
    for (const auto& e : m.elements) {
      const bool referenced = std::any_of(m.elements.begin(), m.elements.end(), [&](const Element& o) {
        for (const auto& [k, v] : o.slots) {
          const auto targets = o.refs(k);
          if (std::find(targets.begin(), targets.end(), e.id) != targets.end()) return true;
        }
        return false;
      });
      if (!referenced && e.refs("operations").empty() && e.refs("attributes").empty()) leaves.push_back(e.id);
    }
    if (leaves.empty()) continue;
    const auto victim = g.pick(leaves);
    const auto before = check_conformance(m, core_mm());
    std::erase_if(m.elements, [&](const Element& e) { return e.id == victim; });
    for (const auto& d : check_conformance(m, core_mm()))
      CHECK(std::find(before.begin(), before.end(), d) != before.end());
  }
}

TEST_CASE("model: identification of fixture elements") {
  const auto m = m1();
  const Identification ids(m, core_mm());
  CHECK(ids.element_id(*m.find("Student")) == "M1/Student");
  CHECK(ids.element_id(*m.find("Student/NewSubscription")) == "M1/Student/NewSubscription");
  CHECK(&ids.resolve("M1/Student") == m.find("Student"));
  CHECK(ids.container_of(*m.find("Student/getName")) == m.find("Student"));
  CHECK(ids.container_of(*m.find("Student")) == nullptr);
  CHECK(code_of([&] { ids.resolve(""); }) == Code::NoResolve);
  CHECK(code_of([&] { ids.resolve("M1/Nobody"); }) == Code::NoResolve);
  CHECK(element_id(m, core_mm(), *m.find("Speciality/NbreOfHours")) == "M1/Speciality/NbreOfHours");
}

TEST_CASE("model: root element named after its model") {
  ModelInstance m{"X", "CoreMM", {make_element("x", "Class", {{"name", std::string("X")}})}};
  CHECK(element_id(m, core_mm(), m.elements[0]) == "X/X");
}

TEST_CASE("model: identification failures") {
  ModelInstance m{"X", "CoreMM", {}};
  m.elements = {make_element("c", "Class", {{"operations", RefList{{"o"}}}}),
                make_element("o", "Operation", {{"name", std::string("run")}})};
  CHECK(code_of([&] { element_id(m, core_mm(), m.elements[1]); }) == Code::NoName);

  m.elements = {make_element("c", "Class", {{"name", std::string("C")}, {"operations", RefList{{"o1"}, {"o2"}}}}),
                make_element("o1", "Operation", {{"name", std::string("run")}}),
                make_element("o2", "Operation", {{"name", std::string("run")}})};
  CHECK(code_of([&] { element_id(m, core_mm(), m.elements[1]); }) == Code::Ambiguous);
  CHECK(code_of([&] { resolve_id(m, core_mm(), "X/C/run"); }) == Code::Ambiguous);
  CHECK(element_id(m, core_mm(), m.elements[0]) == "X/C");
}

TEST_CASE("model: resolve_id inverts element_id and ids are distinct") {
  Gen g(6);
  for (int round = 0; round < 100; ++round) {
    const auto sample = aspecis::testing::gen_core(g);
    const auto& m = sample.model;
    const Identification ids(m, core_mm());
    std::set<std::string> seen;
    for (const auto& e : m.elements) {
      const auto ident = ids.element_id(e);
      CHECK(&ids.resolve(ident) == &e);
      CHECK(seen.insert(ident).second);
    }
    for (const auto& [id, expected] : sample.idents) CHECK(ids.element_id(*m.find(id)) == expected);
  }
}
