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

#include "aspecis/awm.hpp"
#include "generators.hpp"

using namespace aspecis;
using aspecis::testing::Gen;
using aspecis::testing::make_element;
using aspecis::testing::slurp;
using aspecis::testing::source_path;

namespace {

ModelInstance load(std::string_view rel) { return parse_model(slurp(source_path(rel))); }

ModelRoleSet fixture_roles() {
  return {load("fixtures/m1_core.json"), load("fixtures/m2_aspect.json"), load("fixtures/weaving_hgs.json")};
}

std::vector<Code> codes_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    std::vector<Code> out;
    for (const auto& d : e.diagnostics()) out.push_back(d.code);
    return out;
  }
  return {};
}

Element& by_id(ModelInstance& m, std::string_view id) {
  Element* e = m.find(id);
  REQUIRE(e);
  return *e;
}

}  // namespace

TEST_CASE("awm: shipped metamodels") {
  const auto& all = builtin_metamodels();
  REQUIRE(all.size() == 4);
  for (const auto& [name, mm] : all) CHECK(validate_metamodel(mm).empty());

  const auto& awm = builtin_metamodel(kAwmMM);
  const MetaClass* root = lookup_class(awm, "Weaving-Core_Aspect");
  REQUIRE(root);
  CHECK(root->features.size() == 2);
  CHECK(root->features[0].name == "Core");
  CHECK(root->features[1].name == "Aspect");

  const MetaClass* base = lookup_class(awm, "WElement");
  REQUIRE(base);
  REQUIRE(base->features.size() == 2);
  CHECK(base->features[0] == Feature{FeatureKind::Attribute, "name", "String", false});
  CHECK(base->features[1] == Feature{FeatureKind::Attribute, "description", "String", false});

  for (const auto& c : awm.classes) {
    if (c.name == "WElement") continue;
    // independent closure: follow super_name by hand
    std::string cur = c.name;
    for (int hops = 0; hops < 16 && cur != "WElement"; ++hops) {
      const MetaClass* k = lookup_class(awm, cur);
      REQUIRE(k);
      REQUIRE(k->super_name);
      cur = *k->super_name;
    }
    CHECK_MESSAGE(cur == "WElement", c.name);
  }
}

TEST_CASE("awm: embedded sources are the shipped files byte for byte") {
  CHECK(builtin_km3(kCoreMM) == slurp(source_path("metamodels/core.km3")));
  CHECK(builtin_km3(kAspectMM) == slurp(source_path("metamodels/aspect.km3")));
  CHECK(builtin_km3(kAwmMM) == slurp(source_path("metamodels/awm.km3")));
  CHECK(builtin_km3(kWovenMM) == slurp(source_path("metamodels/woven.km3")));
}

TEST_CASE("awm: fixture weaving opens with one link") {
  const auto rs = fixture_roles();
  CHECK(check_roles(rs).empty());
  const auto view = open_weaving(rs);
  CHECK(view.root == rs.weaving.find("HGS"));
  CHECK(view.core_ref.model_name == "M1");
  CHECK(view.core_ref.path == "m1_core.json");
  CHECK(view.aspect_ref.model_name == "M2");
  REQUIRE(view.links.size() == 1);
  CHECK(view.links[0] == PointcutLink{"Pointcut1", "M1/Student/NewSubscription", "M2/HoursAspect/advice_addElt"});
  CHECK(link_kind(view.links[0], rs) == std::pair<std::string, std::string>{"Operation", "Advice"});
}

TEST_CASE("awm: weaving without links") {
  auto rs = fixture_roles();
  std::erase_if(rs.weaving.elements, [](const Element& e) { return e.id.starts_with("HGS/Pointcut1"); });
  by_id(rs.weaving, "HGS").slots["links"] = RefList{};
  CHECK(open_weaving(rs).links.empty());
}

TEST_CASE("awm: root and model reference errors") {
  auto rs = fixture_roles();
  by_id(rs.weaving, "HGS").type = "WModel";
  by_id(rs.weaving, "HGS").slots.erase("Core");
  by_id(rs.weaving, "HGS").slots.erase("Aspect");
  CHECK(codes_of([&] { open_weaving(rs); }) == std::vector<Code>{Code::Root});

  rs = fixture_roles();
  auto second = by_id(rs.weaving, "HGS");
  second.id = "HGS2";
  second.slots.erase("Core");
  second.slots.erase("Aspect");
  second.slots.erase("links");
  rs.weaving.elements.push_back(second);
  CHECK(codes_of([&] { open_weaving(rs); }) == std::vector<Code>{Code::Root});

  rs = fixture_roles();
  by_id(rs.weaving, "HGS/Core").slots["modelName"] = std::string("M9");
  CHECK(codes_of([&] { open_weaving(rs); }) == std::vector<Code>{Code::ModelRef});

  rs = fixture_roles();
  by_id(rs.weaving, "HGS").slots.erase("Aspect");
  CHECK(codes_of([&] { open_weaving(rs); }) == std::vector<Code>{Code::ModelRef});

  rs = fixture_roles();
  rs.aspect.name = "M1";
  by_id(rs.weaving, "HGS/Aspect").slots["modelName"] = std::string("M1");
  by_id(rs.weaving, "HGS/Pointcut1/EndAspect").slots["ref"] = std::string("M1/HoursAspect/advice_addElt");
  CHECK(codes_of([&] { open_weaving(rs); }) == std::vector<Code>{Code::ModelRef});
}

TEST_CASE("awm: nonconforming roles are rejected before anything else") {
  auto rs = fixture_roles();
  by_id(rs.core, "Student").type = "Clazz";
  CHECK(codes_of([&] { open_weaving(rs); }) == std::vector<Code>{Code::Type});

  rs = fixture_roles();
  rs.aspect.conforms_to = "CoreMM";
  CHECK(codes_of([&] { open_weaving(rs); }) == std::vector<Code>{Code::Name});
}

TEST_CASE("awm: link end with a class on each side") {
  auto rs = fixture_roles();
  by_id(rs.weaving, "HGS/Pointcut1/EndCore").slots["ref"] = std::string("M1/Student");
  by_id(rs.weaving, "HGS/Pointcut1/EndAspect").slots["ref"] = std::string("M2/HoursAspect");
  const auto view = open_weaving(rs);
  CHECK(link_kind(view.links[0], rs) == std::pair<std::string, std::string>{"Class", "Aspect"});
}

TEST_CASE("awm: one corrupted end gives exactly one E_ENDRESOLVE") {
  Gen g(31);
  int checked = 0;
  for (int round = 0; round < 200; ++round) {
    auto t = aspecis::testing::gen_triple(g);
    if (t.link_count == 0) continue;
    ModelRoleSet rs{t.core.model, t.aspect, t.weaving};
    const auto view = open_weaving(rs);
    CHECK(view.links.size() == t.link_count);

    std::vector<Element*> ends;
    for (auto& e : rs.weaving.elements)
      if (e.type == "EndCore" || e.type == "EndAspect") ends.push_back(&e);
    Element* victim = ends[static_cast<std::size_t>(g.range(0, static_cast<int>(ends.size()) - 1))];
    victim->slots["ref"] = *victim->text("ref") + "_corrupt";
    CHECK(codes_of([&] { open_weaving(rs); }) == std::vector<Code>{Code::EndResolve});
    ++checked;
  }
  CHECK(checked > 100);
}

TEST_CASE("awm: link kinds agree with independent resolution") {
  Gen g(37);
  for (int round = 0; round < 100; ++round) {
    auto t = aspecis::testing::gen_triple(g);
    ModelRoleSet rs{t.core.model, t.aspect, t.weaving};
    const auto view = open_weaving(rs);
    std::size_t link_elements = 0;
    for (const auto& e : rs.weaving.elements) link_elements += e.type == "Pointcut-Core_Aspect";
    CHECK(view.links.size() == link_elements);
    for (const auto& link : view.links) {
      const auto kind = link_kind(link, rs);
      CHECK(kind.first == resolve_id(rs.core, builtin_metamodel(kCoreMM), link.end_core).type);
      CHECK(kind.second == resolve_id(rs.aspect, builtin_metamodel(kAspectMM), link.end_aspect).type);
    }
  }
}
