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

#include "aspecis/model.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

#include "json.hpp"

namespace aspecis {

using nlohmann::json;

const SlotValue* Element::slot(std::string_view feature) const {
  auto it = slots.find(feature);
  return it == slots.end() ? nullptr : &it->second;
}

std::optional<std::string> Element::text(std::string_view feature) const {
  const SlotValue* v = slot(feature);
  if (const auto* s = v ? std::get_if<std::string>(v) : nullptr) return *s;
  return std::nullopt;
}

std::optional<std::int64_t> Element::integer(std::string_view feature) const {
  const SlotValue* v = slot(feature);
  if (const auto* i = v ? std::get_if<std::int64_t>(v) : nullptr) return *i;
  return std::nullopt;
}

std::vector<std::string> Element::refs(std::string_view feature) const {
  std::vector<std::string> out;
  const SlotValue* v = slot(feature);
  if (!v) return out;
  if (const auto* r = std::get_if<ElementRef>(v)) {
    out.push_back(r->id);
  } else if (const auto* list = std::get_if<RefList>(v)) {
    for (const auto& ref : *list) out.push_back(ref.id);
  }
  return out;
}

const Element* ModelInstance::find(std::string_view id) const {
  auto it = std::find_if(elements.begin(), elements.end(),
                         [&](const Element& e) { return e.id == id; });
  return it == elements.end() ? nullptr : &*it;
}

Element* ModelInstance::find(std::string_view id) {
  return const_cast<Element*>(std::as_const(*this).find(id));
}

// --- Model-JSON ------------------------------------------------------------

namespace {

void require_keys(const json& obj, std::initializer_list<std::string_view> keys,
                  const std::string& where) {
  if (!obj.is_object()) throw Error(Code::Schema, where, "expected a JSON object");
  for (auto key : keys) {
    if (!obj.contains(key))
      throw Error(Code::Schema, where, "missing key \"" + std::string(key) + "\"");
  }
  for (const auto& [key, value] : obj.items()) {
    if (std::find(keys.begin(), keys.end(), key) == keys.end())
      throw Error(Code::Schema, where, "unknown key \"" + key + "\"");
  }
}

std::string require_string(const json& obj, const char* key, const std::string& where) {
  const auto& v = obj.at(key);
  if (!v.is_string())
    throw Error(Code::Schema, where, "\"" + std::string(key) + "\" must be a string");
  return v.get<std::string>();
}

ElementRef parse_ref(const json& v, const std::string& where) {
  if (!v.is_object() || v.size() != 1 || !v.contains("ref") || !v.at("ref").is_string())
    throw Error(Code::Schema, where, "reference must be {\"ref\": \"<id>\"}");
  return ElementRef{v.at("ref").get<std::string>()};
}

SlotValue parse_slot(const json& v, const std::string& where) {
  switch (v.type()) {
    case json::value_t::string:
      return v.get<std::string>();
    case json::value_t::boolean:
      return v.get<bool>();
    case json::value_t::number_integer:
      return v.get<std::int64_t>();
    case json::value_t::number_unsigned: {
      const auto u = v.get<std::uint64_t>();
      if (u > static_cast<std::uint64_t>(INT64_MAX))
        throw Error(Code::Schema, where, "integer out of range");
      return static_cast<std::int64_t>(u);
    }
    case json::value_t::object:
      return parse_ref(v, where);
    case json::value_t::array: {
      RefList list;
      for (const auto& item : v) list.push_back(parse_ref(item, where));
      return list;
    }
    default:
      throw Error(Code::Schema, where,
                  "slot value must be a string, integer, boolean, reference or reference list");
  }
}

json slot_to_json(const SlotValue& value) {
  return std::visit(
      [](const auto& v) -> json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, ElementRef>) {
          return json{{"ref", v.id}};
        } else if constexpr (std::is_same_v<T, RefList>) {
          json arr = json::array();
          for (const auto& r : v) arr.push_back(json{{"ref", r.id}});
          return arr;
        } else {
          return json(v);
        }
      },
      value);
}

}  // namespace

ModelInstance parse_model(std::string_view source) {
  json doc;
  try {
    doc = json::parse(source);
  } catch (const json::parse_error& e) {
    throw Error(Code::Json, "", e.what());
  }

  require_keys(doc, {"model", "conformsTo", "elements"}, "");
  ModelInstance m;
  m.name = require_string(doc, "model", "");
  m.conforms_to = require_string(doc, "conformsTo", m.name);
  const auto& elements = doc.at("elements");
  if (!elements.is_array()) throw Error(Code::Schema, m.name, "\"elements\" must be an array");

  std::unordered_set<std::string> ids;
  for (std::size_t i = 0; i < elements.size(); ++i) {
    const auto where = make_path(m.name, "[" + std::to_string(i) + "]");
    const auto& obj = elements[i];
    require_keys(obj, {"id", "type", "slots"}, where);
    Element e;
    e.id = require_string(obj, "id", where);
    e.type = require_string(obj, "type", where);
    const auto& slots = obj.at("slots");
    if (!slots.is_object()) throw Error(Code::Schema, where, "\"slots\" must be an object");
    for (const auto& [key, value] : slots.items())
      e.slots.emplace(key, parse_slot(value, make_path(m.name, e.id, key)));
    if (!ids.insert(e.id).second)
      throw Error(Code::DupId, make_path(m.name, e.id), "duplicate element id " + e.id);
    m.elements.push_back(std::move(e));
  }
  return m;
}

std::string canonical_serialize(const ModelInstance& m) {
  std::vector<const Element*> sorted;
  sorted.reserve(m.elements.size());
  for (const auto& e : m.elements) sorted.push_back(&e);
  std::sort(sorted.begin(), sorted.end(),
            [](const Element* a, const Element* b) { return a->id < b->id; });

  json elements = json::array();
  for (const Element* e : sorted) {
    json slots = json::object();
    for (const auto& [key, value] : e->slots) slots[key] = slot_to_json(value);
    elements.push_back(json{{"id", e->id}, {"type", e->type}, {"slots", std::move(slots)}});
  }
  json doc{{"model", m.name}, {"conformsTo", m.conforms_to}, {"elements", std::move(elements)}};
  return doc.dump(2) + "\n";
}

// --- conformance -----------------------------------------------------------

namespace {

std::string_view value_kind(const SlotValue& v) {
  switch (v.index()) {
    case 0: return "String";
    case 1: return "Integer";
    case 2: return "Boolean";
    case 3: return "reference";
    default: return "reference list";
  }
}

}  // namespace

Diagnostics check_conformance(const ModelInstance& m, const Metamodel& mm) {
  if (m.conforms_to != mm.name)
    throw Error(Code::Name, m.name,
                "model conforms to " + m.conforms_to + ", not to " + mm.name);

  Diagnostics out;
  std::unordered_map<std::string_view, const Element*> by_id;
  for (const auto& e : m.elements) {
    if (!by_id.emplace(e.id, &e).second)
      out.push_back({Code::DupId, make_path(m.name, e.id), "duplicate element id " + e.id});
  }

  std::unordered_map<std::string, std::vector<Feature>> features_by_type;
  // child id -> ids of the elements holding it in a container slot (with repeats)
  std::map<std::string_view, std::vector<std::string_view>> parents;

  for (const auto& e : m.elements) {
    if (!lookup_class(mm, e.type)) {
      out.push_back({Code::Type, make_path(m.name, e.id),
                     "unknown type " + e.type + " in " + mm.name});
      continue;
    }
    auto [it, fresh] = features_by_type.try_emplace(e.type);
    if (fresh) it->second = features_of(mm, e.type);
    const auto& features = it->second;

    for (const auto& [key, value] : e.slots) {
      const auto path = make_path(m.name, e.id, key);
      auto f = std::find_if(features.begin(), features.end(),
                            [&](const Feature& x) { return x.name == key; });
      if (f == features.end()) {
        out.push_back({Code::Feat, path, e.type + " has no feature " + key});
        continue;
      }
      if (f->kind == FeatureKind::Attribute) {
        if (value_kind(value) != f->type_name)
          out.push_back({Code::Val, path,
                         "expected " + f->type_name + ", found " + std::string(value_kind(value))});
        continue;
      }
      if (value.index() < 3) {
        out.push_back({Code::Val, path,
                       "expected a reference to " + f->type_name + ", found " +
                           std::string(value_kind(value))});
        continue;
      }
      for (const auto& target_id : e.refs(key)) {
        auto target = by_id.find(target_id);
        if (target == by_id.end()) {
          out.push_back({Code::Ref, path, "dangling reference to " + target_id});
          continue;
        }
        const Element* t = target->second;
        if (lookup_class(mm, t->type) && !is_subclass_of(mm, t->type, f->type_name))
          out.push_back({Code::Val, path,
                         target_id + " is a " + t->type + ", expected " + f->type_name});
        if (f->container) parents[t->id].push_back(e.id);
      }
    }
  }

  for (const auto& [child, holders] : parents) {
    if (holders.size() > 1)
      out.push_back({Code::Contain, make_path(m.name, child),
                     "element has " + std::to_string(holders.size()) + " containers"});
  }

  // Containment cycles; each is reported once at its smallest id.
  std::set<std::string_view> reported;
  for (const auto& [start, holders] : parents) {
    std::vector<std::string_view> walk{start};
    std::string_view cur = start;
    while (true) {
      auto p = parents.find(cur);
      if (p == parents.end() || p->second.size() != 1) break;
      cur = p->second.front();
      if (auto hit = std::find(walk.begin(), walk.end(), cur); hit != walk.end()) {
        const auto anchor = *std::min_element(hit, walk.end());
        if (reported.insert(anchor).second)
          out.push_back({Code::Contain, make_path(m.name, anchor),
                         "containment cycle through " + std::string(anchor)});
        break;
      }
      walk.push_back(cur);
    }
  }

  return out;
}

// --- identification --------------------------------------------------------

Identification::Identification(const ModelInstance& m, const Metamodel& mm) : model_(m) {
  std::unordered_map<std::string_view, const Element*> by_id;
  for (const auto& e : m.elements) by_id.emplace(e.id, &e);

  for (const auto& e : m.elements) {
    if (!lookup_class(mm, e.type)) continue;
    for (const auto& f : features_of(mm, e.type)) {
      if (f.kind != FeatureKind::Reference || !f.container) continue;
      for (const auto& child : e.refs(f.name)) {
        if (auto it = by_id.find(child); it != by_id.end()) parents_[it->second].push_back(&e);
      }
    }
  }

  for (const auto& e : m.elements) {
    try {
      by_ident_.emplace(name_path(e), &e);
    } catch (const Error&) {
      // unnamed or badly contained elements cannot be identified
    }
  }
}

const Element* Identification::container_of(const Element& e) const {
  auto it = parents_.find(&e);
  if (it == parents_.end() || it->second.size() != 1) return nullptr;
  return it->second.front();
}

std::string Identification::name_path(const Element& e) const {
  std::vector<const Element*> chain;
  for (const Element* cur = &e; cur;) {
    if (std::find(chain.begin(), chain.end(), cur) != chain.end())
      throw Error(Code::Contain, make_path(model_.name, e.id), "containment cycle");
    chain.push_back(cur);
    auto it = parents_.find(cur);
    if (it == parents_.end()) break;
    if (it->second.size() > 1)
      throw Error(Code::Contain, make_path(model_.name, cur->id), "element has several containers");
    cur = it->second.front();
  }

  std::string out = model_.name;
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
    auto name = (*it)->text("name");
    if (!name || name->empty())
      throw Error(Code::NoName, make_path(model_.name, (*it)->id, "name"),
                  "element " + (*it)->id + " has no name");
    out += '/';
    out += *name;
  }
  return out;
}

std::string Identification::element_id(const Element& e) const {
  std::string ident = name_path(e);
  if (by_ident_.count(ident) > 1)
    throw Error(Code::Ambiguous, make_path(model_.name, e.id),
                "identifier " + ident + " names several elements");
  return ident;
}

const Element& Identification::resolve(std::string_view ident) const {
  auto [first, last] = by_ident_.equal_range(std::string(ident));
  if (first == last)
    throw Error(Code::NoResolve, model_.name,
                "no element is identified by \"" + std::string(ident) + "\"");
  if (std::next(first) != last)
    throw Error(Code::Ambiguous, model_.name,
                "identifier " + std::string(ident) + " names several elements");
  return *first->second;
}

std::string element_id(const ModelInstance& m, const Metamodel& mm, const Element& e) {
  return Identification(m, mm).element_id(e);
}

const Element& resolve_id(const ModelInstance& m, const Metamodel& mm, std::string_view ident) {
  return Identification(m, mm).resolve(ident);
}

}  // namespace aspecis
