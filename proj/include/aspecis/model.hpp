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

#ifndef ASPECIS_MODEL_HPP
#define ASPECIS_MODEL_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "aspecis/diagnostic.hpp"
#include "aspecis/km3.hpp"

namespace aspecis {

struct ElementRef {
  std::string id;

  friend bool operator==(const ElementRef&, const ElementRef&) = default;
  friend auto operator<=>(const ElementRef&, const ElementRef&) = default;
};

using RefList = std::vector<ElementRef>;

/// text | integer | boolean | single reference | ordered reference list
using SlotValue = std::variant<std::string, std::int64_t, bool, ElementRef, RefList>;

struct Element {
  std::string id;
  std::string type;
  std::map<std::string, SlotValue, std::less<>> slots;

  const SlotValue* slot(std::string_view feature) const;
  /// The slot as text, if present and textual.
  std::optional<std::string> text(std::string_view feature) const;
  std::optional<std::int64_t> integer(std::string_view feature) const;
  /// Target ids of a reference slot; empty when absent or not a reference.
  std::vector<std::string> refs(std::string_view feature) const;

  friend bool operator==(const Element&, const Element&) = default;
};

struct ModelInstance {
  std::string name;
  std::string conforms_to;
  std::vector<Element> elements;

  const Element* find(std::string_view id) const;
  Element* find(std::string_view id);

  friend bool operator==(const ModelInstance&, const ModelInstance&) = default;
};

/// Reads the Model-JSON format:
///
///   { "model": "<name>", "conformsTo": "<metamodel>",
///     "elements": [ { "id": "..", "type": "..",
///                     "slots": { "<feature>": <string|int|bool>
///                                           | {"ref":"<id>"}
///                                           | [{"ref":"<id>"}, ...] } } ] }
///
/// Throws E_JSON, E_SCHEMA (missing, mistyped or unknown keys) or E_DUPID.
ModelInstance parse_model(std::string_view source);

/// Elements sorted by id, keys sorted, two-space indent, trailing newline.
std::string canonical_serialize(const ModelInstance& m);

/// Structural conformance of `m` to `mm`. Throws E_NAME when `m` names a
/// different metamodel; every other violation is returned as a diagnostic
/// (E_TYPE, E_FEAT, E_VAL, E_REF, E_CONTAIN, E_DUPID).
Diagnostics check_conformance(const ModelInstance& m, const Metamodel& mm);

/// The identification function over a model: an element is named by the
/// `name` slots along its containment path, prefixed with the model name,
/// e.g. "M1/Student/NewSubscription". Containment is read from the
/// container references of `mm`. Both arguments must outlive this object.
class Identification {
 public:
  Identification(const ModelInstance& m, const Metamodel& mm);

  /// Throws E_NONAME, E_CONTAIN (element has several parents or sits on a
  /// containment cycle) or E_AMBIGUOUS.
  std::string element_id(const Element& e) const;

  /// Throws E_NORESOLVE or E_AMBIGUOUS.
  const Element& resolve(std::string_view ident) const;

  /// The unique element holding `e` in a container reference, if any.
  const Element* container_of(const Element& e) const;

 private:
  std::string name_path(const Element& e) const;

  const ModelInstance& model_;
  std::unordered_map<const Element*, std::vector<const Element*>> parents_;
  std::unordered_multimap<std::string, const Element*> by_ident_;
};

std::string element_id(const ModelInstance& m, const Metamodel& mm, const Element& e);
const Element& resolve_id(const ModelInstance& m, const Metamodel& mm, std::string_view ident);

}  // namespace aspecis

#endif  // ASPECIS_MODEL_HPP
