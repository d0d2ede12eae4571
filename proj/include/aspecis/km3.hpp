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

#ifndef ASPECIS_KM3_HPP
#define ASPECIS_KM3_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "aspecis/diagnostic.hpp"

namespace aspecis {

enum class FeatureKind { Attribute, Reference };

struct Feature {
  FeatureKind kind = FeatureKind::Attribute;
  std::string name;
  std::string type_name;
  // only meaningful for references
  bool container = false;

  friend bool operator==(const Feature&, const Feature&) = default;
};

struct MetaClass {
  std::string name;
  std::optional<std::string> super_name;
  std::vector<Feature> features;

  friend bool operator==(const MetaClass&, const MetaClass&) = default;
};

/// A package of classes written in the KM3 subset:
///
///   package    := "package" IDENT "{" class* "}"
///   class      := "class" IDENT ("extends" IDENT)? "{" feature* "}"
///   feature    := "attribute" IDENT ":" IDENT ";"
///               | "reference" IDENT ("container")? ":" IDENT ";"
///
/// Identifiers may contain '-' after the first letter; "--" starts a comment.
struct Metamodel {
  std::string name;
  std::vector<MetaClass> classes;

  friend bool operator==(const Metamodel&, const Metamodel&) = default;
};

bool is_primitive_type(std::string_view type_name);

/// Parses and validates. Throws Error with E_PARSE (path "line:col") on
/// malformed input, or the validate_metamodel() diagnostics when the
/// package is syntactically fine but ill-formed.
Metamodel parse_km3(std::string_view source);

/// Grammar only; no name resolution. Multiple inheritance is rejected here
/// with E_CYCLE.
Metamodel parse_km3_syntax(std::string_view source);

/// Renders `mm` in the KM3 subset; parse_km3_syntax() of the result is equal to `mm`.
std::string to_km3(const Metamodel& mm);

const MetaClass* lookup_class(const Metamodel& mm, std::string_view name);

/// Inherited features first, then the class's own. Throws E_NOCLASS for an
/// unknown class and E_CYCLE if the superclass chain loops.
std::vector<Feature> features_of(const Metamodel& mm, std::string_view class_name);

/// Reflexive: a class is a subclass of itself.
bool is_subclass_of(const Metamodel& mm, std::string_view sub, std::string_view base);

/// Empty iff class names are unique, every type name resolves, attribute
/// types are primitive and reference types are classes, the inheritance
/// graph is acyclic, and no feature is redefined along a superclass chain.
Diagnostics validate_metamodel(const Metamodel& mm);

}  // namespace aspecis

#endif  // ASPECIS_KM3_HPP
