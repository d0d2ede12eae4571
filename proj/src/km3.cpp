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

#include "aspecis/km3.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace aspecis {

namespace {

enum class Tok { Ident, LBrace, RBrace, Colon, Semi, Comma, End };

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

bool is_letter(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {
    if (src_.substr(0, 3) == "\xEF\xBB\xBF") pos_ = 3;
  }

  Token next() {
    skip_blank();
    Token tok{Tok::End, {}, line_, column_};
    if (pos_ >= src_.size()) return tok;
    const char c = src_[pos_];
    if (is_letter(c)) {
      const auto start = pos_;
      while (pos_ < src_.size() &&
             (is_letter(src_[pos_]) || is_digit(src_[pos_]) || src_[pos_] == '_' ||
              src_[pos_] == '-'))
        advance();
      tok.kind = Tok::Ident;
      tok.text = std::string(src_.substr(start, pos_ - start));
      return tok;
    }
    switch (c) {
      case '{': tok.kind = Tok::LBrace; break;
      case '}': tok.kind = Tok::RBrace; break;
      case ':': tok.kind = Tok::Colon; break;
      case ';': tok.kind = Tok::Semi; break;
      case ',': tok.kind = Tok::Comma; break;
      default:
        throw Error(Code::Parse, location(tok),
                    std::string("unexpected character '") + c + "'");
    }
    tok.text = std::string(1, c);
    advance();
    return tok;
  }

  static std::string location(const Token& tok) {
    return std::to_string(tok.line) + ":" + std::to_string(tok.column);
  }

 private:
  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skip_blank() {
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else if (c == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '-') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else {
        break;
      }
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

class Parser {
 public:
  explicit Parser(std::string_view src) : lexer_(src) { tok_ = lexer_.next(); }

  Metamodel parse() {
    Metamodel mm;
    keyword("package");
    mm.name = ident("package name");
    expect(Tok::LBrace, "'{'");
    while (tok_.kind != Tok::RBrace) mm.classes.push_back(parse_class());
    bump();
    if (tok_.kind != Tok::End) fail("expected end of input after package");
    return mm;
  }

 private:
  MetaClass parse_class() {
    MetaClass cls;
    keyword("class");
    cls.name = ident("class name");
    if (is_keyword("extends")) {
      bump();
      cls.super_name = ident("superclass name");
      if (tok_.kind == Tok::Comma)
        throw Error(Code::Cycle, Lexer::location(tok_),
                    "class " + cls.name + " declares more than one superclass");
    }
    expect(Tok::LBrace, "'{'");
    while (tok_.kind != Tok::RBrace) cls.features.push_back(parse_feature());
    bump();
    return cls;
  }

  Feature parse_feature() {
    Feature f;
    if (is_keyword("attribute")) {
      f.kind = FeatureKind::Attribute;
    } else if (is_keyword("reference")) {
      f.kind = FeatureKind::Reference;
    } else {
      fail("expected 'attribute', 'reference' or '}'");
    }
    bump();
    f.name = ident("feature name");
    if (f.kind == FeatureKind::Reference && is_keyword("container")) {
      f.container = true;
      bump();
    }
    expect(Tok::Colon, "':'");
    f.type_name = ident("type name");
    expect(Tok::Semi, "';'");
    return f;
  }

  bool is_keyword(std::string_view word) const {
    return tok_.kind == Tok::Ident && tok_.text == word;
  }

  void keyword(std::string_view word) {
    if (!is_keyword(word)) fail("expected '" + std::string(word) + "'");
    bump();
  }

  std::string ident(std::string_view what) {
    if (tok_.kind != Tok::Ident) fail("expected " + std::string(what));
    std::string text = std::move(tok_.text);
    bump();
    return text;
  }

  void expect(Tok kind, std::string_view what) {
    if (tok_.kind != kind) fail("expected " + std::string(what));
    bump();
  }

  void bump() { tok_ = lexer_.next(); }

  [[noreturn]] void fail(const std::string& message) const {
    const std::string found = tok_.kind == Tok::End ? "end of input" : "'" + tok_.text + "'";
    throw Error(Code::Parse, Lexer::location(tok_), message + ", found " + found);
  }

  Lexer lexer_;
  Token tok_;
};

}  // namespace

bool is_primitive_type(std::string_view type_name) {
  return type_name == "String" || type_name == "Integer" || type_name == "Boolean";
}

Metamodel parse_km3_syntax(std::string_view source) { return Parser(source).parse(); }

Metamodel parse_km3(std::string_view source) {
  Metamodel mm = parse_km3_syntax(source);
  if (auto diagnostics = validate_metamodel(mm); !diagnostics.empty())
    throw Error(std::move(diagnostics));
  return mm;
}

std::string to_km3(const Metamodel& mm) {
  std::string out = "package " + mm.name + " {\n";
  for (const auto& cls : mm.classes) {
    out += "  class " + cls.name;
    if (cls.super_name) out += " extends " + *cls.super_name;
    out += " {\n";
    for (const auto& f : cls.features) {
      out += f.kind == FeatureKind::Attribute ? "    attribute " : "    reference ";
      out += f.name;
      if (f.container) out += " container";
      out += " : " + f.type_name + ";\n";
    }
    out += "  }\n";
  }
  out += "}\n";
  return out;
}

const MetaClass* lookup_class(const Metamodel& mm, std::string_view name) {
  auto it = std::find_if(mm.classes.begin(), mm.classes.end(),
                         [&](const MetaClass& c) { return c.name == name; });
  return it == mm.classes.end() ? nullptr : &*it;
}

std::vector<Feature> features_of(const Metamodel& mm, std::string_view class_name) {
  const MetaClass* cls = lookup_class(mm, class_name);
  if (!cls)
    throw Error(Code::NoClass, make_path(mm.name, class_name),
                "no class named " + std::string(class_name));

  std::vector<const MetaClass*> chain;
  std::unordered_set<std::string_view> seen;
  for (const MetaClass* c = cls; c; c = c->super_name ? lookup_class(mm, *c->super_name) : nullptr) {
    if (!seen.insert(c->name).second)
      throw Error(Code::Cycle, make_path(mm.name, class_name),
                  "inheritance cycle through " + c->name);
    chain.push_back(c);
  }

  std::vector<Feature> out;
  for (auto it = chain.rbegin(); it != chain.rend(); ++it)
    out.insert(out.end(), (*it)->features.begin(), (*it)->features.end());
  return out;
}

bool is_subclass_of(const Metamodel& mm, std::string_view sub, std::string_view base) {
  std::unordered_set<std::string_view> seen;
  for (const MetaClass* c = lookup_class(mm, sub); c;
       c = c->super_name ? lookup_class(mm, *c->super_name) : nullptr) {
    if (c->name == base) return true;
    if (!seen.insert(c->name).second) return false;
  }
  return false;
}

Diagnostics validate_metamodel(const Metamodel& mm) {
  Diagnostics out;

  std::unordered_map<std::string_view, const MetaClass*> by_name;
  for (const auto& cls : mm.classes) {
    if (!by_name.emplace(cls.name, &cls).second)
      out.push_back({Code::DupClass, make_path(mm.name, cls.name),
                     "duplicate class " + cls.name});
  }

  const auto find = [&](std::string_view name) -> const MetaClass* {
    auto it = by_name.find(name);
    return it == by_name.end() ? nullptr : it->second;
  };

  for (const auto& cls : mm.classes) {
    if (cls.super_name && !find(*cls.super_name))
      out.push_back({Code::BadType, make_path(mm.name, cls.name),
                     "superclass " + *cls.super_name + " is not a class of " + mm.name});
    for (const auto& f : cls.features) {
      const auto path = make_path(mm.name, cls.name, f.name);
      if (f.kind == FeatureKind::Attribute) {
        if (f.container)
          out.push_back({Code::BadType, path, "attribute " + f.name + " cannot be a container"});
        if (!is_primitive_type(f.type_name))
          out.push_back({Code::BadType, path,
                         "attribute type " + f.type_name + " is not String, Integer or Boolean"});
      } else if (!find(f.type_name)) {
        out.push_back({Code::BadType, path,
                       "reference type " + f.type_name + " is not a class of " + mm.name});
      }
    }
  }

  // Each cycle is reported once, at its member that comes first in source order.
  std::set<std::string_view> on_cycle;
  std::set<std::string_view> reported;
  for (const auto& cls : mm.classes) {
    std::vector<const MetaClass*> walk;
    const MetaClass* c = &cls;
    while (c && std::find(walk.begin(), walk.end(), c) == walk.end()) {
      walk.push_back(c);
      c = c->super_name ? find(*c->super_name) : nullptr;
    }
    if (!c) continue;
    auto start = std::find(walk.begin(), walk.end(), c);
    std::vector<const MetaClass*> cycle(start, walk.end());
    for (const auto* member : cycle) on_cycle.insert(member->name);
    const MetaClass* anchor = *std::min_element(
        cycle.begin(), cycle.end(), [](const MetaClass* a, const MetaClass* b) { return a < b; });
    if (reported.insert(anchor->name).second)
      out.push_back({Code::Cycle, make_path(mm.name, anchor->name),
                     "inheritance cycle through " + anchor->name});
  }

  // Redefinition is reported on the class whose own declaration collides.
  for (const auto& cls : mm.classes) {
    std::unordered_set<std::string> inherited;
    bool cyclic = false;
    std::unordered_set<std::string_view> seen{cls.name};
    for (const MetaClass* s = cls.super_name ? find(*cls.super_name) : nullptr; s;
         s = s->super_name ? find(*s->super_name) : nullptr) {
      if (on_cycle.count(s->name) || !seen.insert(s->name).second) {
        cyclic = true;
        break;
      }
      for (const auto& f : s->features) inherited.insert(f.name);
    }
    if (cyclic || on_cycle.count(cls.name)) continue;
    std::unordered_set<std::string> own;
    for (const auto& f : cls.features) {
      if (inherited.count(f.name) || !own.insert(f.name).second)
        out.push_back({Code::DupFeature, make_path(mm.name, cls.name, f.name),
                       "feature " + f.name + " is already defined for " + cls.name});
    }
  }

  return out;
}

}  // namespace aspecis
