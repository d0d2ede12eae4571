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

#include "aspecis/diagnostic.hpp"

#include <array>
#include <cassert>
#include <utility>

namespace aspecis {

namespace {

struct CodeEntry {
  Code code;
  std::string_view name;
};

constexpr std::array kCodes{
    CodeEntry{Code::Parse, "E_PARSE"},
    CodeEntry{Code::DupClass, "E_DUPCLASS"},
    CodeEntry{Code::DupFeature, "E_DUPFEAT"},
    CodeEntry{Code::BadType, "E_BADTYPE"},
    CodeEntry{Code::Cycle, "E_CYCLE"},
    CodeEntry{Code::NoClass, "E_NOCLASS"},
    CodeEntry{Code::Io, "E_IO"},
    CodeEntry{Code::Json, "E_JSON"},
    CodeEntry{Code::Schema, "E_SCHEMA"},
    CodeEntry{Code::DupId, "E_DUPID"},
    CodeEntry{Code::Name, "E_NAME"},
    CodeEntry{Code::Type, "E_TYPE"},
    CodeEntry{Code::Feat, "E_FEAT"},
    CodeEntry{Code::Val, "E_VAL"},
    CodeEntry{Code::Ref, "E_REF"},
    CodeEntry{Code::Contain, "E_CONTAIN"},
    CodeEntry{Code::NoName, "E_NONAME"},
    CodeEntry{Code::Ambiguous, "E_AMBIGUOUS"},
    CodeEntry{Code::NoResolve, "E_NORESOLVE"},
    CodeEntry{Code::Root, "E_ROOT"},
    CodeEntry{Code::EndResolve, "E_ENDRESOLVE"},
    CodeEntry{Code::ModelRef, "E_MODELREF"},
    CodeEntry{Code::Pattern, "E_PATTERN"},
    CodeEntry{Code::PcType, "E_PCTYPE"},
    CodeEntry{Code::EndNotMatched, "E_ENDNOTMATCHED"},
    CodeEntry{Code::NoAdvice, "E_NOADVICE"},
    CodeEntry{Code::NoPointcut, "E_NOPOINTCUT"},
    CodeEntry{Code::Kind, "E_KIND"},
    CodeEntry{Code::Conflict, "E_CONFLICT"},
    CodeEntry{Code::NameClash, "E_NAMECLASH"},
    CodeEntry{Code::Usage, "E_USAGE"},
};

std::string summarize(const Diagnostics& diagnostics) {
  std::string out;
  for (const auto& d : diagnostics) {
    if (!out.empty()) out += '\n';
    out += to_string(d);
  }
  return out;
}

}  // namespace

std::string_view code_name(Code code) {
  for (const auto& entry : kCodes)
    if (entry.code == code) return entry.name;
  assert(false && "unregistered diagnostic code");
  return "E_UNKNOWN";
}

std::optional<Code> code_from_name(std::string_view name) {
  for (const auto& entry : kCodes)
    if (entry.name == name) return entry.code;
  return std::nullopt;
}

int exit_code_for(Code code) {
  switch (code) {
    case Code::Parse:
    case Code::DupClass:
    case Code::DupFeature:
    case Code::BadType:
    case Code::Cycle:
    case Code::Io:
    case Code::Json:
    case Code::Schema:
    case Code::DupId:
      return 3;
    case Code::Conflict:
      return 2;
    default:
      return 1;
  }
}

std::string to_string(const Diagnostic& d) {
  std::string out{code_name(d.code)};
  if (!d.path.empty()) {
    out += ' ';
    out += d.path;
  }
  out += ": ";
  out += d.message;
  return out;
}

std::string make_path(std::string_view container, std::string_view element,
                      std::string_view feature) {
  std::string out{container};
  if (!element.empty()) {
    out += '#';
    out += element;
  }
  if (!feature.empty()) {
    out += '.';
    out += feature;
  }
  return out;
}

Error::Error(Code code, std::string path, std::string message)
    : Error(Diagnostics{Diagnostic{code, std::move(path), std::move(message)}}) {}

Error::Error(Diagnostics diagnostics)
    : std::runtime_error(summarize(diagnostics)), diagnostics_(std::move(diagnostics)) {
  assert(!diagnostics_.empty());
}

}  // namespace aspecis
