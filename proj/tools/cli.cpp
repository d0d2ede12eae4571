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

#include "cli.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "aspecis/awm.hpp"
#include "aspecis/diagnostic.hpp"
#include "aspecis/km3.hpp"
#include "aspecis/model.hpp"
#include "aspecis/pointcut.hpp"
#include "aspecis/weaver.hpp"
#include "json.hpp"

namespace aspecis::cli {

namespace {

enum class Format { Text, Json };

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Code::Io, path, "cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw Error(Code::Io, path, "read failed");
  return buf.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Code::Io, path, "cannot open file for writing");
  out << contents;
  out.flush();
  if (!out) throw Error(Code::Io, path, "write failed");
}

// Re-raises load failures with the file name in front of each path.
template <typename Fn>
auto with_file(const std::string& file, Fn&& load) {
  try {
    return load(read_file(file));
  } catch (const Error& e) {
    if (e.code() == Code::Io) throw;
    Diagnostics located = e.diagnostics();
    for (auto& d : located) d.path = d.path.empty() ? file : file + ":" + d.path;
    throw Error(std::move(located));
  }
}

Metamodel load_metamodel(const std::string& file) {
  return with_file(file, [](const std::string& text) { return parse_km3(text); });
}

ModelInstance load_model(const std::string& file) {
  return with_file(file, [](const std::string& text) { return parse_model(text); });
}

void report(const Diagnostics& diagnostics, Format format, std::ostream& err) {
  if (format == Format::Json) {
    auto arr = nlohmann::json::array();
    for (const auto& d : diagnostics)
      arr.push_back({{"code", code_name(d.code)}, {"path", d.path}, {"message", d.message}});
    err << arr.dump(2) << '\n';
    return;
  }
  for (const auto& d : diagnostics) err << to_string(d) << '\n';
}

int exit_code_for(const Diagnostics& diagnostics) {
  int worst = 0;
  for (const auto& d : diagnostics) {
    const int code = aspecis::exit_code_for(d.code);
    // I/O beats conflicts beats validation
    if (code == 3 || (code == 2 && worst != 3) || worst == 0) worst = code;
  }
  return worst;
}

struct Options {
  std::string model;
  std::string metamodel;
  std::string core;
  std::string aspect;
  std::string weaving;
  std::string out;
  std::string type;
  std::string pattern;
  std::string resolve = "fail";
  Format format = Format::Text;
};

ModelRoleSet load_roles(const Options& opt) {
  return ModelRoleSet{load_model(opt.core), load_model(opt.aspect), load_model(opt.weaving)};
}

int cmd_validate(const Options& opt, std::ostream&, std::ostream& err) {
  const Metamodel mm = load_metamodel(opt.metamodel);
  const ModelInstance m = load_model(opt.model);
  Diagnostics diagnostics;
  try {
    diagnostics = check_conformance(m, mm);
  } catch (const Error& e) {
    diagnostics = e.diagnostics();
  }
  if (opt.format == Format::Json || !diagnostics.empty()) report(diagnostics, opt.format, err);
  return diagnostics.empty() ? 0 : 1;
}

int cmd_match(const Options& opt, std::ostream& out, std::ostream& err) {
  const Pattern pattern = parse_pattern(opt.pattern);
  if (!parse_joinpoint_kind(opt.type))
    throw Error(Code::PcType, opt.type, "pointcut type must be \"call\" or \"execution\"");
  const ModelInstance core = load_model(opt.core);
  if (auto diagnostics = check_conformance(core, builtin_metamodel(kCoreMM)); !diagnostics.empty())
    throw Error(std::move(diagnostics));
  for (const auto& jp : match_pointcut(core, opt.type, pattern)) out << jp.operation_id << '\n';
  (void)err;
  return 0;
}

int cmd_weave(const Options& opt, std::ostream&, std::ostream&) {
  const ModelRoleSet rs = load_roles(opt);
  const auto mode = opt.resolve == "priority" ? ResolveMode::Priority : ResolveMode::Fail;
  const WovenModel woven = weave(rs, mode);
  write_file(opt.out, canonical_serialize(woven.model));
  return 0;
}

int cmd_explain(const Options& opt, std::ostream& out, std::ostream&) {
  const ModelRoleSet rs = load_roles(opt);
  const WeavingView view = open_weaving(rs);
  const auto apps = collect_applications(rs, view);
  const Identification aspect_ids(rs.aspect, builtin_metamodel(kAspectMM));

  out << "weaving " << view.root->text("name").value_or(view.root->id) << " (" << rs.weaving.name
      << "): core " << view.core_ref.model_name << ", aspect " << view.aspect_ref.model_name << '\n';
  out << view.links.size() << (view.links.size() == 1 ? " link" : " links") << '\n';

  for (const auto& link : view.links) {
    const auto [core_type, aspect_type] = link_kind(link, rs);
    out << "link " << link.name << '\n';
    out << "  endCore    " << link.end_core << '\n';
    out << "  endAspect  " << link.end_aspect << '\n';
    out << "  kind       (" << core_type << ", " << aspect_type << ")\n";
    const Element& advice = aspect_ids.resolve(link.end_aspect);
    const auto pc_refs = advice.refs("pointcut");
    const Element* pointcut = pc_refs.size() == 1 ? rs.aspect.find(pc_refs.front()) : nullptr;
    if (pointcut) {
      const auto type = pointcut->text("typePointcut").value_or("");
      const auto text = pointcut->text("pattern").value_or("");
      out << "  pointcut   " << pointcut->text("name").value_or(pointcut->id) << ' ' << type << ' '
          << text << '\n';
      for (const auto& jp : match_pointcut(rs.core, type, parse_pattern(text)))
        out << "  matched    " << jp.operation_id << '\n';
    }
  }

  out << "applications " << apps.size() << '\n';
  for (const auto& app : apps) {
    out << "  " << app.join_point.operation_id << ' ' << to_string(app.join_point.kind) << ' '
        << to_string(app.kind) << ' ' << app.advice_name << " (" << app.advice_id << ") priority "
        << app.priority << " order " << app.order_index << '\n';
  }

  const auto conflicts = detect_conflicts(apps);
  out << "conflicts " << conflicts.size() << '\n';
  for (const auto& c : conflicts) {
    out << "  " << c.join_point.operation_id << ':';
    for (const auto& contender : c.contenders)
      out << ' ' << contender.advice_id << " (priority " << contender.priority << ')';
    out << " -> " << (c.dominant ? "dominant " + *c.dominant : std::string("unresolved")) << '\n';
  }
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Weave aspectual requirements into existing requirement models", "aspecis"};
  app.require_subcommand(1);
  Options opt;

  const std::map<std::string, Format> formats{{"text", Format::Text}, {"json", Format::Json}};
  const auto add_format = [&](CLI::App* cmd) {
    cmd->add_option("--format", opt.format, "Diagnostics format")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  };
  const auto add_roles = [&](CLI::App* cmd) {
    cmd->add_option("--core", opt.core, "Core model (existing requirements)")->required();
    cmd->add_option("--aspect", opt.aspect, "Aspect model (aspectual requirements)")->required();
    cmd->add_option("--weaving", opt.weaving, "Weaving model")->required();
  };

  auto* validate = app.add_subcommand("validate", "Check a model against a KM3 metamodel");
  validate->add_option("-m,--model", opt.model, "Model-JSON file")->required();
  validate->add_option("-M,--metamodel", opt.metamodel, "KM3 metamodel file")->required();
  add_format(validate);

  auto* match = app.add_subcommand("match", "List the join points a pointcut selects");
  match->add_option("--core", opt.core, "Core model")->required();
  match->add_option("--type", opt.type, "Pointcut type: call or execution")->required();
  match->add_option("--pattern", opt.pattern, "Pattern <Class>.<Operation>, '*' wildcards")->required();
  add_format(match);

  auto* weave_cmd = app.add_subcommand("weave", "Weave the aspect model into the core model");
  add_roles(weave_cmd);
  weave_cmd->add_option("--out", opt.out, "Output file for the woven model")->required();
  weave_cmd->add_option("--resolve", opt.resolve, "Conflict handling: fail or priority")
      ->check(CLI::IsMember({"fail", "priority"}));
  add_format(weave_cmd);

  auto* explain = app.add_subcommand("explain", "Report links, join points and applications");
  add_roles(explain);
  add_format(explain);

  std::vector<const char*> argv{"aspecis"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return 1;
  }

  try {
    if (validate->parsed()) return cmd_validate(opt, out, err);
    if (match->parsed()) return cmd_match(opt, out, err);
    if (weave_cmd->parsed()) return cmd_weave(opt, out, err);
    return cmd_explain(opt, out, err);
  } catch (const Error& e) {
    report(e.diagnostics(), opt.format, err);
    return exit_code_for(e.diagnostics());
  } catch (const std::exception& e) {
    err << "E_IO: " << e.what() << '\n';
    return 3;
  }
}

}  // namespace aspecis::cli
