#pragma once

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "synwb/classifiers.hpp"
#include "synwb/errors.hpp"
#include "synwb/exhaustion.hpp"
#include "synwb/family.hpp"
#include "synwb/family_io.hpp"
#include "synwb/levelset.hpp"
#include "synwb/report.hpp"
#include "synwb/structure.hpp"
#include "synwb/zgroup.hpp"

namespace synwb {

namespace cli_detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), errc::parse_error, path + ": cannot open");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline std::string dir_of(const std::string& path) {
  const auto slash = path.find_last_of('/');
  return slash == std::string::npos ? std::string() : path.substr(0, slash + 1);
}

/// A class is one of the built-in names or a path to an exhaustion spec:
/// an ordered list of structure files, one per line, relative to the spec.
inline Exhaustion load_class(const std::string& cls, int depth) {
  if (cls == "linear" || cls == "sets" || cls == "bitgraph") return built_in_exhaustion(cls, depth);
  const std::string text = read_file(cls);
  std::istringstream lines(text);
  std::vector<FinStructure> chain;
  std::string line;
  int lineno = 0;
  while (std::getline(lines, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream probe(line);
    std::string path;
    if (!(probe >> path)) continue;
    const std::string full = path.front() == '/' ? path : dir_of(cls) + path;
    std::istringstream body(read_file(full));
    chain.push_back(parse_structure(body, full));
    if (depth > 0 && static_cast<int>(chain.size()) == depth) break;
  }
  require(!chain.empty(), errc::parse_error, cls + ": exhaustion spec lists no structures");
  return Exhaustion(std::move(chain), cls);
}

inline nlohmann::ordered_json family_json(const Family& f) {
  nlohmann::ordered_json j;
  std::string ground;
  for (std::size_t i = 0; i < f.ground().size(); ++i)
    ground += (i ? "," : "") + f.ground().atom(i);
  j["ground"] = ground;
  auto minimals = nlohmann::ordered_json::array();
  for (Subset m : f.minimals()) minimals.push_back(f.ground().format_subset(m));
  j["minimals"] = minimals;
  return j;
}

inline nlohmann::ordered_json thick_json(const ThickVerdict& v) {
  nlohmann::ordered_json j;
  j["certified_through"] = v.certified() ? nlohmann::ordered_json(v.n_max)
                                         : nlohmann::ordered_json(nullptr);
  auto levels = nlohmann::ordered_json::array();
  for (const auto& l : v.levels) {
    nlohmann::ordered_json e;
    e["level"] = l.level;
    if (l.witness)
      e["witness"] = *l.witness;
    else
      e["refuted"] = true;
    levels.push_back(e);
  }
  j["levels"] = levels;
  return j;
}

inline nlohmann::ordered_json syndetic_json(const SyndeticVerdict& v) {
  nlohmann::ordered_json j;
  if (v.certified_at)
    j["certified_at"] = *v.certified_at;
  else
    j["refuted_through"] = v.n_max;
  if (const auto b = v.failing_block()) j["last_avoiding_block"] = *b;
  return j;
}

inline nlohmann::ordered_json certificate_json(const PwsCertificate& c) {
  nlohmann::ordered_json j;
  j["inner_level"] = c.inner_level;
  j["block_level"] = c.block_level;
  j["block"] = c.block;
  return j;
}

inline nlohmann::ordered_json pws_json(const PwsResult& r) {
  nlohmann::ordered_json j;
  j["certified"] = r.certified();
  j["inner_max"] = r.inner_max;
  j["block_level"] = r.block_level;
  if (r.certificate) j["certificate"] = certificate_json(*r.certificate);
  return j;
}

struct LoadedSet {
  LevelSetSpec spec;
  Workspace workspace;
  LevelSet set;
};

inline LoadedSet load_set(const std::string& cls, const std::string& path, Report& report) {
  const std::string text = read_file(path);
  report.add_input(path, text);
  std::istringstream in(text);
  const LevelSetSpec spec = parse_level_set(in, path);
  require(spec.class_name == cls, errc::precondition,
          path + ": level set was written for class '" + spec.class_name + "', not '" + cls + "'");
  Workspace ws{load_class(cls, spec.horizon)};
  LevelSet set = spec.realize(ws);
  return {spec, std::move(ws), std::move(set)};
}

inline void emit(const Report& report, bool as_json, std::ostream& out) {
  out << (as_json ? report.machine() : report.human());
}

}  // namespace cli_detail

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  using nlohmann::ordered_json;
  namespace cd = cli_detail;

  CLI::App app{"combinatorics workbench: families, embedding classifiers, integer baseline"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "emit the machine report instead of text");

  // families ------------------------------------------------------------
  auto* families = app.add_subcommand("families", "family and ultrafilter calculus");
  families->require_subcommand(1);
  std::string family_path, map_path;

  auto* ults = families->add_subcommand("ults", "enumerate the ultrafilters on a family");
  ults->add_option("--family", family_path, "family file")->required();

  auto* check_map = families->add_subcommand("check-map", "strong/regular/conservative verdicts");
  check_map->add_option("--family", family_path, "family on the map's source")->required();
  check_map->add_option("--map", map_path, "surjection file")->required();

  auto* min_max = families->add_subcommand("min-max", "least and greatest preimage families");
  min_max->add_option("--family", family_path, "family on the map's target")->required();
  min_max->add_option("--map", map_path, "surjection file")->required();

  auto* disjoint = families->add_subcommand("disjoint", "pairwise ultrafilter disjointness");
  disjoint->add_option("--family", family_path, "family file")->required();

  int survey_source = 3, survey_target = 2;
  auto* survey = families->add_subcommand("survey", "exhaustive regular/strong census");
  survey->add_option("--source-size", survey_source, "ground set size (2..4)");
  survey->add_option("--target-size", survey_target, "target size (1..3)");

  // fraisse ---------------------------------------------------------------
  auto* fraisse = app.add_subcommand("fraisse", "embedding enumeration and classifiers");
  fraisse->require_subcommand(1);
  std::string cls = "linear", set_path, set2_path, avoid_path;
  std::string out_synd, out_thick, out_carved;
  int m_level = 1, n_level = 2, n_max = 0, inner = 0, block = 0, horizon = 0;
  std::size_t f_index = 0;

  auto* emb_count = fraisse->add_subcommand("emb-count", "count embeddings between levels");
  emb_count->add_option("--class", cls, "linear|sets|bitgraph|<exhaustion file>");
  emb_count->add_option("--m", m_level, "source level")->required();
  emb_count->add_option("--n", n_level, "target level")->required();

  auto* classify = fraisse->add_subcommand("classify", "thick/syndetic/pws verdicts for a set");
  classify->add_option("--class", cls);
  classify->add_option("--set", set_path, "level set file")->required();
  classify->add_option("--nmax", n_max, "deepest level to certify (default: horizon)");
  classify->add_option("--pws-inner", inner, "inner level for the pws search (default: nmax)");
  classify->add_option("--pws-block", block, "block level for the pws search (default: nmax)");

  auto* decompose_cmd = fraisse->add_subcommand("decompose", "split a pws set as S n T");
  decompose_cmd->add_option("--class", cls);
  decompose_cmd->add_option("--set", set_path)->required();
  decompose_cmd->add_option("--nmax", n_max, "certification depth")->required();
  decompose_cmd->add_option("--block", block, "block level")->required();
  decompose_cmd->add_option("--out-synd", out_synd, "write the syndetic part here");
  decompose_cmd->add_option("--out-thick", out_thick, "write the thick part here");

  auto* split_cmd = fraisse->add_subcommand("split", "hand a union certificate to one part");
  split_cmd->add_option("--class", cls);
  split_cmd->add_option("--set1", set_path)->required();
  split_cmd->add_option("--set2", set2_path)->required();
  split_cmd->add_option("--inner", inner, "inner level for the union certificate")->required();
  split_cmd->add_option("--block", block, "block level for the union certificate")->required();

  auto* carve_cmd = fraisse->add_subcommand("carve", "carve a thick subset avoiding a refuted set");
  carve_cmd->add_option("--class", cls);
  carve_cmd->add_option("--thick", set_path, "thick level set file")->required();
  carve_cmd->add_option("--avoid", avoid_path, "refuted level set file")->required();
  carve_cmd->add_option("--inner", inner)->required();
  carve_cmd->add_option("--block", block)->required();
  carve_cmd->add_option("--out", out_carved, "write the carved set here");

  auto* absorb = fraisse->add_subcommand("absorb", "absorb an embedding onto an inclusion");
  absorb->add_option("--class", cls);
  absorb->add_option("--m", m_level)->required();
  absorb->add_option("--n", n_level)->required();
  absorb->add_option("--f-index", f_index, "canonical index of f in Emb(A_m, A_n)")->required();
  absorb->add_option("--horizon", horizon, "search depth (default: universe cap)");

  // zgrp ----------------------------------------------------------------
  auto* zgrp = app.add_subcommand("zgrp", "integer baseline for ultimately periodic sets");
  zgrp->require_subcommand(1);
  std::vector<std::string> literal;
  long long dump_window = 0;

  auto* zclassify = zgrp->add_subcommand("classify", "thick/syndetic/pws verdicts");
  zclassify->add_option("literal", literal, "period=p pattern=bits [patch=a,b,...]")->expected(-1);
  zclassify->add_option("--dump-window", dump_window, "also dump membership on [-W, W]");

  auto* zpsi = zgrp->add_subcommand("psi", "minimal shift uniformization");
  zpsi->add_option("literal", literal)->expected(-1);

  auto* zdecompose = zgrp->add_subcommand("decompose", "syndetic and thick parts");
  zdecompose->add_option("literal", literal)->expected(-1);

  // let --json appear anywhere on the line
  for (auto* group : app.get_subcommands(nullptr)) {
    group->fallthrough();
    for (auto* leaf : group->get_subcommands(nullptr)) leaf->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  std::string command;
  for (int i = 1; i < argc; ++i) command += std::string(i > 1 ? " " : "") + argv[i];
  Report report(command);
  const auto started = std::chrono::steady_clock::now();

  try {
    auto load_family_file = [&](const std::string& path) {
      const std::string text = cd::read_file(path);
      report.add_input(path, text);
      std::istringstream in(text);
      return parse_family(in, path);
    };
    auto load_map_file = [&](const std::string& path) {
      const std::string text = cd::read_file(path);
      report.add_input(path, text);
      std::istringstream in(text);
      return parse_map(in, path);
    };
    auto write_set = [&](const std::string& path, const LevelSet& s) {
      std::ofstream o(path);
      require(static_cast<bool>(o), errc::parse_error, path + ": cannot write");
      o << format_level_set(s, cls);
    };

    if (ults->parsed()) {
      const Family f = load_family_file(family_path);
      report.result()["family"] = cd::family_json(f);
      auto bases = ordered_json::array();
      for (const auto& u : enumerate_s_ultrafilters(f))
        bases.push_back(f.ground().format_subset(u.base()));
      report.result()["ultrafilters"] = bases;
    } else if (check_map->parsed()) {
      const Family f = load_family_file(family_path);
      const SurjectionMap phi = load_map_file(map_path);
      const Family pushed = pushforward_family(phi, f);
      const Family least = phi_min(phi, pushed);
      report.result()["pushforward"] = cd::family_json(pushed);
      report.result()["strong"] = is_strong(phi, f);
      report.result()["regular"] = is_regular(phi, f);
      report.result()["conservative_over_phi_min"] = is_conservative(least, f);
    } else if (min_max->parsed()) {
      const Family t = load_family_file(family_path);
      const SurjectionMap phi = load_map_file(map_path);
      report.result()["phi_min"] = cd::family_json(phi_min(phi, t));
      report.result()["phi_max"] = cd::family_json(phi_max(phi, t));
    } else if (disjoint->parsed()) {
      const Family f = load_family_file(family_path);
      const auto r = has_disjointness(f);
      report.result()["disjoint"] = r.disjoint;
      if (!r.disjoint) {
        report.result()["witness_first"] = f.ground().format_subset(r.first);
        report.result()["witness_second"] = f.ground().format_subset(r.second);
      }
    } else if (survey->parsed()) {
      require(survey_source >= 2 && survey_source <= 4 && survey_target >= 1 && survey_target <= 3,
              errc::precondition, "survey sizes are limited to 2..4 onto 1..3");
      const auto src = GroundSet::numbered(static_cast<std::size_t>(survey_source));
      std::vector<std::string> tatoms;
      for (int i = 0; i < survey_target; ++i) tatoms.push_back(std::string(1, 'a' + i));
      const GroundSet tgt{tatoms};
      long long pairs = 0, strong = 0, regular = 0, regular_not_strong = 0;
      ordered_json exemplar;
      for_each_surjection(src, tgt, [&](const SurjectionMap& phi) {
        for_each_family(src, [&](const Family& f) {
          ++pairs;
          const bool st = is_strong(phi, f);
          const bool re = is_regular(phi, f);
          strong += st;
          regular += re;
          if (re && !st) {
            ++regular_not_strong;
            if (exemplar.empty()) {
              exemplar["family"] = cd::family_json(f);
              exemplar["map"] = format_map(phi);
            }
          }
        });
      });
      report.result()["pairs"] = pairs;
      report.result()["strong"] = strong;
      report.result()["regular"] = regular;
      report.result()["regular_not_strong"] = regular_not_strong;
      if (!exemplar.empty()) report.result()["regular_not_strong_exemplar"] = exemplar;
    } else if (emb_count->parsed()) {
      Workspace ws{cd::load_class(cls, n_level)};
      report.result()["class"] = cls;
      report.result()["m"] = m_level;
      report.result()["n"] = n_level;
      report.result()["count"] = ws.table(m_level, n_level).size();
    } else if (classify->parsed()) {
      auto loaded = cd::load_set(cls, set_path, report);
      const int depth = loaded.set.horizon();
      if (n_max == 0) n_max = depth;
      if (inner == 0) inner = n_max;
      if (block == 0) block = n_max;
      report.result()["level"] = loaded.set.level();
      report.result()["horizon"] = depth;
      report.result()["n_max"] = n_max;
      report.result()["thick"] = cd::thick_json(is_thick_up_to(loaded.workspace, loaded.set, n_max));
      report.result()["syndetic"] =
          cd::syndetic_json(is_syndetic_up_to(loaded.workspace, loaded.set, n_max));
      report.result()["pws"] = cd::pws_json(is_pws(loaded.workspace, loaded.set, inner, block));
    } else if (decompose_cmd->parsed()) {
      auto loaded = cd::load_set(cls, set_path, report);
      const Decomposition d = decompose(loaded.workspace, loaded.set, n_max, block);
      report.result()["n_max"] = d.n_max;
      report.result()["block_level"] = d.block_level;
      report.result()["thick_part"] = d.thick_part.bits().to_hex();
      report.result()["syndetic_part"] = d.syndetic_part.bits().to_hex();
      report.result()["thick_verdict"] = cd::thick_json(d.thick_verdict);
      report.result()["syndetic_verdict"] = cd::syndetic_json(d.syndetic_verdict);
      report.result()["intersection_equals_input"] =
          (d.syndetic_part & d.thick_part) == loaded.set;
      if (!out_synd.empty()) write_set(out_synd, d.syndetic_part);
      if (!out_thick.empty()) write_set(out_thick, d.thick_part);
    } else if (split_cmd->parsed()) {
      auto first = cd::load_set(cls, set_path, report);
      const std::string text2 = cd::read_file(set2_path);
      report.add_input(set2_path, text2);
      std::istringstream in2(text2);
      const LevelSet second = parse_level_set(in2, set2_path).realize(first.workspace);
      const LevelSet both = first.set | second;
      const PwsResult r = is_pws(first.workspace, both, inner, block);
      require(r.certified(), errc::not_found, "the union carries no certificate here");
      const SplitResult s = split_pws(first.workspace, first.set, second, *r.certificate);
      report.result()["union_certificate"] = cd::certificate_json(*r.certificate);
      report.result()["index"] = s.index;
      report.result()["certificate"] = cd::certificate_json(s.certificate);
    } else if (carve_cmd->parsed()) {
      auto thick = cd::load_set(cls, set_path, report);
      const std::string text2 = cd::read_file(avoid_path);
      report.add_input(avoid_path, text2);
      std::istringstream in2(text2);
      const LevelSet avoid = parse_level_set(in2, avoid_path).realize(thick.workspace);
      const LevelSet carved = carve_thick(thick.workspace, thick.set, avoid, inner, block);
      report.result()["carved"] = carved.bits().to_hex();
      report.result()["inner"] = inner;
      report.result()["block_level"] = block;
      if (!out_carved.empty()) write_set(out_carved, carved);
    } else if (absorb->parsed()) {
      if (horizon == 0) horizon = static_cast<int>(max_universe());
      Workspace ws{cd::load_class(cls, horizon)};
      const auto& table = ws.table(m_level, n_level);
      require(f_index < table.size(), errc::precondition, "f-index out of range");
      const Embedding f = table.at(f_index);
      const Absorption a = solve_absorption(ws, f, m_level, n_level);
      report.result()["f"] = f;
      report.result()["level"] = a.level;
      report.result()["h"] = a.h;
      report.result()["verified"] = dual_apply(f, a.h) == ws.inclusion(m_level, a.level);
    } else if (zclassify->parsed() || zpsi->parsed() || zdecompose->parsed()) {
      const UPSet u = parse_upset(literal);
      report.result()["set"] = format_upset(u);
      if (zclassify->parsed()) {
        const auto v = classify_up(u);
        report.result()["thick"] = v.thick;
        report.result()["syndetic"] = v.syndetic;
        report.result()["pws"] = v.pws;
        if (dump_window > 0)
          report.result()["window"] = WindowSet::from(u, dump_window).dump01();
      } else if (zpsi->parsed()) {
        const PsiResult r = psi(u);
        report.result()["k"] = r.k;
        report.result()["shifts"] = r.shifts;
        report.result()["thick_union"] = format_upset(r.thick_union);
        report.result()["psi"] = format_upset(r.psi);
      } else {
        const UPDecomposition d = decompose_up(u);
        report.result()["k"] = d.via.k;
        report.result()["shifts"] = d.via.shifts;
        report.result()["syndetic_part"] = format_upset(d.syndetic_part);
        report.result()["thick_part"] = format_upset(d.thick_part);
      }
    }
  } catch (const Error& e) {
    err << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }

  const auto elapsed = std::chrono::steady_clock::now() - started;
  report.set_timing_ms(std::chrono::duration<double, std::milli>(elapsed).count());
  cd::emit(report, as_json, out);
  return 0;
}

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.push_back("synwb");
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace synwb
