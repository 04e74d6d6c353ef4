#pragma once

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lpc/harness.hpp"
#include "lpc/l0.hpp"
#include "lpc/l1.hpp"
#include "lpc/l2.hpp"
#include "lpc/modes.hpp"
#include "lpc/parser.hpp"
#include "lpc/preprocess.hpp"
#include "lpc/pretty.hpp"
#include "lpc/sexpr.hpp"

namespace lpc {

namespace cli {

struct Options {
  std::string file;
  std::string query;
  std::string target = "l1";
  std::string pipeline = "interp";
  bool optimize = false;
  bool no_preprocess = false;
  bool pretty = false;
  bool fused = false;
  bool strict_match = false;
  bool trace = false;
  bool strict_modes = false;
  int depth = 30;
  std::size_t max_solutions = 1;
  std::uint64_t seed = 1;
  int count = 40;
  std::string profile = "horn";
  std::string json;
};

struct Failure {
  int code;
};

inline std::string read_file(const std::string& path, std::ostream& err) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    err << "lpc: cannot read " << path << "\n";
    throw Failure{2};
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline SourceProgram load(const Options& o, std::ostream& err) {
  std::string text = read_file(o.file, err);
  try {
    return parse_program(text);
  } catch (const ParseError& e) {
    err << o.file << ":" << e.describe() << "\n";
    throw Failure{2};
  }
}

inline CompiledProgram compile_for(const std::string& target, const SourceProgram& p, bool optimize) {
  if (target == "l0") return compile_program_l0(p);
  if (target == "l1") return optimize ? optimize_program_l1(compile_program_l1(p)) : compile_program_l1(p);
  if (target == "l2") return compile_program_l2(p);
  throw std::invalid_argument("unknown target '" + target + "'");
}

inline int cmd_compile(const Options& o, std::ostream& out, std::ostream& err) {
  SourceProgram p = load(o, err);
  if (!o.no_preprocess) p = preprocess_program(p);
  CompiledProgram c;
  try {
    c = compile_for(o.target, p, o.optimize);
  } catch (const CompileError& e) {
    err << o.file << ": compile error: " << e.what() << "\n";
    return 2;
  }
  for (const auto& f : c.clauses) out << (o.pretty ? pretty_print(f) : dump_sexpr(f)) << "\n";
  return 0;
}

inline void print_solution(const Solution& s, std::ostream& out) {
  if (s.bindings.empty()) {
    out << "true\n";
    return;
  }
  for (std::size_t i = 0; i < s.bindings.size(); ++i)
    out << (i ? "; " : "") << s.bindings[i].first << " = " << pretty_print(s.bindings[i].second);
  out << "\n";
}

inline int cmd_run(const Options& o, std::ostream& out, std::ostream& err) {
  SourceProgram src = load(o, err);
  Query q;
  try {
    q = parse_query(o.query, src);
  } catch (const ParseError& e) {
    err << "query:" << e.describe() << "\n";
    return 2;
  }
  SourceProgram p = o.no_preprocess ? src : preprocess_program(src);
  Query pq = o.no_preprocess ? q : preprocess_query(q);
  SearchConfig cfg;
  cfg.max_depth = o.depth;
  cfg.max_solutions = o.max_solutions;
  cfg.strict_match = o.strict_match;
  cfg.trace = o.trace ? &err : nullptr;
  SearchResult r;
  try {
    if (o.pipeline == "interp") {
      r = solve_uniform(p, pq, cfg);
    } else if (o.pipeline == "l0") {
      r = solve_l0(compile_program_l0(p), compile_goal_l0(pq.goal), q.vars, cfg);
    } else if (o.pipeline == "l1") {
      CompiledProgram c = compile_for("l1", p, o.optimize);
      Formula g = compile_goal_l1(pq.goal);
      if (o.optimize) g = optimize_l1_goal(g);
      r = o.fused ? solve_l1_fused(c, g, q.vars, cfg) : solve_l1(c, g, q.vars, cfg);
    } else if (o.pipeline == "l2") {
      CompiledProgram c = compile_program_l2(p);
      Formula g = compile_goal_l2(pq.goal);
      r = o.fused ? solve_l2_fused(c, g, q.vars, cfg) : solve_l2(c, g, q.vars, cfg);
    } else {
      err << "lpc: unknown pipeline '" << o.pipeline << "'\n";
      return 2;
    }
  } catch (const CompileError& e) {
    err << o.file << ": compile error: " << e.what() << "\n";
    return 2;
  } catch (const StrictMatchViolation& e) {
    err << "lpc: strict match violation: " << e.what() << "\n";
    return 2;
  } catch (const MalformedClause& e) {
    err << "lpc: malformed clause: " << e.what() << "\n";
    return 2;
  }
  for (const auto& s : r.solutions) print_solution(s, out);
  out << "solutions=" << r.solutions.size() << " incomplete=" << (r.incomplete ? "true" : "false")
      << " unify=" << r.counters.unify_events << " match=" << r.counters.match_events
      << " assign=" << r.counters.assign_events << "\n";
  return r.solutions.empty() ? 1 : 0;
}

inline int cmd_check_modes(const Options& o, std::ostream& out, std::ostream& err) {
  SourceProgram p = preprocess_program(load(o, err));
  ModeReport r = check_well_moded(p, o.strict_modes);
  for (const auto& n : r.notes) out << "note: " << n << "\n";
  for (const auto& v : r.violations) out << "clause " << v.clause << ": " << v.message << "\n";
  out << (r.well_moded ? "well-moded" : "not well-moded") << "\n";
  return r.well_moded ? 0 : 1;
}

inline int cmd_diff(const Options& o, std::ostream& out, std::ostream& err) {
  Profile prof;
  try {
    prof = parse_profile(o.profile);
  } catch (const std::invalid_argument& e) {
    err << "lpc: " << e.what() << "\n";
    return 2;
  }
  auto corpus = gen_corpus(o.seed, o.count, prof);
  DiffOptions opt;
  opt.search.max_depth = o.depth;
  DiffReport r = diff_corpus(corpus, opt);
  for (const auto& m : r.mismatches)
    out << "mismatch program=" << m.program << " query=" << m.query << " " << m.config << " vs " << m.reference
        << ": " << m.detail << "\n";
  out << "profile=" << profile_name(prof) << " programs=" << r.programs << " queries=" << r.queries.size()
      << " compared=" << r.compared << " exact=" << r.exact << " skipped=" << r.skipped
      << " mismatches=" << r.mismatches.size() << " verdict=" << (r.pass() ? "pass" : "fail") << "\n";
  if (!o.json.empty()) {
    std::ofstream js(o.json);
    if (!js) {
      err << "lpc: cannot write " << o.json << "\n";
      return 2;
    }
    nlohmann::json j = to_json(r);
    j["seed"] = o.seed;
    j["count"] = o.count;
    j["profile"] = profile_name(prof);
    j["depth"] = o.depth;
    js << j.dump(2) << "\n";
  }
  return r.pass() ? 0 : 1;
}

}  // namespace cli

// Entry point of the `lpc` tool; args excludes the program name.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  cli::Options o;
  CLI::App app{"lpc: compiler and proof search for hereditary Harrop programs", "lpc"};
  app.require_subcommand(1);

  auto* compile = app.add_subcommand("compile", "compile a program, one s-expression per clause");
  compile->add_option("file", o.file, "program (.lp)")->required();
  compile->add_option("--target", o.target, "l0, l1 or l2")->check(CLI::IsMember({"l0", "l1", "l2"}));
  compile->add_flag("--optimize", o.optimize, "optimize L1 clauses");
  compile->add_flag("--no-preprocess", o.no_preprocess, "skip the distribution pass");
  compile->add_flag("--pretty", o.pretty, "print in readable notation");

  auto* run = app.add_subcommand("run", "solve a query");
  run->add_option("file", o.file, "program (.lp)")->required();
  run->add_option("query", o.query, "query, e.g. \"?- p X.\"")->required();
  run->add_option("--pipeline", o.pipeline, "interp, l0, l1 or l2")
      ->check(CLI::IsMember({"interp", "l0", "l1", "l2"}));
  run->add_flag("--fused", o.fused, "use the backchaining macro-rules");
  run->add_flag("--strict-match", o.strict_match, "fail hard on a non-ground match");
  run->add_flag("--optimize", o.optimize, "optimize L1 clauses");
  run->add_flag("--no-preprocess", o.no_preprocess, "skip the distribution pass");
  run->add_flag("--trace", o.trace, "print unification events to standard error");
  run->add_option("--depth", o.depth, "depth bound")->check(CLI::PositiveNumber);
  run->add_option("--max-solutions", o.max_solutions, "stop after K solutions (0: all)");

  auto* diff = app.add_subcommand("diff", "differential test over a generated corpus");
  diff->add_option("--seed", o.seed, "corpus seed");
  diff->add_option("--count", o.count, "number of programs")->check(CLI::PositiveNumber);
  diff->add_option("--profile", o.profile, "horn, hh or moded");
  diff->add_option("--depth", o.depth, "depth bound")->check(CLI::PositiveNumber);
  diff->add_option("--json", o.json, "write the report as JSON");

  auto* modes = app.add_subcommand("check-modes", "check well-modedness");
  modes->add_option("file", o.file, "program (.lp)")->required();
  modes->add_flag("--strict", o.strict_modes, "report predicates without a mode declaration");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  try {
    if (*compile) return cli::cmd_compile(o, out, err);
    if (*run) return cli::cmd_run(o, out, err);
    if (*diff) return cli::cmd_diff(o, out, err);
    if (*modes) return cli::cmd_check_modes(o, out, err);
  } catch (const cli::Failure& f) {
    return f.code;
  } catch (const std::exception& e) {
    err << "lpc: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace lpc
