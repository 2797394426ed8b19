// Command-line front end: parsing, canonicalization, composition,
// enumeration, pushout rewriting, and the verification suite.
//
// Conventions: stdout carries data, stderr carries diagnostics. JSON output
// is a newline-free single document unless --stream asks for line-delimited
// records. Exit codes: 0 decided success, 1 decided failure/counterexample,
// 2 undecided or budget exhausted, 64 usage error. Identical invocations
// (same flags and seed) produce byte-identical stdout.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "oforge/enumerate.hpp"
#include "oforge/instances.hpp"
#include "oforge/operad.hpp"
#include "oforge/pushout.hpp"
#include "oforge/sexp.hpp"
#include "oforge/surface.hpp"
#include "oforge/tree.hpp"
#include "oforge/verify.hpp"
#include "oforge/wspace.hpp"

namespace {

using oforge::Bounds;
using oforge::Rational;
using oforge::Tree;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUndecided = 2;
constexpr int kExitUsage = 64;

// Usage-level failure: bad file, bad syntax, bad arguments.
struct CliError {
  std::string message;
};

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream f(path, std::ios::binary);
  if (!f) throw CliError{"cannot open '" + path + "'"};
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::pair<std::size_t, std::size_t> line_col(const std::string& text, std::size_t pos) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < pos && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

[[noreturn]] void fail_at(const std::string& origin, const std::string& text,
                          std::size_t pos, const std::string& message) {
  auto [line, col] = line_col(text, pos);
  throw CliError{origin + ":" + std::to_string(line) + ":" + std::to_string(col) +
                 ": " + message};
}

// Reads one decorated tree from a file (or "-"). Accepts the s-expression
// form directly or a JSON document {"sexp": "..."} wrapping it, so output of
// --format json feeds back in unchanged.
Tree parse_tree_file(const std::string& path) {
  const std::string origin = path == "-" ? "<stdin>" : path;
  std::string text = read_input(path);
  const std::size_t first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) throw CliError{origin + ":1:1: empty input"};
  if (text[first] == '{') {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      fail_at(origin, text, e.byte > 0 ? e.byte - 1 : 0, "invalid JSON document");
    }
    if (!doc.is_object() || !doc.contains("sexp") || !doc["sexp"].is_string())
      fail_at(origin, text, first, "JSON input must be an object with a \"sexp\" string");
    text = doc["sexp"].get<std::string>();
  }
  auto parsed = oforge::sexp_parse(text);
  if (const auto* err = std::get_if<oforge::ParseError>(&parsed))
    fail_at(origin, text, err->position, err->message);
  auto t = Tree::parse(text);
  if (!t)
    fail_at(origin, text, text.find_first_not_of(" \t\r\n"),
            "well-formed expression, but not a decorated tree");
  return *t;
}

const oforge::OperadInstance& instance_arg(const std::string& name) {
  // Instances are stateless closures; cache per requested name so references
  // stay valid for the whole run.
  static std::map<std::string, oforge::OperadInstance> cache;
  auto it = cache.find(name);
  if (it != cache.end()) return it->second;
  auto inst = oforge::instance_by_name(name);
  if (!inst) {
    std::string all;
    for (const auto& n : oforge::instance_names()) all += (all.empty() ? "" : ", ") + n;
    throw CliError{"unknown instance '" + name + "' (choose from: " + all + ")"};
  }
  return cache.emplace(name, *std::move(inst)).first->second;
}

std::vector<Rational> parse_grid(const std::string& spec, const std::string& flag) {
  std::vector<Rational> grid;
  std::string item;
  std::istringstream ss(spec);
  while (std::getline(ss, item, ',')) {
    auto r = oforge::rat_parse(item);
    if (!r || *r < Rational(0))
      throw CliError{flag + ": '" + item + "' is not a nonnegative rational"};
    grid.push_back(*r);
  }
  if (grid.empty()) throw CliError{flag + ": empty grid"};
  return grid;
}

// ---------------------------------------------------------------------------
// Output plumbing.
// ---------------------------------------------------------------------------
struct OutputOpts {
  std::string format = "sexp";  // sexp | json
  bool stream = false;
};

void emit_one(const OutputOpts& out, const std::string& key, const std::string& value) {
  if (out.format == "json") {
    nlohmann::json j;
    j[key] = value;
    std::cout << j.dump() << '\n';
  } else {
    std::cout << value << '\n';
  }
}

void emit_many(const OutputOpts& out, const std::string& key,
               const std::vector<std::string>& values) {
  if (out.format == "json" && !out.stream) {
    std::cout << nlohmann::json(values).dump() << '\n';
    return;
  }
  for (const auto& v : values) emit_one(out, key, v);
}

// ---------------------------------------------------------------------------
// Subcommand handlers.
// ---------------------------------------------------------------------------
int cmd_parse(const OutputOpts& out, const std::string& file) {
  emit_one(out, "sexp", parse_tree_file(file).str());
  return kExitPass;
}

int cmd_canon(const OutputOpts& out, const std::string& file, const std::string& inst) {
  const auto& O = instance_arg(inst);
  emit_one(out, "sexp", O.canon(parse_tree_file(file)).str());
  return kExitPass;
}

int cmd_compose(const OutputOpts& out, const std::string& inst, int at,
                const std::string& base_file, const std::vector<std::string>& part_files) {
  const auto& O = instance_arg(inst);
  Tree base = parse_tree_file(base_file);
  std::vector<Tree> parts;
  parts.reserve(part_files.size());
  for (const auto& f : part_files) parts.push_back(parse_tree_file(f));
  if (at > 0) {
    if (parts.size() != 1)
      throw CliError{"--at takes exactly one part, got " + std::to_string(parts.size())};
    if (at > base.arity())
      throw CliError{"--at " + std::to_string(at) + " out of range for arity " +
                     std::to_string(base.arity())};
    emit_one(out, "sexp", O.pcomp(base, at, parts[0]).str());
    return kExitPass;
  }
  if (static_cast<int>(parts.size()) != base.arity())
    throw CliError{"base has arity " + std::to_string(base.arity()) + " but " +
                   std::to_string(parts.size()) + " parts were given"};
  emit_one(out, "sexp", O.canon(O.compose(base, parts)).str());
  return kExitPass;
}

int cmd_enum_trees(const OutputOpts& out, const std::string& inst, int arity,
                   const Bounds& b) {
  const auto& O = instance_arg(inst);
  std::vector<std::string> lines;
  for (const Tree& t : O.elements(arity, b)) lines.push_back(t.str());
  emit_many(out, "sexp", lines);
  return kExitPass;
}

int cmd_enum_graphs(const OutputOpts& out, const oforge::GraphEnumOpts& opts) {
  std::vector<std::string> lines;
  for (const auto& g : oforge::enumerate_dual_graphs(opts)) lines.push_back(g.str());
  emit_many(out, "sexp", lines);
  return kExitPass;
}

oforge::PushoutSystem pushout_system(bool weighted, const Bounds& b) {
  return weighted ? oforge::w_surface_pushout() : oforge::surface_pushout(b);
}

int cmd_pushout_nf(const OutputOpts& out, bool weighted, const Bounds& b,
                   const std::string& file) {
  auto sys = pushout_system(weighted, b);
  Tree t = sys.canon(parse_tree_file(file));
  oforge::NormalFormResult r;
  try {
    r = oforge::normal_form(sys, t);
  } catch (const std::exception& e) {
    std::cerr << "undecided: " << e.what() << '\n';
    return kExitUndecided;
  }
  std::fprintf(stderr, "steps: %d\n", r.steps);
  emit_one(out, "sexp", r.tree.str());
  return kExitPass;
}

int cmd_pushout_eq(const OutputOpts& out, bool weighted, const Bounds& b,
                   const std::string& file_a, const std::string& file_b,
                   std::size_t budget) {
  auto sys = pushout_system(weighted, b);
  Tree a = parse_tree_file(file_a);
  Tree bb = parse_tree_file(file_b);
  switch (oforge::equal_in_pushout(sys, a, bb, budget)) {
    case oforge::Tri::True:
      emit_one(out, "result", "equal");
      return kExitPass;
    case oforge::Tri::False:
      emit_one(out, "result", "different");
      return kExitFail;
    case oforge::Tri::Undecided:
      emit_one(out, "result", "undecided");
      return kExitUndecided;
  }
  return kExitUndecided;  // unreachable
}

int cmd_pushout_confluence(const OutputOpts& out, bool weighted, const Bounds& b,
                           const std::string& file, int trials, std::uint64_t seed) {
  auto sys = pushout_system(weighted, b);
  Tree t = sys.canon(parse_tree_file(file));
  std::vector<std::string> codes = oforge::confluence_sample(sys, t, trials, seed);
  emit_many(out, "code", codes);
  for (const auto& c : codes)
    if (c.rfind("!budget ", 0) == 0) return kExitUndecided;
  return codes.size() == 1 ? kExitPass : kExitFail;
}

int cmd_w(const OutputOpts& out, const std::string& op, const std::string& inst,
          const std::string& file) {
  Tree t = parse_tree_file(file);
  Tree result = Tree::trivial();
  if (op == "contract")
    result = oforge::w_contract(instance_arg(inst), t);
  else if (op == "counit")
    result = oforge::w_counit(instance_arg(inst), t);
  else
    result = oforge::hd_normalize(t);
  emit_one(out, "sexp", result.str());
  return kExitPass;
}

int cmd_verify(const OutputOpts& out, const std::string& check, const Bounds& b,
               const std::string& out_file) {
  auto report = oforge::run_check(check, b);
  if (!report) throw CliError{"unknown check '" + check + "'"};
  const std::string doc = report->json();
  if (out.stream) {
    for (const auto& cell : report->cells) {
      nlohmann::json rec;
      rec["check"] = report->check;
      rec["tuple"] = "arity=" + std::to_string(cell.arity) +
                     " genus=" + std::to_string(cell.genus) +
                     " lhs=" + std::to_string(cell.lhs) +
                     " rhs=" + std::to_string(cell.rhs);
      rec["status"] = cell.lhs == cell.rhs ? "PASS" : "FAIL";
      std::cout << rec.dump() << '\n';
    }
  }
  std::cout << doc << '\n';
  if (!out_file.empty()) {
    std::ofstream f(out_file, std::ios::binary);
    if (!f) throw CliError{"cannot write '" + out_file + "'"};
    f << doc << '\n';
  }
  std::fprintf(stderr, "elapsed: %.3fs\n", report->elapsed_seconds);
  if (report->status == "PASS") return kExitPass;
  if (report->status == "FAIL") return kExitFail;
  return kExitUndecided;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"operad calculus on decorated trees: composition, canonical forms,\n"
               "enumeration, pushout rewriting, and exhaustive verification"};
  app.require_subcommand(1);

  OutputOpts out;
  app.add_option("--format", out.format, "output format")
      ->check(CLI::IsMember({"sexp", "json"}))
      ->capture_default_str();
  app.add_flag("--stream", out.stream, "line-delimited records instead of one document");

  // Bounds shared by enumeration and verification subcommands.
  Bounds bounds;
  std::string grid_spec, length_spec;
  auto add_bounds_flags = [&](CLI::App* sub, bool with_trials) {
    sub->add_option("--max-arity", bounds.max_arity, "vertex arity bound")
        ->capture_default_str();
    sub->add_option("--max-genus", bounds.max_genus, "total genus bound")
        ->capture_default_str();
    sub->add_option("--max-vertices", bounds.max_vertices, "vertex count bound")
        ->capture_default_str();
    sub->add_option("--grid", grid_spec, "modulus grid, comma-separated rationals");
    sub->add_option("--lengths", length_spec, "edge length grid, comma-separated rationals");
    if (with_trials) {
      sub->add_option("--trials", bounds.trial_count, "sampled trial count")
          ->capture_default_str();
      sub->add_option("--seed", bounds.seed, "random seed")->capture_default_str();
    }
  };
  auto finish_bounds = [&]() {
    if (!grid_spec.empty()) bounds.modulus_grid = parse_grid(grid_spec, "--grid");
    if (!length_spec.empty()) bounds.length_grid = parse_grid(length_spec, "--lengths");
  };

  // parse -------------------------------------------------------------------
  std::string file_a, file_b;
  auto* p_parse = app.add_subcommand("parse", "validate a tree file and print it back");
  p_parse->fallthrough();
  p_parse->add_option("file", file_a, "input file, or - for stdin")->required();

  // canon -------------------------------------------------------------------
  std::string inst_name = "nodfr";
  auto* p_canon = app.add_subcommand("canon", "canonical presentation of an element");
  p_canon->fallthrough();
  p_canon->add_option("file", file_a, "input file, or - for stdin")->required();
  p_canon->add_option("--instance", inst_name, "decoration action to canonicalize under")
      ->capture_default_str();

  // compose -----------------------------------------------------------------
  int at = 0;
  std::vector<std::string> part_files;
  auto* p_compose = app.add_subcommand("compose", "operadic composition of elements");
  p_compose->fallthrough();
  p_compose->add_option("base", file_a, "base element file")->required();
  p_compose->add_option("parts", part_files, "part element files")->required();
  p_compose->add_option("--instance", inst_name, "operad instance")->capture_default_str();
  p_compose->add_option("--at", at, "partial composition at this input (full when omitted)");

  // enum-trees ----------------------------------------------------------------
  int arity = 1;
  auto* p_etrees = app.add_subcommand("enum-trees", "enumerate elements of an instance");
  p_etrees->fallthrough();
  p_etrees->add_option("--instance", inst_name, "operad instance")->capture_default_str();
  auto* arity_opt = p_etrees->add_option("--arity", arity, "element arity")->required();
  auto* maxar_opt = p_etrees->add_option("--max-arity", bounds.max_arity,
                                         "vertex arity bound (default: element arity)");
  p_etrees->add_option("--max-genus", bounds.max_genus, "total genus bound")
      ->capture_default_str();
  p_etrees->add_option("--max-vertices", bounds.max_vertices, "vertex count bound")
      ->capture_default_str();
  p_etrees->add_option("--grid", grid_spec, "modulus grid, comma-separated rationals");
  p_etrees->add_option("--lengths", length_spec,
                       "edge length grid, comma-separated rationals");

  // enum-graphs ---------------------------------------------------------------
  oforge::GraphEnumOpts gopts;
  std::string ggrid_spec = "0,1/4,1/2,1";
  bool decomposable_only = false, no_annuli = false;
  auto* p_egraphs =
      app.add_subcommand("enum-graphs", "enumerate stable tree-like dual graphs");
  p_egraphs->fallthrough();
  p_egraphs->add_option("--arity", gopts.arity, "graph arity")->required();
  p_egraphs->add_option("--max-genus", gopts.max_total_genus, "total genus bound")
      ->capture_default_str();
  p_egraphs->add_option("--max-comps", gopts.max_comps, "component count bound")
      ->capture_default_str();
  p_egraphs->add_option("--max-size", gopts.max_dec_size,
                        "bound on the minimal piece decomposition size");
  p_egraphs->add_flag("--decomposable", decomposable_only,
                      "only graphs glued from arity >= 1 pieces");
  p_egraphs->add_flag("--no-annuli", no_annuli, "skip pure annulus chains");
  p_egraphs->add_option("--grid", ggrid_spec, "annulus modulus grid")
      ->capture_default_str();

  // pushout -------------------------------------------------------------------
  bool weighted = false;
  std::size_t eq_budget = 20000;
  int trials = 100;
  std::uint64_t conf_seed = 0;
  auto* p_push = app.add_subcommand(
      "pushout", "rewrite in the amalgam of moduli and surfaces over annuli");
  p_push->fallthrough();
  p_push->require_subcommand(1);
  p_push->add_flag("--w", weighted, "length-weighted amalgam");
  p_push->add_option("--grid", grid_spec, "modulus grid for crossover moves");

  auto* p_nf = p_push->add_subcommand("nf", "normal form of an element");
  p_nf->fallthrough();
  p_nf->add_option("file", file_a, "input file, or - for stdin")->required();

  auto* p_eq = p_push->add_subcommand("eq", "decide equality in the amalgam");
  p_eq->fallthrough();
  p_eq->add_option("left", file_a, "first element file")->required();
  p_eq->add_option("right", file_b, "second element file")->required();
  p_eq->add_option("--budget", eq_budget, "closure search budget")->capture_default_str();

  auto* p_conf = p_push->add_subcommand("confluence",
                                        "random rewrite orders from one start element");
  p_conf->fallthrough();
  p_conf->add_option("file", file_a, "input file, or - for stdin")->required();
  p_conf->add_option("--trials", trials, "number of random orders")->capture_default_str();
  p_conf->add_option("--seed", conf_seed, "random seed")->capture_default_str();

  // w ---------------------------------------------------------------------
  auto* p_w = app.add_subcommand("w", "length-weighted tree operations");
  p_w->fallthrough();
  p_w->require_subcommand(1);
  std::string w_inst = "fr";
  auto* p_wcontract =
      p_w->add_subcommand("contract", "contract every zero-length edge");
  p_wcontract->fallthrough();
  p_wcontract->add_option("file", file_a, "input file, or - for stdin")->required();
  p_wcontract->add_option("--instance", w_inst, "base instance")->capture_default_str();
  auto* p_wcounit = p_w->add_subcommand("counit", "forget lengths and evaluate");
  p_wcounit->fallthrough();
  p_wcounit->add_option("file", file_a, "input file, or - for stdin")->required();
  p_wcounit->add_option("--instance", w_inst, "base instance")->capture_default_str();
  auto* p_whd = p_w->add_subcommand(
      "hd", "seam-removal normal form by cluster counting (surface decorations)");
  p_whd->fallthrough();
  p_whd->add_option("file", file_a, "input file, or - for stdin")->required();

  // verify ------------------------------------------------------------------
  std::string check, out_file;
  auto* p_verify =
      app.add_subcommand("verify", "run one exhaustive check and print its report");
  p_verify->fallthrough();
  p_verify->add_option("check", check, "check name")
      ->required()
      ->check(CLI::IsMember(oforge::check_names()));
  add_bounds_flags(p_verify, /*with_trials=*/true);
  p_verify->add_option("--out", out_file, "also write the report to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitPass : kExitUsage;
  }

  try {
    finish_bounds();
    if (*p_parse) return cmd_parse(out, file_a);
    if (*p_canon) return cmd_canon(out, file_a, inst_name);
    if (*p_compose) return cmd_compose(out, inst_name, at, file_a, part_files);
    if (*p_etrees) {
      // A lone --arity raises the vertex arity bound with it.
      if (maxar_opt->count() == 0 && arity_opt->count() > 0)
        bounds.max_arity = std::max(bounds.max_arity, arity);
      return cmd_enum_trees(out, inst_name, arity, bounds);
    }
    if (*p_egraphs) {
      gopts.require_decomposable = decomposable_only;
      gopts.include_pure_annuli = !no_annuli;
      gopts.annulus_grid = parse_grid(ggrid_spec, "--grid");
      return cmd_enum_graphs(out, gopts);
    }
    if (*p_push) {
      if (*p_nf) return cmd_pushout_nf(out, weighted, bounds, file_a);
      if (*p_eq) return cmd_pushout_eq(out, weighted, bounds, file_a, file_b, eq_budget);
      if (*p_conf)
        return cmd_pushout_confluence(out, weighted, bounds, file_a, trials, conf_seed);
    }
    if (*p_w) {
      if (*p_wcontract) return cmd_w(out, "contract", w_inst, file_a);
      if (*p_wcounit) return cmd_w(out, "counit", w_inst, file_a);
      if (*p_whd) return cmd_w(out, "hd", w_inst, file_a);
    }
    if (*p_verify) return cmd_verify(out, check, bounds, out_file);
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
