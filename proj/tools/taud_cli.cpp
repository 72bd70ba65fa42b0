// Command-line front end: parameter checks, enumeration, single-pair checks and
// graph / lattice export.
//
// Exit status: 0 success (check-pair: the pair is tau_d-rigid), 1 check-pair on a
// pair that is not tau_d-rigid, 2 invalid parameters or input, 3 limit exceeded.

#include "taud/algebra.hpp"
#include "taud/counting.hpp"
#include "taud/io.hpp"
#include "taud/mutation.hpp"
#include "taud/rigid.hpp"
#include "taud/silting.hpp"
#include "taud/torsion.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

using namespace taud;

constexpr int exit_invalid = 2;
constexpr int exit_limit = 3;

struct RunConfig {
  int n = 0, l = 0, d = 0;
  std::string format = "json";
  std::string out;
  std::size_t limit_vertices = 0; ///< 0 = unlimited
  double limit_seconds = 0;       ///< 0 = unlimited
  std::string input;              ///< check-pair: file with the pair JSON ("-" = stdin)
  std::string path;               ///< path-class: arrow labels
  bool right_to_left = false;     ///< path-class: labels written chi_{p-1} ... chi_1
};

struct InvalidInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Wall-clock budget.  Enumerations check it per emitted item; other commands
/// check it between stages.
class Deadline {
public:
  explicit Deadline(double seconds) : seconds_(seconds), start_(std::chrono::steady_clock::now()) {}
  void check(const char *stage) const {
    if (seconds_ <= 0) return;
    const double used = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    if (used > seconds_) throw LimitExceeded(std::string("time limit exceeded during ") + stage, 0);
  }

private:
  double seconds_;
  std::chrono::steady_clock::time_point start_;
};

AlgebraContext context_for(const RunConfig &cfg) {
  const auto ctx = resolve_params(cfg.n, cfg.l, cfg.d);
  if (!ctx)
    throw InvalidInput("Lambda(" + std::to_string(cfg.n) + "," + std::to_string(cfg.l) + ") admits no " +
                       std::to_string(cfg.d) + "-cluster tilting subcategory of the supported kind");
  return *ctx;
}

void require_format(const RunConfig &cfg, std::initializer_list<const char *> allowed) {
  for (const char *f : allowed)
    if (cfg.format == f) return;
  throw InvalidInput("format '" + cfg.format + "' is not available for this command");
}

void emit(const RunConfig &cfg, const std::string &text) {
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw InvalidInput("cannot write " + cfg.out);
  f << text;
}

std::string dump(const Json &j) { return j.dump(2) + "\n"; }

void check_vertex_limit(const RunConfig &cfg, std::size_t count, const char *what) {
  if (cfg.limit_vertices && count > cfg.limit_vertices)
    throw LimitExceeded(std::string(what) + " exceeds --limit-vertices", count);
}

int cmd_check_params(const RunConfig &cfg) {
  const auto ctx = context_for(cfg);
  Json j = document(ctx, "params");
  j["s"] = ctx.s;
  j["cluster_size"] = cluster_indecomposables(ctx).size();
  j["proj_inj_count"] = ctx.proj_inj_count();
  emit(cfg, dump(j));
  return 0;
}

int cmd_enumerate_rigid(const RunConfig &cfg, const Deadline &deadline) {
  const auto ctx = context_for(cfg);
  const CompatibilityTable table(ctx);
  std::vector<PairState> found;
  walk_cpairs(
      ctx, table, [&](const PairState &, const ItemSet &present, int item) { return (present & ~table.row(item)).none(); },
      [&](const PairState &st) {
        found.push_back(st);
        check_vertex_limit(cfg, found.size(), "number of rigid pairs");
        deadline.check("enumerate-rigid");
        return true;
      });
  sort_canonical(ctx, found);
  Json j = document(ctx, "rigid_pairs");
  j["count"] = found.size();
  j["pairs"] = Json::array();
  for (const auto &st : found) j["pairs"].push_back(pair_signature(to_cpair(ctx, st)));
  emit(cfg, dump(j));
  return 0;
}

int cmd_enumerate_maximal(const RunConfig &cfg, const Deadline &deadline) {
  const auto ctx = context_for(cfg);
  const auto pairs = enumerate_summand_maximal(ctx);
  deadline.check("enumerate-maximal");
  check_vertex_limit(cfg, pairs.size(), "number of summand-maximal pairs");
  Json j = document(ctx, "summand_maximal_pairs");
  j["count"] = pairs.size();
  j["pairs"] = Json::array();
  for (const auto &p : pairs) {
    Json e = pair_to_json(ctx, p);
    for (const char *k : {"schema", "kind", "n", "l", "d", "p"}) e.erase(k);
    j["pairs"].push_back(e);
  }
  emit(cfg, dump(j));
  return 0;
}

int cmd_check_pair(const RunConfig &cfg) {
  Json in;
  try {
    if (cfg.input.empty() || cfg.input == "-") {
      in = Json::parse(std::cin);
    } else {
      std::ifstream f(cfg.input);
      if (!f) throw InvalidInput("cannot read " + cfg.input);
      in = Json::parse(f);
    }
  } catch (const Json::parse_error &e) {
    throw InvalidInput(std::string("malformed pair JSON: ") + e.what());
  }
  AlgebraContext ctx;
  CPair pair;
  try {
    ctx = context_of(in);
    pair = pair_from_json(in);
    to_state(ctx, pair);
  } catch (const std::exception &e) {
    throw InvalidInput(e.what());
  }
  const RigidityReport rigid = is_rigid_pair(ctx, to_state(ctx, pair));
  Json j = document(ctx, "pair_check");
  j["pair"] = pair_to_json(ctx, pair);
  j["pair"].erase("schema");
  j["rigid"] = rigid.rigid;
  j["rigidity_violations"] = Json::array();
  for (const auto &v : rigid.violations) j["rigidity_violations"].push_back({{"clause", v.clause}, {"detail", v.detail}});
  const WellConfiguredReport wc = is_well_configured(ctx, pair);
  j["well_configured"] = wc.well_configured;
  j["well_configured_clause"] = wc.clause;
  j["well_configured_detail"] = wc.detail;
  j["summands"] = pair.summand_count();
  j["summand_maximal"] = rigid.rigid && pair.summand_count() == static_cast<std::size_t>(ctx.n);
  j["maximal"] = rigid.rigid && is_maximal_rigid(ctx, pair);
  const SiltingStatus st = silting_status(ctx, pair);
  j["presilting"] = st.presilting;
  j["silting"] = st.silting;
  j["gamma"] = st.problem.gamma;
  j["psi"] = st.problem.psi;
  j["reducing_order"] = st.generation_witness ? Json(*st.generation_witness) : Json(nullptr);
  j["complex"] = complex_to_json(build_pair_complex(ctx, pair));
  emit(cfg, dump(j));
  return rigid.rigid ? 0 : 1;
}

int cmd_enumerate_torsion(const RunConfig &cfg, const Deadline &deadline) {
  const auto ctx = context_for(cfg);
  const TorsionGraph g = torsion_graph(ctx);
  std::vector<std::pair<TorsionClass, std::vector<std::size_t>>> rows;
  for_each_torsion_path(ctx, g, [&](const std::vector<std::size_t> &path) {
    rows.emplace_back(path_to_class(ctx, g, path), path);
    check_vertex_limit(cfg, rows.size(), "number of torsion classes");
    deadline.check("enumerate-torsion");
  });
  std::sort(rows.begin(), rows.end());
  Json j = document(ctx, "torsion_classes");
  j["count"] = rows.size();
  j["classes"] = Json::array();
  for (const auto &[cls, path] : rows) {
    Json e = class_to_json(ctx, cls);
    Json labels = Json::array();
    for (auto k : path) labels.push_back(g.arrows[k].label);
    e["path"] = labels;
    j["classes"].push_back(e);
  }
  emit(cfg, dump(j));
  return 0;
}

int cmd_torsion_lattice(const RunConfig &cfg, const Deadline &deadline) {
  require_format(cfg, {"json", "dot"});
  const auto ctx = context_for(cfg);
  auto classes = enumerate_torsion(ctx);
  check_vertex_limit(cfg, classes.size(), "number of torsion classes");
  deadline.check("enumerate-torsion");
  const TorsionLattice lat = torsion_lattice(ctx, std::move(classes));
  emit(cfg, cfg.format == "dot" ? lattice_to_dot(ctx, lat) : dump(lattice_to_json(ctx, lat)));
  return 0;
}

int cmd_mutation_graph(const RunConfig &cfg, const Deadline &deadline) {
  require_format(cfg, {"json", "dot", "tsv"});
  const auto ctx = context_for(cfg);
  const MutationGraph g = build_mutation_graph(ctx);
  check_vertex_limit(cfg, g.vertices.size(), "number of vertices");
  deadline.check("mutation-graph");
  if (cfg.format == "dot") emit(cfg, mutation_graph_to_dot(g));
  else if (cfg.format == "tsv") emit(cfg, graph_stats_to_tsv(g, graph_stats(ctx, g)));
  else emit(cfg, dump(mutation_graph_to_json(ctx, g)));
  return 0;
}

int cmd_counts(const RunConfig &cfg, const Deadline &deadline) {
  require_format(cfg, {"json", "tsv"});
  const auto ctx = context_for(cfg);
  const std::size_t maximal = enumerate_summand_maximal(ctx).size();
  deadline.check("counts (summand-maximal pairs)");
  const TorsionGraph g = torsion_graph(ctx);
  const std::size_t classes = enumerate_torsion(ctx).size();
  deadline.check("counts (torsion classes)");
  const auto f_max = summand_maximal_formula(ctx);
  const auto f_tor = torsion_formula(ctx);
  const auto transfer = torsion_transfer_count(ctx);
  auto opt = [](auto v) { return v ? Json(*v) : Json("N/A"); };
  if (cfg.format == "tsv") {
    auto cell = [](auto v) { return v ? std::to_string(*v) : std::string("N/A"); };
    std::ostringstream out;
    out << "quantity\tenumerated\tformula\tagree\n";
    out << "summand_maximal_pairs\t" << maximal << "\t" << cell(f_max) << "\t"
        << (f_max ? (static_cast<long long>(maximal) == *f_max ? "yes" : "no") : "N/A") << "\n";
    out << "torsion_classes\t" << classes << "\t" << cell(f_tor) << "\t"
        << (f_tor ? (static_cast<long long>(classes) == *f_tor ? "yes" : "no") : "N/A") << "\n";
    out << "torsion_paths_transfer_matrix\t" << count_torsion_paths(ctx, g) << "\t" << cell(transfer) << "\t"
        << (transfer ? (classes == *transfer ? "yes" : "no") : "N/A") << "\n";
    emit(cfg, out.str());
    return 0;
  }
  Json j = document(ctx, "counts");
  j["summand_maximal_pairs"] = {{"enumerated", maximal}, {"formula", opt(f_max)}};
  j["torsion_classes"] = {{"enumerated", classes}, {"path_count", count_torsion_paths(ctx, g)},
                          {"formula", opt(f_tor)}, {"transfer_matrix", opt(transfer)}};
  emit(cfg, dump(j));
  return 0;
}

int cmd_path_class(const RunConfig &cfg) {
  const auto ctx = context_for(cfg);
  const TorsionGraph g = torsion_graph(ctx);
  std::vector<std::size_t> path;
  try {
    path = parse_path(g, cfg.path, cfg.right_to_left);
    path_to_class(ctx, g, path);
  } catch (const std::invalid_argument &e) {
    throw InvalidInput(e.what());
  }
  emit(cfg, dump(path_class_to_json(ctx, g, path)));
  return 0;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"tau_d-rigid pairs, d-torsion classes and silting complexes of Lambda(n,l)"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_common = [&](CLI::App *sub) {
    sub->add_option("--n", cfg.n, "number of vertices n")->required();
    sub->add_option("--l", cfg.l, "nilpotency index l")->required();
    sub->add_option("--d", cfg.d, "cluster tilting degree d")->required();
    sub->add_option("--out", cfg.out, "output file (default: stdout)");
    sub->add_option("--format", cfg.format, "json | dot | tsv (command dependent)")
        ->check(CLI::IsMember({"json", "dot", "tsv"}));
    sub->add_option("--limit-vertices", cfg.limit_vertices, "maximum number of emitted objects (0 = unlimited)");
    sub->add_option("--limit-seconds", cfg.limit_seconds, "wall-clock budget in seconds (0 = unlimited)");
  };

  auto *check_params = app.add_subcommand("check-params", "validate (n, l, d) and print the context");
  add_common(check_params);
  auto *enum_rigid = app.add_subcommand("enumerate-rigid", "list all basic tau_d-rigid pairs");
  add_common(enum_rigid);
  auto *enum_max = app.add_subcommand("enumerate-maximal", "list all summand-maximal tau_d-rigid pairs");
  add_common(enum_max);
  auto *check_pair = app.add_subcommand("check-pair", "check a pair given as JSON (stdin or --in)");
  check_pair->add_option("--in", cfg.input, "pair JSON file (default: stdin)");
  check_pair->add_option("--out", cfg.out, "output file (default: stdout)");
  auto *enum_tor = app.add_subcommand("enumerate-torsion", "list all d-torsion classes with their paths");
  add_common(enum_tor);
  auto *lattice = app.add_subcommand("torsion-lattice", "Hasse diagram of the d-torsion classes");
  add_common(lattice);
  auto *mutation = app.add_subcommand("mutation-graph", "mutation graph of summand-maximal pairs");
  add_common(mutation);
  auto *counts = app.add_subcommand("counts", "enumerated counts against the closed-form formulas");
  add_common(counts);
  auto *path_class = app.add_subcommand("path-class", "the d-torsion class of a path of arrow labels");
  add_common(path_class);
  path_class->add_option("--path", cfg.path, "arrow labels separated by spaces, e.g. \"gamma delta_1\"")->required();
  path_class->add_flag("--right-to-left", cfg.right_to_left, "labels are written chi_{p-1} ... chi_1");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : exit_invalid;
  }

  const Deadline deadline(cfg.limit_seconds);
  try {
    if (*check_params) return cmd_check_params(cfg);
    if (*enum_rigid) return cmd_enumerate_rigid(cfg, deadline);
    if (*enum_max) return cmd_enumerate_maximal(cfg, deadline);
    if (*check_pair) return cmd_check_pair(cfg);
    if (*enum_tor) return cmd_enumerate_torsion(cfg, deadline);
    if (*lattice) return cmd_torsion_lattice(cfg, deadline);
    if (*mutation) return cmd_mutation_graph(cfg, deadline);
    if (*counts) return cmd_counts(cfg, deadline);
    if (*path_class) return cmd_path_class(cfg);
  } catch (const InvalidInput &e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_invalid;
  } catch (const LimitExceeded &e) {
    std::cerr << "limit exceeded: " << e.what() << "\n";
    return exit_limit;
  } catch (const std::invalid_argument &e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_invalid;
  }
  return exit_invalid;
}
