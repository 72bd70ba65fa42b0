#ifndef TAUD_IO_HPP
#define TAUD_IO_HPP

// JSON, DOT and TSV serialisation.  Every JSON document carries the top-level
// field {"schema": "tau-d-lab/1"}; objects are emitted with sorted keys so equal
// inputs give identical bytes.

#include "algebra.hpp"
#include "mutation.hpp"
#include "rigid.hpp"
#include "silting.hpp"
#include "torsion.hpp"

#include "json.hpp"

#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace taud {

using Json = nlohmann::json;

inline constexpr const char *schema_version = "tau-d-lab/1";

inline Json document(const AlgebraContext &ctx, const std::string &kind) {
  return Json{{"schema", schema_version}, {"kind", kind}, {"n", ctx.n}, {"l", ctx.l}, {"d", ctx.d}, {"p", ctx.p}};
}

/// Checks the schema tag and returns the context named by a document.
inline AlgebraContext context_of(const Json &j) {
  if (!j.contains("schema") || j.at("schema") != schema_version)
    throw std::invalid_argument(std::string("missing or unsupported schema (expected ") + schema_version + ")");
  const auto ctx = resolve_params(j.at("n").get<int>(), j.at("l").get<int>(), j.at("d").get<int>());
  if (!ctx) throw std::invalid_argument("parameters do not admit a d-cluster tilting subcategory");
  return *ctx;
}

inline Json to_json(const IntervalModule &m) { return Json::array({m.a, m.b}); }

inline IntervalModule module_from_json(const Json &j) {
  if (!j.is_array() || j.size() != 2) throw std::invalid_argument("a module is written [a, b]");
  return {j[0].get<int>(), j[1].get<int>()};
}

// ---------------------------------------------------------------------------
// Pairs

inline Json pair_to_json(const AlgebraContext &ctx, const CPair &pair) {
  Json j = document(ctx, "pair");
  j["rigid"] = Json::array();
  for (const auto &m : pair.rigid_part) j["rigid"].push_back(to_json(m));
  j["support"] = pair.support_part;
  return j;
}

inline CPair pair_from_json(const Json &j) {
  CPair pair;
  for (const auto &m : j.at("rigid")) pair.rigid_part.push_back(module_from_json(m));
  for (const auto &b : j.at("support")) pair.support_part.push_back(b.get<int>());
  pair.normalize();
  return pair;
}

/// Compact signature such as "M(3,4) M(5,5) | 1 2" (rigid summands | support indices).
inline std::string pair_signature(const CPair &pair) {
  std::string s;
  for (const auto &m : pair.rigid_part) s += (s.empty() ? "" : " ") + to_string(m);
  s += s.empty() ? "|" : " |";
  for (int b : pair.support_part) s += " " + std::to_string(b);
  return s;
}

// ---------------------------------------------------------------------------
// Torsion classes

inline Json class_to_json(const AlgebraContext &ctx, const TorsionClass &cls) {
  Json j = Json::object();
  j["shapes"] = Json::array();
  for (const auto &s : cls.shapes) j["shapes"].push_back({{"kind", kind_name(s.kind)}, {"h", s.h}});
  j["q"] = cls.q_set;
  j["members"] = Json::array();
  for (const auto &m : members(ctx, cls)) j["members"].push_back(to_json(m));
  return j;
}

inline ShapeKind shape_kind_from_name(const std::string &s) {
  if (s == "zero") return ShapeKind::zero;
  if (s == "down") return ShapeKind::down;
  if (s == "up") return ShapeKind::up;
  if (s == "full") return ShapeKind::full;
  throw std::invalid_argument("unknown shape kind '" + s + "'");
}

inline TorsionClass class_from_json(const Json &j) {
  TorsionClass cls;
  for (const auto &s : j.at("shapes")) cls.shapes.push_back({shape_kind_from_name(s.at("kind")), s.at("h").get<int>()});
  cls.q_set = j.at("q").get<std::vector<int>>();
  return cls;
}

/// Document for the class of a path, with the arrow labels in path order chi_1 ... chi_{p-1}.
inline Json path_class_to_json(const AlgebraContext &ctx, const TorsionGraph &g, const std::vector<std::size_t> &path) {
  Json j = document(ctx, "torsion_class");
  Json labels = Json::array();
  for (auto k : path) labels.push_back(g.arrows[k].label);
  j["path"] = labels;
  j["class"] = class_to_json(ctx, path_to_class(ctx, g, path));
  return j;
}

inline Json lattice_to_json(const AlgebraContext &ctx, const TorsionLattice &lat) {
  Json j = document(ctx, "torsion_lattice");
  j["classes"] = Json::array();
  for (const auto &c : lat.classes) j["classes"].push_back(class_to_json(ctx, c));
  j["edges"] = Json::array();
  for (auto [lo, hi] : lat.hasse) j["edges"].push_back({lo, hi});
  return j;
}

inline std::string lattice_to_dot(const AlgebraContext &ctx, const TorsionLattice &lat) {
  std::ostringstream out;
  out << "digraph torsion_lattice {\n  rankdir=BT;\n";
  for (std::size_t k = 0; k < lat.classes.size(); ++k) {
    std::string label;
    for (const auto &m : members(ctx, lat.classes[k])) label += (label.empty() ? "" : " ") + to_string(m);
    if (label.empty()) label = "0";
    out << "  c" << k << " [label=\"" << label << "\"];\n";
  }
  for (auto [lo, hi] : lat.hasse) out << "  c" << lo << " -> c" << hi << ";\n";
  out << "}\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// Complexes

inline Json scalar_to_json(const Rational &x) {
  if (x.denominator() == 1) return x.numerator();
  return std::to_string(x.numerator()) + "/" + std::to_string(x.denominator());
}

inline Rational scalar_from_json(const Json &j) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  const std::string s = j.get<std::string>();
  const auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(std::stoll(s));
  return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
}

inline Json complex_to_json(const ProjComplex &c) {
  Json j = Json::object();
  j["terms"] = Json::object();
  for (const auto &[k, t] : c.terms)
    if (!t.empty()) j["terms"][std::to_string(k)] = t;
  j["diff"] = Json::object();
  for (const auto &[k, m] : c.diff) {
    Json entries = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t col = 0; col < m.cols(); ++col)
        if (!is_zero(m(r, col))) entries.push_back({r, col, scalar_to_json(m(r, col))});
    if (!entries.empty()) j["diff"][std::to_string(k)] = entries;
  }
  return j;
}

inline ProjComplex complex_from_json(const Json &j) {
  ProjComplex c;
  for (const auto &[k, t] : j.at("terms").items()) c.terms[std::stoi(k)] = t.get<std::vector<int>>();
  for (const auto &[k, entries] : j.at("diff").items()) {
    const int deg = std::stoi(k);
    Matrix m(c.at(deg + 1).size(), c.at(deg).size());
    for (const auto &e : entries) {
      const auto r = e.at(0).get<std::size_t>(), col = e.at(1).get<std::size_t>();
      if (r >= m.rows() || col >= m.cols()) throw std::invalid_argument("differential entry out of range");
      m(r, col) = scalar_from_json(e.at(2));
    }
    c.diff[deg] = m;
  }
  return c;
}

inline Json silting_to_json(const AlgebraContext &ctx, const CPair &pair, const SiltingStatus &st) {
  Json j = document(ctx, "silting_status");
  j["pair"] = pair_to_json(ctx, pair);
  j["pair"].erase("schema");
  j["complex"] = complex_to_json(build_pair_complex(ctx, pair));
  j["presilting"] = st.presilting;
  j["silting"] = st.silting;
  j["gamma"] = st.problem.gamma;
  j["psi"] = st.problem.psi;
  j["witness"] = st.generation_witness ? Json(*st.generation_witness) : Json(nullptr);
  return j;
}

// ---------------------------------------------------------------------------
// Mutation graph

inline Json mutation_graph_to_json(const AlgebraContext &ctx, const MutationGraph &g) {
  Json j = document(ctx, "mutation_graph");
  j["vertices"] = Json::array();
  for (const auto &v : g.vertices) j["vertices"].push_back(pair_signature(v));
  j["edges"] = Json::array();
  for (auto [u, v] : g.edges) j["edges"].push_back({u, v});
  return j;
}

inline std::string mutation_graph_to_dot(const MutationGraph &g) {
  std::ostringstream out;
  out << "graph mutation {\n";
  for (std::size_t v = 0; v < g.vertices.size(); ++v)
    out << "  v" << v << " [label=\"" << pair_signature(g.vertices[v]) << "\"];\n";
  for (auto [u, v] : g.edges) out << "  v" << u << " -- v" << v << ";\n";
  out << "}\n";
  return out.str();
}

inline std::string graph_stats_to_tsv(const MutationGraph &g, const GraphStats &s) {
  std::ostringstream out;
  out << "statistic\tvalue\n";
  out << "vertices\t" << g.vertices.size() << "\n";
  out << "edges\t" << g.edges.size() << "\n";
  out << "connected\t" << (s.connected ? "true" : "false") << "\n";
  for (auto [deg, cnt] : s.degree_histogram) out << "degree_" << deg << "\t" << cnt << "\n";
  for (auto [k, cnt] : s.completion_histogram) out << "almost_complete_with_" << k << "_completions\t" << cnt << "\n";
  for (const auto &a : s.max_degree_vertices) {
    std::string runs, types;
    for (const auto &r : a.runs) runs += (runs.empty() ? "" : ",") + std::string("[") + std::to_string(r.lo) + "," +
                                         std::to_string(r.hi) + "]";
    for (auto t : a.types) types += (types.empty() ? "" : ",") + std::string(to_string(t));
    out << "max_degree_vertex\t" << pair_signature(g.vertices[a.vertex]) << "\t" << runs << "\t" << types << "\n";
  }
  return out.str();
}

} // namespace taud

#endif // TAUD_IO_HPP
