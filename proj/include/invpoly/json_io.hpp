#pragma once

// JSON, text and DOT renderings. JSON uses ordered objects so that output is
// byte-stable; integers that do not fit in 64 bits are written as strings.

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include <json.hpp>

#include "invpoly/classify.hpp"
#include "invpoly/cleave.hpp"
#include "invpoly/exponent_matrix.hpp"
#include "invpoly/intlin.hpp"
#include "invpoly/milnor.hpp"
#include "invpoly/symmetry.hpp"

namespace invpoly {

using Json = nlohmann::ordered_json;

inline Json json_integer(const Integer& x) {
  if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max())
    return Json(x.convert_to<std::int64_t>());
  return Json(x.str());
}

inline Json json_integers(const std::vector<Integer>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(json_integer(x));
  return a;
}

inline Json json_variables(const std::vector<std::size_t>& vars) {
  Json a = Json::array();
  for (auto v : vars) a.push_back("x" + std::to_string(v + 1));
  return a;
}

inline Json to_json(const Atom& a) {
  return Json{{"kind", kind_name(a.kind)}, {"exponents", a.exponents}, {"variables", json_variables(a.variables)}};
}

inline Json to_json(const Classification& c) {
  Json atoms = Json::array();
  for (const auto& a : c.atoms) atoms.push_back(to_json(a));
  return Json{{"atoms", atoms}};
}

inline Json to_json(const WeightSystem& w) {
  return Json{{"weights", json_integers(w.weights)}, {"degree", json_integer(w.degree)}};
}

inline std::string_view method_name(MilnorMethod m) { return m == MilnorMethod::ClosedForm ? "closed" : "brute"; }

inline Json to_json(const MilnorReport& r) {
  Json j{{"mu", json_integer(r.value)}, {"method", method_name(r.method)}, {"graded_dims", r.graded_dims}};
  j["socle"] = r.socle_degree ? Json(*r.socle_degree) : Json(nullptr);
  return j;
}

inline Json to_json(const GroupStructure& g) {
  return Json{{"free_rank", g.free_rank},
              {"torsion_orders", json_integers(g.torsion_orders)},
              {"torsion_order_total", json_integer(g.torsion_order_total)}};
}

inline Json to_json(const VgitData& v) {
  return Json{{"d", json_integers(v.d)},
              {"c", json_integers(v.c)},
              {"gcd", json_integer(v.gcd)},
              {"sum_d", json_integer(v.sum_d)},
              {"t", json_integer(abs_value(v.sum_d))}};
}

inline Json to_json(const CleaveStep& s) {
  Json plus = to_json(s.w_plus);
  plus["columns"] = s.plus_vars;
  Json minus = to_json(s.w_minus);
  minus["columns"] = s.minus_vars;
  return Json{{"polynomial", to_text(s.w)},
              {"b", s.b},
              {"w_plus", plus},
              {"w_minus", minus},
              {"vgit", to_json(s.vgit)},
              {"case", std::string(1, case_letter(s.cleave_case))},
              {"t", json_integer(s.t)},
              {"mu_plus", json_integer(s.mu_plus)},
              {"mu_minus", json_integer(s.mu_minus)}};
}

inline std::string_view node_kind_name(NodeKind k) {
  switch (k) {
    case NodeKind::Tensor: return "tensor";
    case NodeKind::Cleave: return "cleave";
    case NodeKind::FermatLeaf: return "fermat";
  }
  return "?";
}

inline Json to_json(const TreeNode& n) {
  Json j{{"kind", node_kind_name(n.kind)}, {"polynomial", n.polynomial}, {"total", json_integer(n.total)}};
  if (n.kind == NodeKind::FermatLeaf) j["r"] = n.atom.exponents[0];
  if (n.step) {
    j["b"] = n.step->b;
    j["t"] = json_integer(n.step->t);
    j["case"] = std::string(1, case_letter(n.step->cleave_case));
    j["sum_d"] = json_integer(n.step->vgit.sum_d);
  }
  if (!n.children.empty()) {
    Json kids = Json::array();
    for (const auto& c : n.children) kids.push_back(to_json(c));
    j["children"] = kids;
  }
  return j;
}

inline Json to_json(const DecompositionTree& t) {
  return Json{{"root", to_text(t.root)},
              {"total_exceptionals", json_integer(t.total_exceptionals)},
              {"mu_transpose", json_integer(t.mu_transpose)},
              {"tree", to_json(t.node)}};
}

inline Json to_json(const GorensteinReport& r) {
  Json steps = Json::array();
  for (const auto& g : r.steps) {
    Json s = to_json(g.step);
    s["variables"] = json_variables(g.variables);
    steps.push_back(s);
  }
  return Json{{"gorenstein", r.gorenstein},
              {"tilting", r.tilting},
              {"transpose_weights", to_json(r.transpose_weights)},
              {"steps", steps},
              {"terminal", r.terminal}};
}

// ---------------------------------------------------------------------------
// Text

inline std::string join(const std::vector<Integer>& v, const char* sep = ", ") {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i].str();
  return s;
}

namespace detail {

inline void tree_text(const TreeNode& n, int depth, std::string& out) {
  out += std::string(2 * depth, ' ');
  switch (n.kind) {
    case NodeKind::Tensor: out += "tensor"; break;
    case NodeKind::FermatLeaf: out += "fermat r=" + std::to_string(n.atom.exponents[0]); break;
    case NodeKind::Cleave:
      out += "cleave b=" + std::to_string(n.step->b) + " t=" + n.step->t.str() + " case " +
             case_letter(n.step->cleave_case);
      break;
  }
  out += "  [" + n.polynomial + "]  total " + n.total.str() + "\n";
  for (const auto& c : n.children) tree_text(c, depth + 1, out);
}

inline void tree_dot(const TreeNode& n, std::size_t& next_id, std::string& out) {
  const std::size_t id = next_id++;
  std::string label;
  switch (n.kind) {
    case NodeKind::Tensor: label = "tensor"; break;
    case NodeKind::FermatLeaf: label = "fermat r=" + std::to_string(n.atom.exponents[0]); break;
    case NodeKind::Cleave: label = "cleave b=" + std::to_string(n.step->b); break;
  }
  label += "\\n" + n.polynomial + "\\ntotal " + n.total.str();
  out += "  n" + std::to_string(id) + " [label=\"" + label + "\"" +
         (n.kind == NodeKind::Tensor ? ", shape=box" : "") + "];\n";
  for (const auto& c : n.children) {
    const std::size_t child = next_id;
    tree_dot(c, next_id, out);
    out += "  n" + std::to_string(id) + " -> n" + std::to_string(child);
    if (n.step) out += " [label=\"t=" + n.step->t.str() + "\"]";
    out += ";\n";
  }
}

}  // namespace detail

inline std::string to_text(const DecompositionTree& t) {
  std::string out = "root " + to_text(t.root) + "\n";
  detail::tree_text(t.node, 1, out);
  out += "total exceptionals " + t.total_exceptionals.str() + " = mu(w^T) " + t.mu_transpose.str() + "\n";
  return out;
}

inline std::string to_dot(const DecompositionTree& t) {
  std::string out = "digraph decomposition {\n";
  std::size_t next = 0;
  detail::tree_dot(t.node, next, out);
  return out + "}\n";
}

inline std::string to_text(const CleaveStep& s) {
  std::string out = "W = " + to_text(s.w) + "\n";
  out += "b = " + std::to_string(s.b) + "\n";
  std::string plus, minus;
  for (const auto& a : s.w_plus.atoms) plus += (plus.empty() ? "" : " + ") + describe(relabel(a, s.plus_vars));
  for (const auto& a : s.w_minus.atoms) minus += (minus.empty() ? "" : " + ") + describe(relabel(a, s.minus_vars));
  out += "w+ = " + plus + "\n";
  out += "w- = " + minus + "\n";
  out += "d = (" + join(s.vgit.d) + ")\n";
  out += "c = (" + join(s.vgit.c) + ")\n";
  out += "gcd(d) = " + s.vgit.gcd.str() + ", sum d = " + s.vgit.sum_d.str() + "\n";
  out += "case " + std::string(1, case_letter(s.cleave_case)) + ", t = " + s.t.str() + "\n";
  out += "mu(w+^T) = " + s.mu_plus.str() + ", mu(w-^T) = " + s.mu_minus.str() + "\n";
  return out;
}

inline std::string to_text(const GorensteinReport& r) {
  std::string out = "transpose weights (" + join(r.transpose_weights.weights) + "), d^T = " +
                    r.transpose_weights.degree.str() + "\n";
  out += std::string("gorenstein ") + (r.gorenstein ? "yes" : "no") + "\n";
  for (const auto& g : r.steps) {
    std::string on;
    for (auto v : g.variables) on += (on.empty() ? "x" : ",x") + std::to_string(v + 1);
    out += "  b = " + std::to_string(g.step.b) + ": " + to_text(g.step.w) + " on (" + on + ")  sum d = " +
           g.step.vgit.sum_d.str() + "\n";
  }
  if (r.gorenstein) {
    out += "terminal";
    for (std::size_t i = 0; i < r.terminal.size(); ++i)
      out += (i ? " + x" : " x") + std::to_string(i + 1) + "^" + std::to_string(r.terminal[i]);
    out += "\n";
  }
  out += std::string("tilting ") + (r.tilting ? "yes" : "no") + "\n";
  return out;
}

}  // namespace invpoly
