#pragma once

// Kreuzer-Skarke cleave steps, recursive decomposition trees and the
// Gorenstein reduction to a Fermat sum.
//
// Variable bookkeeping: a cleave of an n-variable atom works on columns
// 0..n of the augmented matrix W, column n being the new variable. Inside a
// decomposition tree the new variable takes over the identity of the
// variable it replaces (column n-1, which w_- sets to 1), so every node is
// written in the root polynomial's variables.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "invpoly/classify.hpp"
#include "invpoly/error.hpp"
#include "invpoly/exponent_matrix.hpp"
#include "invpoly/intlin.hpp"
#include "invpoly/milnor.hpp"
#include "invpoly/symmetry.hpp"

namespace invpoly {

/// x1^a1 x2 + ... + x_n^a_n x1 x_{n+1}^b for loops and
/// x1^a1 x2 + ... + x_n^a_n x_{n+1}^b for chains, as an n x (n+1) matrix.
inline ExponentMatrix augment(const Atom& atom, Exponent b) {
  validate_atom(atom);
  if (atom.kind == AtomKind::Fermat)
    throw Error(Errc::FermatNotAugmentable, "a Fermat atom has no cleave; use a length-1 chain");
  if (b < 2) throw Error(Errc::BadB, "b must be at least 2, got " + std::to_string(b));
  const std::size_t n = atom.size();
  Atom local = atom;
  for (std::size_t i = 0; i < n; ++i) local.variables[i] = i;
  auto rows = atom_rows(local, n + 1);
  rows[n - 1][n] = b;
  return ExponentMatrix(std::move(rows));
}

/// Restriction of W to x_var = 1; `kept` receives the surviving columns.
inline ExponentMatrix restrict_to_one(const ExponentMatrix& w, std::size_t var,
                                      std::vector<std::size_t>& kept) {
  kept.clear();
  for (std::size_t j = 0; j < w.cols(); ++j)
    if (j != var) kept.push_back(j);
  std::vector<std::vector<Exponent>> rows;
  for (std::size_t i = 0; i < w.rows(); ++i) {
    std::vector<Exponent> r;
    for (auto j : kept) r.push_back(w(i, j));
    rows.push_back(std::move(r));
  }
  return ExponentMatrix(std::move(rows));
}

/// Atom with every variable index sent through `map`.
inline Atom relabel(Atom a, const std::vector<std::size_t>& map) {
  for (auto& v : a.variables) v = map[v];
  return a;
}

enum class CleaveCase { A, B, C };

inline char case_letter(CleaveCase c) { return c == CleaveCase::A ? 'A' : c == CleaveCase::B ? 'B' : 'C'; }

struct CleaveStep {
  Atom atom;  // w_+ as given, variables 0..n-1
  Exponent b = 0;
  ExponentMatrix w;
  Classification w_plus;               // W at x_{n+1} = 1, local columns
  std::vector<std::size_t> plus_vars;  // local column -> column of W
  Classification w_minus;              // W at x_n = 1, local columns
  std::vector<std::size_t> minus_vars;
  VgitData vgit;
  CleaveCase cleave_case = CleaveCase::B;
  Integer t;
  Integer mu_plus;   // mu(w_+^T)
  Integer mu_minus;  // mu(w_-^T)

  /// w_- atoms in the columns of W.
  std::vector<Atom> minus_atoms() const {
    std::vector<Atom> out;
    for (const auto& a : w_minus.atoms) out.push_back(relabel(a, minus_vars));
    return out;
  }
};

inline CleaveStep cleave_step(const Atom& atom, Exponent b) {
  CleaveStep s;
  s.w = augment(atom, b);
  s.atom = atom;
  for (std::size_t i = 0; i < atom.size(); ++i) s.atom.variables[i] = i;
  s.b = b;
  const std::size_t n = atom.size();
  s.w_plus = classify(restrict_to_one(s.w, n, s.plus_vars));
  s.w_minus = classify(restrict_to_one(s.w, n - 1, s.minus_vars));
  s.vgit = vgit_lambda(s.w);
  s.mu_plus = milnor_closed(s.w_plus, true);
  s.mu_minus = milnor_closed(s.w_minus, true);
  s.t = abs_value(s.vgit.sum_d);
  s.cleave_case = s.vgit.sum_d > 0 ? CleaveCase::C : s.vgit.sum_d == 0 ? CleaveCase::B : CleaveCase::A;
  const Integer diff = s.mu_plus - s.mu_minus;
  if (diff != s.vgit.sum_d)
    throw Defect(Errc::IdentityViolated, s.vgit.sum_d.str(), diff.str(),
                 "mu(w+^T) - mu(w-^T) for " + to_text(s.w));
  return s;
}

// ---------------------------------------------------------------------------
// Decomposition trees

/// How b is chosen at each cleave.
struct BPolicy {
  enum class Kind { Fixed, Max, Gorenstein };
  Kind kind = Kind::Fixed;
  Exponent value = 2;

  static BPolicy min() { return {Kind::Fixed, 2}; }
  static BPolicy max() { return {Kind::Max, 0}; }
  static BPolicy gorenstein() { return {Kind::Gorenstein, 0}; }
  static BPolicy fixed(Exponent b) { return {Kind::Fixed, b}; }
};

/// Polynomial text of an atom in its own variable labels.
inline std::string atom_text(const Atom& a) {
  std::string out;
  const std::size_t n = a.size();
  auto factor = [](std::size_t v, Exponent e) {
    return "x" + std::to_string(v + 1) + (e == 1 ? std::string() : "^" + std::to_string(e));
  };
  for (std::size_t i = 0; i < n; ++i) {
    if (i) out += " + ";
    out += factor(a.variables[i], a.exponents[i]);
    if (a.kind == AtomKind::Chain && i + 1 < n) out += "*" + factor(a.variables[i + 1], 1);
    if (a.kind == AtomKind::Loop) out += "*" + factor(a.variables[(i + 1) % n], 1);
  }
  return out;
}

/// Transpose weights (r, d^T) of a single atom.
inline WeightSystem atom_transpose_weights(const Atom& a) { return weight_system(transpose(atom_matrix(a))); }

inline bool divides_all(const WeightSystem& w) {
  for (const auto& r : w.weights)
    if (w.degree % r != 0) return false;
  return true;
}

/// b = d^T / r_n for the current atom; throws if r_n does not divide d^T.
inline Exponent gorenstein_b(const Atom& a) {
  const WeightSystem w = atom_transpose_weights(a);
  const Integer& rn = w.weights.back();
  if (w.degree % rn != 0)
    throw Error(Errc::GorensteinDivisibility, "r_n = " + rn.str() + " does not divide d^T = " +
                                                  w.degree.str() + " for " + atom_text(a));
  return (w.degree / rn).convert_to<Exponent>();
}

enum class NodeKind { Tensor, Cleave, FermatLeaf };

struct TreeNode {
  NodeKind kind = NodeKind::Tensor;
  std::string polynomial;
  Atom atom;  // Cleave and FermatLeaf nodes, root variables
  std::optional<CleaveStep> step;
  std::vector<TreeNode> children;
  Integer total;
};

struct DecompositionTree {
  ExponentMatrix root;
  TreeNode node;
  Integer total_exceptionals;
  Integer mu_transpose;
};

namespace detail {

inline TreeNode decompose_atom(const Atom& atom, const BPolicy& policy) {
  TreeNode node;
  node.atom = atom;
  node.polynomial = atom_text(atom);
  if (atom.kind == AtomKind::Fermat || atom.size() == 1) {
    node.kind = NodeKind::FermatLeaf;
    node.atom.kind = AtomKind::Fermat;
    node.total = Integer(atom.exponents[0]) - 1;
    return node;
  }
  Exponent b = policy.value;
  if (policy.kind == BPolicy::Kind::Max) b = atom.exponents.back();
  if (policy.kind == BPolicy::Kind::Gorenstein) b = gorenstein_b(atom);

  node.kind = NodeKind::Cleave;
  node.step = cleave_step(atom, b);
  if (node.step->cleave_case == CleaveCase::A)
    throw Error(Errc::UnsupportedCase, "b = " + std::to_string(b) + " gives sum d < 0 for " + node.polynomial +
                                           "; a decomposition needs b <= a_n");

  const std::size_t n = atom.size();
  std::vector<std::size_t> to_root(atom.variables);
  to_root.push_back(atom.variables[n - 1]);  // x_{n+1} inherits x_n
  std::vector<Atom> parts;
  for (const auto& a : node.step->minus_atoms()) parts.push_back(relabel(a, to_root));

  if (parts.size() == 1) {
    node.children.push_back(decompose_atom(parts.front(), policy));
  } else {
    TreeNode tensor;
    tensor.kind = NodeKind::Tensor;
    tensor.total = 1;
    for (const auto& p : parts) {
      tensor.children.push_back(decompose_atom(p, policy));
      tensor.total *= tensor.children.back().total;
      if (!tensor.polynomial.empty()) tensor.polynomial += " + ";
      tensor.polynomial += tensor.children.back().polynomial;
    }
    node.children.push_back(std::move(tensor));
  }
  node.total = node.step->t + node.children.front().total;
  return node;
}

}  // namespace detail

/// Cleaves every chain and loop down to Fermat leaves. The root is a tensor
/// node over the atoms; its total must equal mu(w^T).
inline DecompositionTree decompose(const ExponentMatrix& m, const BPolicy& policy = BPolicy::min()) {
  const Classification c = classify(m);
  DecompositionTree tree{m, {}, 0, milnor_closed(c, true)};
  tree.node.kind = NodeKind::Tensor;
  tree.node.polynomial = to_text(m);
  tree.node.total = 1;
  for (const auto& atom : c.atoms) {
    BPolicy p = policy;
    if (p.kind == BPolicy::Kind::Gorenstein && !divides_all(atom_transpose_weights(atom))) p = BPolicy::min();
    tree.node.children.push_back(detail::decompose_atom(atom, p));
    tree.node.total *= tree.node.children.back().total;
  }
  tree.total_exceptionals = tree.node.total;
  if (tree.total_exceptionals != tree.mu_transpose)
    throw Defect(Errc::LengthMismatch, tree.mu_transpose.str(), tree.total_exceptionals.str(),
                 "decomposition length of " + to_text(m));
  return tree;
}

// ---------------------------------------------------------------------------
// Gorenstein reduction

struct GorensteinStep {
  CleaveStep step;
  std::vector<std::size_t> variables;  // column of W -> root variable
};

struct GorensteinReport {
  bool gorenstein = false;
  bool tilting = false;
  WeightSystem transpose_weights;    // r_i, d^T of the whole polynomial
  std::vector<GorensteinStep> steps;
  std::vector<Exponent> terminal;    // Fermat exponent per root variable
};

inline GorensteinReport gorenstein_reduce(const ExponentMatrix& m) {
  const Classification c = classify(m);
  GorensteinReport rep;
  rep.transpose_weights = weight_system(transpose(m));
  rep.gorenstein = divides_all(rep.transpose_weights);
  if (!rep.gorenstein) return rep;

  rep.terminal.assign(m.cols(), 0);
  for (const auto& root_atom : c.atoms) {
    std::optional<Atom> current = root_atom;
    while (current) {
      const Atom a = *current;
      current.reset();
      if (a.kind == AtomKind::Fermat || a.size() == 1) {
        rep.terminal[a.variables[0]] = a.exponents[0];
        continue;
      }
      const Exponent b = gorenstein_b(a);
      GorensteinStep gs{cleave_step(a, b), a.variables};
      gs.variables.push_back(a.variables.back());
      if (gs.step.vgit.sum_d != 0)
        throw Defect(Errc::NonzeroSumD, "0", gs.step.vgit.sum_d.str(), "Gorenstein cleave of " + atom_text(a));
      for (const auto& part : gs.step.minus_atoms()) {
        Atom p = relabel(part, gs.variables);
        if (p.kind == AtomKind::Fermat)
          rep.terminal[p.variables[0]] = p.exponents[0];
        else
          current = std::move(p);
      }
      rep.steps.push_back(std::move(gs));
    }
  }
  const auto& w = rep.transpose_weights;
  for (std::size_t i = 0; i < m.cols(); ++i) {
    const Integer expected = w.degree / w.weights[i];
    if (expected != rep.terminal[i])
      throw Defect(Errc::TerminalMismatch, expected.str(), std::to_string(rep.terminal[i]),
                   "terminal Fermat exponent of x" + std::to_string(i + 1));
  }
  rep.tilting = true;
  return rep;
}

}  // namespace invpoly
