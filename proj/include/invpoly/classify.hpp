#pragma once

// Kreuzer-Skarke classification of invertible polynomials into Fermat, chain
// and loop atoms, plus exact quasihomogeneous weight systems.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "invpoly/error.hpp"
#include "invpoly/exponent_matrix.hpp"
#include "invpoly/intlin.hpp"

namespace invpoly {

enum class AtomKind { Fermat, Chain, Loop };

inline std::string_view kind_name(AtomKind k) {
  switch (k) {
    case AtomKind::Fermat: return "fermat";
    case AtomKind::Chain: return "chain";
    case AtomKind::Loop: return "loop";
  }
  return "?";
}

/// One Thom-Sebastiani summand.
///   Fermat  x^r
///   Chain   x1^a1 x2 + ... + x_{n-1}^a_{n-1} x_n + x_n^a_n   (pure power last)
///   Loop    x1^a1 x2 + ... + x_n^a_n x1
/// `variables` holds 0-based column indices in atom order.
struct Atom {
  AtomKind kind = AtomKind::Fermat;
  std::vector<Exponent> exponents;
  std::vector<std::size_t> variables;

  std::size_t size() const noexcept { return exponents.size(); }

  static Atom fermat(Exponent r, std::size_t var = 0) { return {AtomKind::Fermat, {r}, {var}}; }
  static Atom chain(std::vector<Exponent> a) { return with_default_vars(AtomKind::Chain, std::move(a)); }
  static Atom loop(std::vector<Exponent> a) { return with_default_vars(AtomKind::Loop, std::move(a)); }

  friend bool operator==(const Atom&, const Atom&) = default;

 private:
  static Atom with_default_vars(AtomKind k, std::vector<Exponent> a) {
    std::vector<std::size_t> v(a.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = i;
    return {k, std::move(a), std::move(v)};
  }
};

/// Checks the Atom invariants; throws InvalidClassification.
inline void validate_atom(const Atom& a) {
  auto fail = [](const std::string& why) { throw Error(Errc::InvalidClassification, why); };
  if (a.exponents.size() != a.variables.size()) fail("exponent and variable lists differ in length");
  if (a.exponents.empty()) fail("empty atom");
  for (auto e : a.exponents)
    if (e < 2) fail("atom exponents must be at least 2");
  if (a.kind == AtomKind::Fermat && a.size() != 1) fail("a Fermat atom has one variable");
  if (a.kind == AtomKind::Loop && a.size() < 2) fail("a loop has at least two variables");
}

/// Rows of the atom's exponent matrix in atom order, over `ncols` columns.
inline std::vector<std::vector<Exponent>> atom_rows(const Atom& a, std::size_t ncols) {
  const std::size_t n = a.size();
  std::vector<std::vector<Exponent>> rows(n, std::vector<Exponent>(ncols, 0));
  for (std::size_t i = 0; i < n; ++i) {
    rows[i][a.variables[i]] = a.exponents[i];
    if (a.kind == AtomKind::Chain && i + 1 < n) rows[i][a.variables[i + 1]] = 1;
    if (a.kind == AtomKind::Loop) rows[i][a.variables[(i + 1) % n]] = 1;
  }
  return rows;
}

/// The atom as a polynomial in its own variables x1..xn (atom order).
inline ExponentMatrix atom_matrix(const Atom& a) {
  Atom local = a;
  for (std::size_t i = 0; i < local.size(); ++i) local.variables[i] = i;
  return ExponentMatrix(atom_rows(local, local.size()));
}

/// The atom of the transposed polynomial, in the same variable set.
/// Chains and loops reverse; Fermat atoms are fixed.
inline Atom transpose_atom(const Atom& a) {
  Atom t = a;
  if (a.kind != AtomKind::Fermat) {
    std::reverse(t.exponents.begin(), t.exponents.end());
    std::reverse(t.variables.begin(), t.variables.end());
  }
  return t;
}

inline std::string describe(const Atom& a) {
  std::string s = a.kind == AtomKind::Fermat ? "Fermat" : a.kind == AtomKind::Chain ? "Chain" : "Loop";
  s += "(";
  for (std::size_t i = 0; i < a.size(); ++i) s += (i ? "," : "") + std::to_string(a.exponents[i]);
  s += "; vars ";
  for (std::size_t i = 0; i < a.size(); ++i)
    s += (i ? "," : "") + std::string("x") + std::to_string(a.variables[i] + 1);
  return s + ")";
}

struct AtomSlot {
  std::size_t atom = 0;
  std::size_t position = 0;
  friend bool operator==(const AtomSlot&, const AtomSlot&) = default;
};

struct Classification {
  std::vector<Atom> atoms;
  std::vector<AtomSlot> placement;  // indexed by original variable

  std::size_t variables() const noexcept { return placement.size(); }

  friend bool operator==(const Classification&, const Classification&) = default;
};

/// Builds the placement table; validates that the atoms partition 0..n-1.
inline Classification make_classification(std::vector<Atom> atoms) {
  std::size_t n = 0;
  for (const auto& a : atoms) {
    validate_atom(a);
    n += a.size();
  }
  Classification c{std::move(atoms), std::vector<AtomSlot>(n, AtomSlot{n, 0})};
  for (std::size_t k = 0; k < c.atoms.size(); ++k)
    for (std::size_t p = 0; p < c.atoms[k].size(); ++p) {
      const std::size_t v = c.atoms[k].variables[p];
      if (v >= n || c.placement[v].atom != n)
        throw Error(Errc::InvalidClassification, "atoms do not partition the variables");
      c.placement[v] = {k, p};
    }
  return c;
}

/// Exponent matrix of the classified polynomial, rows in atom order.
inline ExponentMatrix assemble(const Classification& c) {
  std::vector<std::vector<Exponent>> rows;
  for (const auto& a : c.atoms)
    for (auto& r : atom_rows(a, c.variables())) rows.push_back(std::move(r));
  return ExponentMatrix(std::move(rows));
}

struct WeightSystem {
  std::vector<Integer> weights;
  Integer degree;
  friend bool operator==(const WeightSystem&, const WeightSystem&) = default;
};

/// Solves A q = d (1,...,1) exactly; d is the least positive integer making
/// every q_j an integer.
inline WeightSystem weight_system(const ExponentMatrix& m) {
  if (!m.square()) throw Error(Errc::NonSquare, "weight system needs a square exponent matrix");
  const std::vector<Integer> ones(m.rows(), Integer(1));
  const std::vector<Rational> x = solve_rational(m.to_int_matrix(), ones);
  Integer d = 1;
  for (const auto& v : x) {
    if (v <= 0)
      throw NotInvertible(NotInvertibleReason::NoPositiveWeights,
                          "no positive weight system for " + to_text(m));
    d = lcm_of(d, boost::multiprecision::denominator(v));
  }
  WeightSystem w{{}, d};
  for (const auto& v : x)
    w.weights.push_back(boost::multiprecision::numerator(v) * (d / boost::multiprecision::denominator(v)));
  return w;
}

namespace detail {

// Smallest rotation of a loop by exponent sequence, ties broken by variables.
inline void canonicalize_loop(Atom& a) {
  const std::size_t n = a.size();
  std::size_t best = 0;
  auto rotated = [&](std::size_t s) {
    std::pair<std::vector<Exponent>, std::vector<std::size_t>> r;
    for (std::size_t i = 0; i < n; ++i) {
      r.first.push_back(a.exponents[(s + i) % n]);
      r.second.push_back(a.variables[(s + i) % n]);
    }
    return r;
  };
  auto best_r = rotated(0);
  for (std::size_t s = 1; s < n; ++s) {
    auto r = rotated(s);
    if (r < best_r) {
      best_r = std::move(r);
      best = s;
    }
  }
  if (best != 0) {
    a.exponents = std::move(best_r.first);
    a.variables = std::move(best_r.second);
  }
}

}  // namespace detail

/// Decomposes a square exponent matrix into Fermat, chain and loop atoms.
/// Rejects with NotInvertible and a reason code.
inline Classification classify(const ExponentMatrix& m) {
  using R = NotInvertibleReason;
  if (!m.square())
    throw NotInvertible(R::NonSquare, std::to_string(m.rows()) + " monomials in " +
                                          std::to_string(m.cols()) + " variables");
  const std::size_t n = m.cols();
  if (det_exact(m.to_int_matrix()) == 0)
    throw NotInvertible(R::SingularMatrix, "exponent matrix is singular over the rationals");

  constexpr std::size_t none = static_cast<std::size_t>(-1);
  std::vector<std::size_t> head_row(n, none);  // row whose head is this variable
  std::vector<std::size_t> next(n, none);      // auxiliary variable of that row
  std::vector<std::size_t> prev(n, none);

  for (std::size_t i = 0; i < m.rows(); ++i) {
    std::vector<std::size_t> support;
    for (std::size_t j = 0; j < n; ++j)
      if (m(i, j) > 0) support.push_back(j);
    const std::string where = "monomial " + std::to_string(i + 1);
    std::size_t head = none, aux = none;
    if (support.size() >= 3) throw NotInvertible(R::BadRowShape, where + " has three or more variables");
    if (support.size() == 1) {
      head = support[0];
      if (m(i, head) < 2) throw NotInvertible(R::ExponentBelowTwo, where + " is linear");
    } else {
      const Exponent e0 = m(i, support[0]), e1 = m(i, support[1]);
      if (e0 == 1 && e1 == 1) throw NotInvertible(R::ExponentBelowTwo, where + " is x_i*x_j");
      if (e0 >= 2 && e1 >= 2)
        throw NotInvertible(R::BadRowShape, where + " has no exponent-1 auxiliary variable");
      head = e0 >= 2 ? support[0] : support[1];
      aux = e0 >= 2 ? support[1] : support[0];
    }
    if (head_row[head] != none)
      throw NotInvertible(R::BadRowShape, "x" + std::to_string(head + 1) + " leads two monomials");
    head_row[head] = i;
    if (aux != none) {
      if (prev[aux] != none)
        throw NotInvertible(R::BadRowShape,
                            "x" + std::to_string(aux + 1) + " is the auxiliary variable of two monomials");
      next[head] = aux;
      prev[aux] = head;
    }
  }
  for (std::size_t j = 0; j < n; ++j)
    if (head_row[j] == none)
      throw NotInvertible(R::BadRowShape, "x" + std::to_string(j + 1) + " leads no monomial");

  std::vector<Atom> atoms;
  std::vector<bool> seen(n, false);
  // Paths start at variables nobody points to.
  for (std::size_t j = 0; j < n; ++j) {
    if (prev[j] != none) continue;
    Atom a;
    for (std::size_t v = j; v != none; v = next[v]) {
      seen[v] = true;
      a.variables.push_back(v);
      a.exponents.push_back(m(head_row[v], v));
    }
    a.kind = a.size() == 1 ? AtomKind::Fermat : AtomKind::Chain;
    atoms.push_back(std::move(a));
  }
  // Everything left lies on a cycle.
  for (std::size_t j = 0; j < n; ++j) {
    if (seen[j]) continue;
    Atom a{AtomKind::Loop, {}, {}};
    std::size_t v = j;
    do {
      seen[v] = true;
      a.variables.push_back(v);
      a.exponents.push_back(m(head_row[v], v));
      v = next[v];
    } while (v != j);
    detail::canonicalize_loop(a);
    atoms.push_back(std::move(a));
  }
  std::sort(atoms.begin(), atoms.end(), [](const Atom& x, const Atom& y) {
    return *std::min_element(x.variables.begin(), x.variables.end()) <
           *std::min_element(y.variables.begin(), y.variables.end());
  });

  (void)weight_system(m);  // throws NoPositiveWeights
  return make_classification(std::move(atoms));
}

}  // namespace invpoly
