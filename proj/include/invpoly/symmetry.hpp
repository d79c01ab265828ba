#pragma once

// The maximal diagonal symmetry group Gamma_W, reported structurally, and the
// one-parameter-subgroup data (d, c) attached to an augmented cleave matrix.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "invpoly/classify.hpp"
#include "invpoly/error.hpp"
#include "invpoly/exponent_matrix.hpp"
#include "invpoly/intlin.hpp"

namespace invpoly {

struct GroupStructure {
  std::size_t free_rank = 0;
  std::vector<Integer> torsion_orders;
  Integer torsion_order_total = 1;
};

/// Character lattice presentation of Gamma_W for a k x n exponent matrix:
/// the (n+1) x k integer matrix whose column i is (a_i1, ..., a_in, -1).
/// Gamma_W = Hom(coker, G_m).
inline IntMatrix gamma_character_matrix(const ExponentMatrix& m) {
  const std::size_t k = m.rows(), n = m.cols();
  IntMatrix out(n + 1, k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < n; ++j) out(j, i) = m(i, j);
    out(n, i) = -1;
  }
  return out;
}

inline GroupStructure gamma_structure(const ExponentMatrix& m) {
  const CokernelStructure coker = cokernel_structure(gamma_character_matrix(m));
  GroupStructure g{coker.free_rank, coker.torsion_orders, coker.torsion_order()};
  return g;
}

/// Kind and parameters of an augmented loop/chain matrix.
struct AugmentationShape {
  AtomKind kind = AtomKind::Chain;
  std::vector<Exponent> exponents;
  Exponent b = 0;
};

/// Recognizes  x1^a1 x2 + ... + x_n^a_n x_{n+1}^b  (chain) and
/// x1^a1 x2 + ... + x_n^a_n x1 x_{n+1}^b  (loop, n >= 2) in atom order.
inline std::optional<AugmentationShape> detect_augmentation(const ExponentMatrix& w) {
  const std::size_t n = w.rows();
  if (w.cols() != n + 1 || n == 0) return std::nullopt;
  AugmentationShape s;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= n; ++j) {
      const Exponent e = w(i, j);
      if (j == i) continue;
      const bool aux = (i + 1 < n && j == i + 1);
      const bool b_slot = (i + 1 == n && j == n);
      const bool wrap = (i + 1 == n && j == 0 && n >= 2);
      if (aux && e != 1) return std::nullopt;
      if (!aux && !b_slot && !wrap && e != 0) return std::nullopt;
    }
    if (w(i, i) < 2) return std::nullopt;
    s.exponents.push_back(w(i, i));
  }
  s.b = w(n - 1, n);
  if (s.b < 1) return std::nullopt;
  if (n >= 2 && w(n - 1, 0) == 1)
    s.kind = AtomKind::Loop;
  else if (n >= 2 && w(n - 1, 0) != 0)
    return std::nullopt;
  return s;
}

/// Closed-form signed minors of a loop augmentation.
inline std::vector<Integer> loop_minor_closed_form(std::span<const Exponent> a, Exponent b) {
  const std::size_t n = a.size();
  std::vector<Integer> d(n + 1);
  Integer prefix = 1;  // a_1 ... a_{j-1}
  for (std::size_t j = 1; j <= n; ++j) {
    const Integer v = Integer(b) * prefix;
    d[j - 1] = ((j + n + 1) % 2 == 0) ? v : Integer(-v);
    prefix *= a[j - 1];
  }
  d[n] = prefix + ((n + 1) % 2 == 0 ? 1 : -1);
  return d;
}

/// Closed-form signed minors of a chain augmentation.
inline std::vector<Integer> chain_minor_closed_form(std::span<const Exponent> a, Exponent b) {
  const std::size_t n = a.size();
  std::vector<Integer> d(n + 1);
  Integer prefix = 1;
  for (std::size_t j = 1; j <= n; ++j) {
    const Integer v = Integer(b) * prefix;
    d[j - 1] = ((n + j - 1) % 2 == 0) ? v : Integer(-v);
    prefix *= a[j - 1];
  }
  d[n] = prefix;
  return d;
}

struct VgitData {
  std::vector<Integer> d;  // signed maximal minors
  std::vector<Integer> c;  // d / gcd, c_{n+1} > 0, c_n < 0
  Integer gcd;
  Integer sum_d;
  Integer sum_c;

  /// Indices (0-based) with c_i > 0 and c_i < 0.
  std::vector<std::size_t> positive_indices() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < c.size(); ++i)
      if (c[i] > 0) out.push_back(i);
    return out;
  }
  std::vector<std::size_t> negative_indices() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < c.size(); ++i)
      if (c[i] < 0) out.push_back(i);
    return out;
  }
};

inline VgitData vgit_lambda(const ExponentMatrix& w) {
  const std::size_t n = w.rows();
  if (w.cols() != n + 1) throw Error(Errc::BadShape, "cleave matrix must be n x (n+1)");
  VgitData v;
  v.d = maximal_minor_vector(w.to_int_matrix());
  v.gcd = gcd_of(v.d);
  if (v.gcd == 0) throw Error(Errc::BadShape, "cleave matrix " + to_text(w) + " is not of full rank");
  v.c = primitive_kernel(v.d);
  if (v.d[n] <= 0 || v.c[n - 1] >= 0)
    throw Defect(Errc::SignConventionViolated, "c_{n+1} > 0 and c_n < 0", to_string(std::span<const Integer>(v.d)),
                 "one-parameter subgroup of " + to_text(w) + " violates the sign convention");
  for (std::size_t i = 0; i <= n; ++i) {
    v.sum_d += v.d[i];
    v.sum_c += v.c[i];
  }
  if (auto shape = detect_augmentation(w)) {
    const auto expected = shape->kind == AtomKind::Loop ? loop_minor_closed_form(shape->exponents, shape->b)
                                                        : chain_minor_closed_form(shape->exponents, shape->b);
    if (expected != v.d)
      throw Defect(Errc::ClosedFormMismatch, to_string(std::span<const Integer>(expected)),
                   to_string(std::span<const Integer>(v.d)), "minor vector of " + to_text(w));
  }
  return v;
}

struct BlockCount {
  Integer t;              // |sum d|
  Integer kernel_order;   // gcd(d)
  Integer sum_c_abs;      // |sum c|
};

inline BlockCount exceptional_block_count(const VgitData& v) {
  return {abs_value(v.sum_d), v.gcd, abs_value(v.sum_c)};
}

}  // namespace invpoly
