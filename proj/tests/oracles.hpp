#pragma once

// Slow, independent reference computations used only by the tests. Nothing
// here calls into the library's linear algebra or Milnor code.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace oracle {

using Big = boost::multiprecision::cpp_int;
using Frac = boost::multiprecision::cpp_rational;
using Dense = std::vector<std::vector<long long>>;

inline Big big_gcd(Big a, Big b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    Big r = a % b;
    a = b;
    b = r;
  }
  return a;
}

/// Sum over permutations.
inline Big leibniz_det(const Dense& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  Big total = 0;
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (p[i] > p[j]) ++inversions;
    Big term = inversions % 2 ? -1 : 1;
    for (std::size_t i = 0; i < n && term != 0; ++i) term *= m[i][p[i]];
    total += term;
  } while (std::next_permutation(p.begin(), p.end()));
  return total;
}

inline Dense submatrix(const Dense& m, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
  Dense s;
  for (auto r : rows) {
    std::vector<long long> row;
    for (auto c : cols) row.push_back(m[r][c]);
    s.push_back(row);
  }
  return s;
}

/// All k-subsets of {0..n-1} in lexicographic order.
inline std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  auto rec = [&](auto&& self, std::size_t from) -> void {
    if (cur.size() == k) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = from; i < n; ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

/// Invariant factors from determinantal divisors D_k = gcd of k x k minors:
/// s_k = D_k / D_{k-1}, zero past the rank. Length min(rows, cols).
inline std::vector<Big> invariant_factors(const Dense& m) {
  const std::size_t r = m.size(), c = r ? m[0].size() : 0;
  const std::size_t k_max = std::min(r, c);
  std::vector<Big> out;
  Big prev = 1;
  for (std::size_t k = 1; k <= k_max; ++k) {
    Big g = 0;
    for (const auto& rows : subsets(r, k))
      for (const auto& cols : subsets(c, k)) g = big_gcd(g, leibniz_det(submatrix(m, rows, cols)));
    if (g == 0) {
      out.resize(k_max, 0);
      return out;
    }
    out.push_back(g / prev);
    prev = g;
  }
  return out;
}

/// Rank by largest nonvanishing minor.
inline std::size_t minor_rank(const Dense& m) {
  const auto f = invariant_factors(m);
  return static_cast<std::size_t>(std::count_if(f.begin(), f.end(), [](const Big& x) { return x != 0; }));
}

/// Cofactor vector of a k x (k+1) matrix: d_i = (-1)^(i+k+1) det(M without column i), 1-based i.
inline std::vector<Big> cofactor_vector(const Dense& m) {
  const std::size_t k = m.size(), n = k + 1;
  std::vector<Big> d;
  std::vector<std::size_t> rows(k);
  std::iota(rows.begin(), rows.end(), 0);
  for (std::size_t i = 1; i <= n; ++i) {
    std::vector<std::size_t> cols;
    for (std::size_t j = 0; j < n; ++j)
      if (j + 1 != i) cols.push_back(j);
    const Big det = leibniz_det(submatrix(m, rows, cols));
    d.push_back((i + k + 1) % 2 == 0 ? det : Big(-det));
  }
  return d;
}

struct Weights {
  std::vector<long long> q;
  long long d = 0;
};

/// Smallest d with an integer solution of A q = d (1,...,1), q_j in [1, d].
inline std::optional<Weights> search_weights(const Dense& a, long long d_max) {
  const std::size_t n = a.size();
  for (long long d = 1; d <= d_max; ++d) {
    std::vector<long long> q(n, 1);
    while (true) {
      bool ok = true;
      for (std::size_t i = 0; i < n && ok; ++i) {
        long long s = 0;
        for (std::size_t j = 0; j < n; ++j) s += a[i][j] * q[j];
        ok = s == d;
      }
      if (ok) return Weights{q, d};
      std::size_t i = n;
      while (i > 0 && q[i - 1] == d) q[--i] = 1;
      if (i == 0) break;
      ++q[i - 1];
    }
  }
  return std::nullopt;
}

/// prod (d/q_i - 1) for a quasihomogeneous isolated singularity.
inline Frac milnor_orlik(const std::vector<long long>& q, long long d) {
  Frac mu = 1;
  for (auto qi : q) mu *= Frac(d, qi) - 1;
  return mu;
}

inline std::size_t rational_rank(std::vector<std::vector<Frac>> rows) {
  std::size_t rank = 0;
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t p = rank;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[rank]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][c] == 0) continue;
      const Frac f = rows[r][c] / rows[rank][c];
      for (std::size_t j = c; j < cols; ++j) rows[r][j] -= f * rows[rank][j];
    }
    ++rank;
  }
  return rank;
}

struct JacobianDims {
  std::vector<long long> dims;  // degrees 0..top
  long long mu = 0;             // sum up to the socle
  bool vanishes_above_socle = true;
};

/// Dense rational computation of the graded Jacobian ring of the polynomial
/// with exponent matrix `a` (all coefficients 1) up to degree `top`.
inline JacobianDims dense_jacobian(const Dense& a, const Weights& w, long long top) {
  const std::size_t n = a[0].size();
  long long qsum = 0;
  for (auto x : w.q) qsum += x;
  const long long socle = static_cast<long long>(n) * w.d - 2 * qsum;

  auto monomials = [&](long long deg) {
    std::vector<std::vector<long long>> out;
    std::vector<long long> cur(n, 0);
    auto rec = [&](auto&& self, std::size_t v, long long left) -> void {
      if (v == n) {
        if (left == 0) out.push_back(cur);
        return;
      }
      for (long long e = 0; e * w.q[v] <= left; ++e) {
        cur[v] = e;
        self(self, v + 1, left - e * w.q[v]);
      }
      cur[v] = 0;
    };
    if (deg >= 0) rec(rec, 0, deg);
    return out;
  };

  JacobianDims out;
  for (long long deg = 0; deg <= top; ++deg) {
    const auto basis = monomials(deg);
    std::map<std::vector<long long>, std::size_t> index;
    for (std::size_t i = 0; i < basis.size(); ++i) index[basis[i]] = i;
    std::vector<std::vector<Frac>> rows;
    for (std::size_t j = 0; j < n; ++j)
      for (const auto& mult : monomials(deg - (w.d - w.q[j]))) {
        std::vector<Frac> row(basis.size(), 0);
        for (const auto& mono : a) {
          if (mono[j] == 0) continue;
          std::vector<long long> e(n);
          for (std::size_t v = 0; v < n; ++v) e[v] = mono[v] + mult[v] - (v == j ? 1 : 0);
          row[index.at(e)] += mono[j];
        }
        rows.push_back(std::move(row));
      }
    const long long dim = static_cast<long long>(basis.size() - rational_rank(rows));
    out.dims.push_back(dim);
    if (deg <= socle)
      out.mu += dim;
    else if (dim != 0)
      out.vanishes_above_socle = false;
  }
  return out;
}

/// Deterministic generator for property tests.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  long long uniform(long long lo, long long hi) { return std::uniform_int_distribution<long long>(lo, hi)(gen_); }
  Dense matrix(std::size_t rows, std::size_t cols, long long lo, long long hi) {
    Dense m(rows, std::vector<long long>(cols));
    for (auto& r : m)
      for (auto& x : r) x = uniform(lo, hi);
    return m;
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace oracle
