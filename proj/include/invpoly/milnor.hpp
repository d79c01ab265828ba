#pragma once

// Milnor numbers, two ways: closed forms per atom, and the dimension of the
// graded Jacobian ring computed degree by degree with exact ranks.

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "invpoly/classify.hpp"
#include "invpoly/error.hpp"
#include "invpoly/exponent_matrix.hpp"
#include "invpoly/intlin.hpp"

namespace invpoly {

// ---------------------------------------------------------------------------
// Closed forms

/// mu(w^T) for the chain w = x1^t1 x2 + ... + xn^tn. n = 0 gives 1.
inline Integer chain_milnor_of_transpose(std::span<const Exponent> t) {
  const std::size_t n = t.size();
  auto prefix = [&](std::size_t k) {  // t_1 ... t_k, empty product 1
    Integer p = 1;
    for (std::size_t i = 0; i < k; ++i) p *= t[i];
    return p;
  };
  Integer mu = prefix(n);
  if (n % 2 == 0) {
    for (std::size_t k = 1; k <= n / 2; ++k) mu -= (Integer(t[2 * k - 2]) - 1) * prefix(2 * k - 2);
  } else {
    mu -= 1;
    for (std::size_t k = 1; k <= (n - 1) / 2; ++k) mu -= (Integer(t[2 * k - 1]) - 1) * prefix(2 * k - 1);
  }
  return mu;
}

/// mu(w^T) for the loop w = x1^t1 x2 + ... + xn^tn x1.
inline Integer loop_milnor_of_transpose(std::span<const Exponent> t) {
  Integer p = 1;
  for (auto e : t) p *= e;
  return p;
}

/// Closed-form Milnor number of one atom. With `of_transpose` the formulas
/// apply to the atom's own exponents and give mu(w^T); otherwise the atom is
/// transposed first and the result is mu(w).
inline Integer milnor_closed(const Atom& atom, bool of_transpose) {
  validate_atom(atom);
  const Atom a = of_transpose ? atom : transpose_atom(atom);
  switch (a.kind) {
    case AtomKind::Fermat: return Integer(a.exponents[0]) - 1;
    case AtomKind::Chain: return chain_milnor_of_transpose(a.exponents);
    case AtomKind::Loop: return loop_milnor_of_transpose(a.exponents);
  }
  throw Error(Errc::InvalidClassification, "unknown atom kind");
}

/// Product over atoms (Thom-Sebastiani multiplicativity).
inline Integer milnor_closed(const Classification& c, bool of_transpose) {
  if (c.atoms.empty()) throw Error(Errc::InvalidClassification, "classification has no atoms");
  Integer mu = 1;
  for (const auto& a : c.atoms) mu *= milnor_closed(a, of_transpose);
  return mu;
}

inline Integer milnor_of_transpose(const ExponentMatrix& m) { return milnor_closed(classify(m), true); }

// ---------------------------------------------------------------------------
// Graded brute force

struct MilnorLimits {
  std::size_t max_monomials = 200'000;
  std::int64_t max_socle = 5'000;
};

/// Parses "max_monomials=N,max_socle=S" (either key optional). Throws
/// Errc::Config on malformed input.
inline MilnorLimits parse_limits(std::string_view spec, MilnorLimits base = {}) {
  while (!spec.empty()) {
    const auto comma = spec.find(',');
    std::string_view item = spec.substr(0, comma);
    spec = comma == std::string_view::npos ? std::string_view{} : spec.substr(comma + 1);
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) throw Error(Errc::Config, "limit entry without '=': " + std::string(item));
    const std::string_view key = item.substr(0, eq), val = item.substr(eq + 1);
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(val.data(), val.data() + val.size(), v);
    if (ec != std::errc() || ptr != val.data() + val.size() || v <= 0)
      throw Error(Errc::Config, "limit value must be a positive integer: " + std::string(item));
    if (key == "max_monomials")
      base.max_monomials = static_cast<std::size_t>(v);
    else if (key == "max_socle")
      base.max_socle = v;
    else
      throw Error(Errc::Config, "unknown limit key: " + std::string(key));
  }
  return base;
}

/// Defaults overridden by the INVPOLY_LIMITS environment variable.
inline MilnorLimits limits_from_env() {
  const char* env = std::getenv("INVPOLY_LIMITS");
  return env ? parse_limits(env) : MilnorLimits{};
}

enum class MilnorMethod { ClosedForm, BruteForce };

struct MilnorReport {
  Integer value;
  MilnorMethod method = MilnorMethod::ClosedForm;
  std::vector<std::int64_t> graded_dims;  // degrees 0..socle (BruteForce)
  std::optional<std::int64_t> socle_degree;
};

namespace detail {

struct Overflow {};

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
  return r;
}
inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw Overflow{};
  return r;
}
inline Integer checked_mul(const Integer& a, const Integer& b) { return a * b; }
inline Integer checked_sub(const Integer& a, const Integer& b) { return a - b; }
inline std::int64_t gcd_abs(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }
inline Integer gcd_abs(const Integer& a, const Integer& b) {
  return boost::multiprecision::gcd(abs_value(a), abs_value(b));
}

template <class T>
using SparseRow = std::vector<std::pair<std::uint32_t, T>>;

// Incremental fraction-free echelon form over Q. Each new row is reduced
// against the stored pivot rows on its leading column; rows are kept
// primitive (content 1, positive lead) so entries stay small.
template <class T>
class SparseEchelon {
 public:
  explicit SparseEchelon(std::size_t cols) : pivots_(cols) {}

  void add(SparseRow<T> row) {
    while (!row.empty()) {
      auto& piv = pivots_[row.front().first];
      if (piv.empty()) {
        normalize(row);
        piv = std::move(row);
        ++rank_;
        return;
      }
      row = eliminate(row, piv);
    }
  }

  std::size_t rank() const noexcept { return rank_; }

 private:
  static void normalize(SparseRow<T>& row) {
    T g = 0;
    for (const auto& [c, v] : row) g = gcd_abs(g, v);
    if (row.front().second < 0) g = -g;
    if (g != 1)
      for (auto& [c, v] : row) v /= g;
  }

  static SparseRow<T> eliminate(const SparseRow<T>& row, const SparseRow<T>& piv) {
    const T g = gcd_abs(row.front().second, piv.front().second);
    const T fr = piv.front().second / g;  // row * fr - piv * fp
    const T fp = row.front().second / g;
    SparseRow<T> out;
    out.reserve(row.size() + piv.size());
    std::size_t i = 1, j = 1;
    while (i < row.size() || j < piv.size()) {
      if (j == piv.size() || (i < row.size() && row[i].first < piv[j].first)) {
        out.emplace_back(row[i].first, checked_mul(row[i].second, fr));
        ++i;
      } else if (i == row.size() || piv[j].first < row[i].first) {
        out.emplace_back(piv[j].first, checked_sub(T(0), checked_mul(piv[j].second, fp)));
        ++j;
      } else {
        T v = checked_sub(checked_mul(row[i].second, fr), checked_mul(piv[j].second, fp));
        if (v != 0) out.emplace_back(row[i].first, std::move(v));
        ++i;
        ++j;
      }
    }
    if (!out.empty()) normalize(out);
    return out;
  }

  std::vector<SparseRow<T>> pivots_;
  std::size_t rank_ = 0;
};

struct DerivativeTerm {
  std::int64_t coefficient;
  std::vector<Exponent> exponents;
};

// Monomials of one weighted degree, flat (n entries each) in lex order.
struct DegreeBucket {
  std::vector<Exponent> flat;
  std::size_t count = 0;

  std::optional<std::uint32_t> find(std::span<const Exponent> e, std::size_t n) const {
    std::size_t lo = 0, hi = count;
    while (lo < hi) {
      const std::size_t mid = (lo + hi) / 2;
      const auto cmp = std::lexicographical_compare_three_way(flat.begin() + mid * n,
                                                              flat.begin() + (mid + 1) * n,
                                                              e.begin(), e.end());
      if (cmp == 0) return static_cast<std::uint32_t>(mid);
      if (cmp < 0)
        lo = mid + 1;
      else
        hi = mid;
    }
    return std::nullopt;
  }
};

template <class T>
std::size_t graded_rank(const std::vector<DegreeBucket>& buckets, std::size_t n, std::int64_t degree,
                        const std::vector<std::vector<DerivativeTerm>>& partials,
                        const std::vector<std::int64_t>& partial_degree) {
  const DegreeBucket& target = buckets[static_cast<std::size_t>(degree)];
  SparseEchelon<T> ech(target.count);
  std::vector<Exponent> prod(n);
  for (std::size_t j = 0; j < n; ++j) {
    const std::int64_t src = degree - partial_degree[j];
    if (src < 0) continue;
    const DegreeBucket& from = buckets[static_cast<std::size_t>(src)];
    for (std::size_t k = 0; k < from.count; ++k) {
      SparseRow<T> row;
      for (const auto& term : partials[j]) {
        for (std::size_t v = 0; v < n; ++v) prod[v] = from.flat[k * n + v] + term.exponents[v];
        const auto idx = target.find(prod, n);
        if (!idx) throw Error(Errc::NotQuasihomogeneous, "partial derivative is not weighted-homogeneous");
        row.emplace_back(*idx, T(term.coefficient));
      }
      std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      ech.add(std::move(row));
    }
  }
  return ech.rank();
}

}  // namespace detail

/// dim C[x] / <d_1 w, ..., d_n w>, computed one weighted degree at a time.
inline MilnorReport milnor_brute(const ExponentMatrix& m, const MilnorLimits& limits = {}) {
  if (!m.square()) throw Error(Errc::NonSquare, "Milnor oracle needs a square exponent matrix");
  WeightSystem ws;
  try {
    ws = weight_system(m);
  } catch (const Error& e) {
    throw Error(Errc::NotQuasihomogeneous, to_text(m) + " has no positive weight system");
  }
  const std::size_t n = m.cols();
  const Integer socle_big = Integer(n) * ws.degree - 2 * std::accumulate(ws.weights.begin(), ws.weights.end(), Integer(0));
  if (socle_big > limits.max_socle)
    throw Error(Errc::LimitExceeded, "socle degree " + socle_big.str() + " exceeds " + std::to_string(limits.max_socle));
  if (socle_big < 0) throw Error(Errc::NotIsolated, "negative socle degree for " + to_text(m));
  const auto socle = socle_big.convert_to<std::int64_t>();
  const auto degree = ws.degree.convert_to<std::int64_t>();
  std::vector<std::int64_t> q(n);
  for (std::size_t j = 0; j < n; ++j) q[j] = ws.weights[j].convert_to<std::int64_t>();
  const std::int64_t top = socle + *std::max_element(q.begin(), q.end());

  std::vector<detail::DegreeBucket> buckets(static_cast<std::size_t>(top) + 1);
  std::size_t total = 0;
  std::vector<Exponent> cur(n, 0);
  auto enumerate = [&](auto&& self, std::size_t var, std::int64_t deg) -> void {
    if (var == n) {
      if (++total > limits.max_monomials)
        throw Error(Errc::LimitExceeded, "more than " + std::to_string(limits.max_monomials) + " monomials");
      auto& b = buckets[static_cast<std::size_t>(deg)];
      b.flat.insert(b.flat.end(), cur.begin(), cur.end());
      ++b.count;
      return;
    }
    for (Exponent e = 0; deg + e * q[var] <= top; ++e) {
      cur[var] = e;
      self(self, var + 1, deg + e * q[var]);
    }
    cur[var] = 0;
  };
  enumerate(enumerate, 0, 0);

  std::vector<std::vector<detail::DerivativeTerm>> partials(n);
  std::vector<std::int64_t> partial_degree(n);
  for (std::size_t j = 0; j < n; ++j) {
    partial_degree[j] = degree - q[j];
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (m(i, j) == 0) continue;
      std::vector<Exponent> e(m.row(i).begin(), m.row(i).end());
      --e[j];
      auto same = std::find_if(partials[j].begin(), partials[j].end(),
                               [&](const auto& t) { return t.exponents == e; });
      if (same != partials[j].end())
        same->coefficient += m(i, j);
      else
        partials[j].push_back({m(i, j), std::move(e)});
    }
  }

  MilnorReport report{0, MilnorMethod::BruteForce, {}, socle};
  for (std::int64_t deg = 0; deg <= top; ++deg) {
    const std::size_t count = buckets[static_cast<std::size_t>(deg)].count;
    std::int64_t dim = 0;
    if (count > 0) {
      std::size_t rank;
      try {
        rank = detail::graded_rank<std::int64_t>(buckets, n, deg, partials, partial_degree);
      } catch (const detail::Overflow&) {
        rank = detail::graded_rank<Integer>(buckets, n, deg, partials, partial_degree);
      }
      dim = static_cast<std::int64_t>(count - rank);
    }
    if (deg <= socle) {
      report.graded_dims.push_back(dim);
      report.value += dim;
    } else if (dim != 0) {
      throw Error(Errc::NotIsolated, "Jacobian ring of " + to_text(m) + " is nonzero in degree " +
                                         std::to_string(deg) + " above the socle " + std::to_string(socle));
    }
  }
  return report;
}

}  // namespace invpoly
