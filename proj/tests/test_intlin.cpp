#include <gtest/gtest.h>

#include "support.hpp"

using namespace invpoly;
using support::ints;
using support::to_int;

namespace {

Integer det_of(const IntMatrix& m) {
  oracle::Dense d(m.rows(), std::vector<long long>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) d[i][j] = m(i, j).convert_to<long long>();
  return oracle::leibniz_det(d);
}

IntMatrix diag_matrix(const std::vector<Integer>& diag, std::size_t rows, std::size_t cols) {
  IntMatrix d(rows, cols);
  for (std::size_t i = 0; i < diag.size(); ++i) d(i, i) = diag[i];
  return d;
}

}  // namespace

TEST(Determinant, Examples) {
  EXPECT_EQ(det_exact(IntMatrix{{2, 1}, {1, 2}}), 3);
  EXPECT_EQ(det_exact(IntMatrix{{2, 1}, {0, 2}}), 4);
  for (std::size_t n = 1; n <= 5; ++n) EXPECT_EQ(det_exact(IntMatrix::identity(n)), 1);
  EXPECT_EQ(det_exact(IntMatrix{{0, 1}, {1, 0}}), -1);
  EXPECT_EQ(det_exact(IntMatrix{{1, 2}, {2, 4}}), 0);
}

TEST(Determinant, RejectsNonSquare) {
  try {
    det_exact(IntMatrix{{1, 2, 3}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NonSquare);
  }
}

TEST(Determinant, MatchesLeibnizOnRandomMatrices) {
  oracle::Rng rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const auto n = static_cast<std::size_t>(rng.uniform(1, 6));
    const auto d = rng.matrix(n, n, -9, 9);
    EXPECT_EQ(det_exact(to_int(d)), oracle::leibniz_det(d));
  }
}

TEST(Determinant, LargeEntriesStayExact) {
  IntMatrix m{{1, 0}, {0, 1}};
  Integer big = 1;
  for (int i = 0; i < 40; ++i) big *= 1000003;
  m(0, 0) = big;
  m(1, 1) = big + 1;
  m(0, 1) = big - 1;
  m(1, 0) = 3;
  EXPECT_EQ(det_exact(m), big * (big + 1) - 3 * (big - 1));
}

TEST(Rank, MatchesMinorRank) {
  oracle::Rng rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    const auto r = static_cast<std::size_t>(rng.uniform(1, 5));
    const auto c = static_cast<std::size_t>(rng.uniform(1, 5));
    auto d = rng.matrix(r, c, -3, 3);
    if (r > 1 && trial % 3 == 0)
      for (std::size_t j = 0; j < c; ++j) d[r - 1][j] = 2 * d[0][j];  // force a dependency
    EXPECT_EQ(rank_exact(to_int(d)), oracle::minor_rank(d));
  }
}

TEST(MaximalMinors, Examples) {
  EXPECT_EQ(maximal_minor_vector(IntMatrix{{2, 1, 0}, {1, 2, 2}}), ints({2, -4, 3}));
  EXPECT_EQ(maximal_minor_vector(IntMatrix{{2, 1, 0}, {0, 2, 2}}), ints({2, -4, 4}));
  EXPECT_EQ(maximal_minor_vector(IntMatrix{{5, 1}}), ints({-1, 5}));
}

TEST(MaximalMinors, RejectsWrongShape) {
  try {
    maximal_minor_vector(IntMatrix{{1, 2}, {3, 4}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::BadShape);
  }
}

TEST(MaximalMinors, CofactorOracleAndKernel) {
  oracle::Rng rng(13);
  for (int trial = 0; trial < 300; ++trial) {
    const auto k = static_cast<std::size_t>(rng.uniform(1, 5));
    const auto d = rng.matrix(k, k + 1, -9, 9);
    const IntMatrix m = to_int(d);
    const auto minors = maximal_minor_vector(m);
    EXPECT_EQ(minors, oracle::cofactor_vector(d));
    const auto prod = m * std::span<const Integer>(minors);
    for (const auto& x : prod) EXPECT_EQ(x, 0);
  }
}

TEST(PrimitiveKernel, Examples) {
  EXPECT_EQ(primitive_kernel(ints({2, -4, 4})), ints({1, -2, 2}));
  EXPECT_EQ(primitive_kernel(ints({2, -4, 3})), ints({2, -4, 3}));
  EXPECT_EQ(primitive_kernel(ints({-1, 5})), ints({-1, 5}));
  EXPECT_EQ(primitive_kernel(ints({3, -6, -9})), ints({-1, 2, 3}));
  try {
    primitive_kernel(ints({0, 0}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::ZeroVector);
  }
}

TEST(PrimitiveKernel, IsPrimitiveAndParallel) {
  oracle::Rng rng(14);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Integer> d;
    for (int i = 0; i < 4; ++i) d.push_back(rng.uniform(-30, 30));
    if (gcd_of(d) == 0) continue;
    const auto c = primitive_kernel(d);
    EXPECT_EQ(gcd_of(c), 1);
    if (d.back() != 0) {
      EXPECT_GT(c.back(), 0);
    }
    for (std::size_t i = 0; i < d.size(); ++i)
      for (std::size_t j = 0; j < d.size(); ++j) EXPECT_EQ(c[i] * d[j], c[j] * d[i]);
  }
}

TEST(SmithNormalForm, Examples) {
  EXPECT_EQ(smith_normal_form(IntMatrix{{2, 0}, {0, 3}}).diag, ints({1, 6}));
  EXPECT_EQ(smith_normal_form(IntMatrix{{2, 1}, {1, 2}}).diag, ints({1, 3}));
  EXPECT_EQ(smith_normal_form(IntMatrix(3, 2)).diag, ints({0, 0}));
}

TEST(SmithNormalForm, RoundTripAndDeterminantalDivisors) {
  oracle::Rng rng(15);
  for (int trial = 0; trial < 300; ++trial) {
    const auto r = static_cast<std::size_t>(rng.uniform(1, 5));
    const auto c = static_cast<std::size_t>(rng.uniform(1, 5));
    const auto d = rng.matrix(r, c, -9, 9);
    const IntMatrix m = to_int(d);
    const SnfResult s = smith_normal_form(m);
    EXPECT_EQ(s.left * m * s.right, diag_matrix(s.diag, r, c));
    EXPECT_EQ(abs_value(det_of(s.left)), 1);
    EXPECT_EQ(abs_value(det_of(s.right)), 1);
    EXPECT_EQ(s.diag, oracle::invariant_factors(d));
    for (std::size_t i = 0; i + 1 < s.diag.size(); ++i) {
      EXPECT_GE(s.diag[i], 0);
      if (s.diag[i] != 0) {
        EXPECT_EQ(s.diag[i + 1] % s.diag[i], 0);
      } else {
        EXPECT_EQ(s.diag[i + 1], 0);
      }
    }
  }
}

TEST(Cokernel, Examples) {
  const auto a = cokernel_structure(IntMatrix{{2, 0}, {0, 2}, {-1, -1}});
  EXPECT_EQ(a.free_rank, 1u);
  EXPECT_EQ(a.torsion_orders, ints({2}));
  const auto b = cokernel_structure(IntMatrix{{5}, {-1}});
  EXPECT_EQ(b.free_rank, 1u);
  EXPECT_TRUE(b.torsion_orders.empty());
  const auto c = cokernel_structure(IntMatrix::identity(3));
  EXPECT_EQ(c.free_rank, 0u);
  EXPECT_TRUE(c.torsion_orders.empty());
  EXPECT_EQ(c.torsion_order(), 1);
}

TEST(Cokernel, TorsionOrderOfFullRankSquareIsDeterminant) {
  oracle::Rng rng(16);
  for (int trial = 0; trial < 100; ++trial) {
    const auto n = static_cast<std::size_t>(rng.uniform(1, 4));
    const auto d = rng.matrix(n, n, -6, 6);
    const Integer det = oracle::leibniz_det(d);
    if (det == 0) continue;
    const auto c = cokernel_structure(to_int(d));
    EXPECT_EQ(c.free_rank, 0u);
    EXPECT_EQ(c.torsion_order(), abs_value(det));
  }
}

TEST(SolveRational, SolvesExactly) {
  oracle::Rng rng(17);
  for (int trial = 0; trial < 150; ++trial) {
    const auto n = static_cast<std::size_t>(rng.uniform(1, 5));
    const auto d = rng.matrix(n, n, -9, 9);
    if (oracle::leibniz_det(d) == 0) continue;
    std::vector<Integer> b;
    for (std::size_t i = 0; i < n; ++i) b.push_back(rng.uniform(-20, 20));
    const auto x = solve_rational(to_int(d), b);
    for (std::size_t i = 0; i < n; ++i) {
      Rational s = 0;
      for (std::size_t j = 0; j < n; ++j) s += Rational(d[i][j]) * x[j];
      EXPECT_EQ(s, Rational(b[i]));
    }
  }
  try {
    solve_rational(IntMatrix{{1, 2}, {2, 4}}, ints({1, 1}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::SingularMatrix);
  }
}

TEST(InverseRational, Examples) {
  const auto a = inverse_rational(IntMatrix{{2, 0}, {0, 2}});
  EXPECT_EQ(a(0, 0), Rational(1, 2));
  EXPECT_EQ(a(0, 1), 0);
  EXPECT_EQ(a(1, 1), Rational(1, 2));
  const auto b = inverse_rational(IntMatrix{{2, 1}, {1, 2}});
  EXPECT_EQ(b, (RationalMatrix{{Rational(2, 3), Rational(-1, 3)}, {Rational(-1, 3), Rational(2, 3)}}));
  const auto c = inverse_rational(IntMatrix{{3, 1}, {0, 2}});
  EXPECT_EQ(c, (RationalMatrix{{Rational(1, 3), Rational(-1, 6)}, {Rational(0), Rational(1, 2)}}));
}

TEST(InverseRational, TimesMatrixIsIdentity) {
  oracle::Rng rng(18);
  for (int trial = 0; trial < 100; ++trial) {
    const auto n = static_cast<std::size_t>(rng.uniform(1, 5));
    const auto d = rng.matrix(n, n, -9, 9);
    if (oracle::leibniz_det(d) == 0) continue;
    const auto inv = inverse_rational(to_int(d));
    EXPECT_EQ(inv * to_rational(to_int(d)), RationalMatrix::identity(n));
  }
}
