#include <algorithm>

#include <gtest/gtest.h>

#include "support.hpp"

using namespace invpoly;
using support::mat;
using support::poly;

namespace {

NotInvertibleReason reason_of(const ExponentMatrix& m) {
  try {
    classify(m);
  } catch (const NotInvertible& e) {
    return e.reason();
  }
  ADD_FAILURE() << "classified " << to_text(m);
  return NotInvertibleReason::NonSquare;
}

std::vector<Atom> small_atoms(std::size_t max_n, Exponent max_e) {
  EnumerationSpec s;
  s.max_vars = max_n;
  s.max_exp = max_e;
  return enumerate_atoms(s);
}

// Rows of m as a sorted multiset, for comparisons up to row order.
std::vector<std::vector<Exponent>> sorted_rows(const ExponentMatrix& m) {
  auto rows = m.data();
  std::sort(rows.begin(), rows.end());
  return rows;
}

}  // namespace

TEST(Classify, Examples) {
  const auto chain = classify(mat({{3, 1}, {0, 2}}));
  ASSERT_EQ(chain.atoms.size(), 1u);
  EXPECT_EQ(chain.atoms[0], (Atom{AtomKind::Chain, {3, 2}, {0, 1}}));

  const auto loop = classify(mat({{2, 1}, {1, 2}}));
  ASSERT_EQ(loop.atoms.size(), 1u);
  EXPECT_EQ(loop.atoms[0], (Atom{AtomKind::Loop, {2, 2}, {0, 1}}));

  const auto fermats = classify(mat({{2, 0}, {0, 2}}));
  ASSERT_EQ(fermats.atoms.size(), 2u);
  EXPECT_EQ(fermats.atoms[0], Atom::fermat(2, 0));
  EXPECT_EQ(fermats.atoms[1], Atom::fermat(2, 1));

  const auto loop32 = classify(poly("x1^3*x2 + x1*x2^2"));
  EXPECT_EQ(loop32.atoms[0], (Atom{AtomKind::Loop, {2, 3}, {1, 0}}));
}

TEST(Classify, MixedAndPermuted) {
  // x3 -> x1 chain, x2 Fermat, loop on x4, x5, x6
  const ExponentMatrix m = poly("x2^7 + x3^2*x1 + x1^4 + x4^2*x5 + x5^3*x6 + x6^2*x4");
  const auto c = classify(m);
  ASSERT_EQ(c.atoms.size(), 3u);
  EXPECT_EQ(c.atoms[0], (Atom{AtomKind::Chain, {2, 4}, {2, 0}}));
  EXPECT_EQ(c.atoms[1], Atom::fermat(7, 1));
  EXPECT_EQ(c.atoms[2], (Atom{AtomKind::Loop, {2, 2, 3}, {5, 3, 4}}));
  EXPECT_EQ(c.placement[2], (AtomSlot{0, 0}));
  EXPECT_EQ(c.placement[4], (AtomSlot{2, 2}));
  EXPECT_EQ(sorted_rows(assemble(c)), sorted_rows(m));
}

TEST(Classify, Rejections) {
  using R = NotInvertibleReason;
  EXPECT_EQ(reason_of(mat({{2, 1}})), R::NonSquare);
  EXPECT_EQ(reason_of(mat({{2, 2}, {1, 1}})), R::SingularMatrix);
  EXPECT_EQ(reason_of(mat({{2, 1, 1}, {0, 2, 0}, {0, 0, 2}})), R::BadRowShape);
  EXPECT_EQ(reason_of(mat({{2, 2}, {0, 3}})), R::BadRowShape);
  EXPECT_EQ(reason_of(mat({{1, 1}, {0, 2}})), R::ExponentBelowTwo);
  EXPECT_EQ(reason_of(mat({{1, 0}, {0, 2}})), R::ExponentBelowTwo);
  EXPECT_EQ(reason_of(mat({{2, 1, 0}, {0, 2, 0}, {0, 1, 2}})), R::BadRowShape);
}

TEST(WeightSystem, NoPositiveWeights) {
  try {
    weight_system(mat({{3, 1}, {1, 0}}));
    FAIL();
  } catch (const NotInvertible& e) {
    EXPECT_EQ(e.reason(), NotInvertibleReason::NoPositiveWeights);
  }
  EXPECT_EQ(weight_system(mat({{1, 3}, {3, 1}})).degree, 4);
}

TEST(WeightSystem, Examples) {
  EXPECT_EQ(weight_system(mat({{3, 1}, {0, 2}})), (WeightSystem{support::ints({1, 3}), 6}));
  EXPECT_EQ(weight_system(mat({{2, 1}, {1, 2}})), (WeightSystem{support::ints({1, 1}), 3}));
  EXPECT_EQ(weight_system(mat({{5}})), (WeightSystem{support::ints({1}), 5}));
}

TEST(WeightSystem, MatchesBruteSearchOnAtoms) {
  for (const Atom& a : small_atoms(3, 4)) {
    for (const ExponentMatrix& m : {atom_matrix(a), transpose(atom_matrix(a))}) {
      const auto brute = oracle::search_weights(support::to_dense(m), 200);
      ASSERT_TRUE(brute) << to_text(m);
      const WeightSystem w = weight_system(m);
      EXPECT_EQ(w.degree, brute->d) << to_text(m);
      for (std::size_t j = 0; j < w.weights.size(); ++j) EXPECT_EQ(w.weights[j], brute->q[j]) << to_text(m);
    }
  }
}

TEST(Classify, RecoversEnumeratedAtoms) {
  for (const Atom& a : small_atoms(4, 4)) {
    const auto c = classify(atom_matrix(a));
    ASSERT_EQ(c.atoms.size(), 1u);
    if (a.kind == AtomKind::Loop) {
      // same cycle, possibly rotated
      const Atom& got = c.atoms[0];
      EXPECT_EQ(got.kind, AtomKind::Loop);
      bool rotation = false;
      for (std::size_t s = 0; s < a.size(); ++s) {
        bool same = true;
        for (std::size_t i = 0; i < a.size(); ++i)
          same = same && got.exponents[i] == a.exponents[(s + i) % a.size()] &&
                 got.variables[i] == a.variables[(s + i) % a.size()];
        rotation = rotation || same;
      }
      EXPECT_TRUE(rotation) << describe(a) << " vs " << describe(got);
    } else {
      EXPECT_EQ(c.atoms[0], a);
    }
  }
}

TEST(Classify, TransposeReversesChainsAndKeepsLoopMultisets) {
  for (const Atom& a : small_atoms(3, 5)) {
    const auto c = classify(transpose(atom_matrix(a)));
    ASSERT_EQ(c.atoms.size(), 1u);
    const Atom& t = c.atoms[0];
    EXPECT_EQ(t.kind, a.kind);
    if (a.kind == AtomKind::Chain) {
      EXPECT_EQ(t, transpose_atom(a));
    } else {
      auto x = a.exponents, y = t.exponents;
      std::sort(x.begin(), x.end());
      std::sort(y.begin(), y.end());
      EXPECT_EQ(x, y);
    }
  }
}

TEST(Classify, InvariantUnderVariablePermutation) {
  oracle::Rng rng(31);
  const auto atoms = small_atoms(3, 4);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<const Atom*> parts;
    const int count = static_cast<int>(rng.uniform(1, 3));
    for (int i = 0; i < count; ++i)
      parts.push_back(&atoms[static_cast<std::size_t>(rng.uniform(0, static_cast<long long>(atoms.size()) - 1))]);
    const ExponentMatrix m = atom_sum(parts);
    std::vector<std::size_t> perm(m.cols());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    for (std::size_t i = perm.size(); i > 1; --i)
      std::swap(perm[i - 1], perm[static_cast<std::size_t>(rng.uniform(0, static_cast<long long>(i) - 1))]);
    std::vector<std::vector<Exponent>> rows(m.rows(), std::vector<Exponent>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) rows[i][perm[j]] = m(i, j);
    std::reverse(rows.begin(), rows.end());
    const ExponentMatrix p(rows);

    const auto a = classify(m), b = classify(p);
    ASSERT_EQ(a.atoms.size(), b.atoms.size());
    std::vector<std::pair<AtomKind, std::vector<Exponent>>> ka, kb;
    for (const auto& x : a.atoms) ka.push_back({x.kind, x.exponents});
    for (const auto& x : b.atoms) kb.push_back({x.kind, x.exponents});
    std::sort(ka.begin(), ka.end());
    std::sort(kb.begin(), kb.end());
    EXPECT_EQ(ka, kb) << to_text(m) << " / " << to_text(p);
    EXPECT_EQ(sorted_rows(assemble(b)), sorted_rows(p));
  }
}

TEST(Atom, Validation) {
  EXPECT_THROW(make_classification({Atom{AtomKind::Chain, {2, 1}, {0, 1}}}), Error);
  EXPECT_THROW(make_classification({Atom{AtomKind::Loop, {2}, {0}}}), Error);
  EXPECT_THROW(make_classification({Atom::fermat(2, 0), Atom::fermat(3, 0)}), Error);
  EXPECT_NO_THROW(make_classification({Atom::fermat(2, 1), Atom::fermat(3, 0)}));
}
