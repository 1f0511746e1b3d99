#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "modp_lab/linalg.hpp"

using namespace modp;

namespace {

using P = std::vector<Elem>;  // low to high, untrimmed

P pmul(const FiniteField& F, const P& a, const P& b) {
  P out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = F.add(out[i + j], F.mul(a[i], b[j]));
  return out;
}

P padd(const FiniteField& F, P a, const P& b) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = F.add(a[i], b[i]);
  return a;
}

// det(X I - M) by the Leibniz expansion over all permutations.
Poly leibniz_char_poly(const FiniteField& F, const Matrix& m) {
  const int n = m.n;
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  P total{0};
  do {
    int inversions = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) inversions += perm[static_cast<std::size_t>(i)] > perm[static_cast<std::size_t>(j)];
    P term{inversions % 2 ? F.neg(1) : F.one()};
    for (int i = 0; i < n; ++i) {
      const int j = perm[static_cast<std::size_t>(i)];
      P entry{F.neg(m.at(i, j))};
      if (i == j) entry.push_back(1);
      term = pmul(F, term, entry);
    }
    total = padd(F, total, term);
  } while (std::next_permutation(perm.begin(), perm.end()));
  Poly out{total};
  poly::trim(out);
  return out;
}

bool has_cyclic_vector(const FiniteField& F, const Matrix& m) {
  const auto n = static_cast<std::size_t>(m.n);
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= F.order();
  for (std::uint64_t code = 1; code < total; ++code) {
    std::vector<Elem> v(n);
    std::uint64_t c = code;
    for (auto& x : v) {
      x = static_cast<Elem>(c % F.order());
      c /= F.order();
    }
    std::vector<std::vector<Elem>> rows{v};
    for (std::size_t k = 1; k < n; ++k) rows.push_back(mat::apply(F, m, rows.back()));
    if (mat::row_reduce(F, rows) == static_cast<int>(n)) return true;
  }
  return false;
}

Matrix random_matrix(const FiniteField& F, int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<Elem> d(0, F.order() - 1);
  Matrix m(n);
  for (auto& x : m.a) x = d(rng);
  return m;
}

Poly from_roots(const FiniteField& F, const std::vector<Elem>& roots) {
  Poly p{{1}};
  for (Elem r : roots) p = poly::mul(F, p, poly::x_minus(F, r));
  return p;
}

}  // namespace

TEST(Matrix, DimensionBounds) {
  EXPECT_THROW(Matrix(0), std::invalid_argument);
  EXPECT_THROW(Matrix(7), std::invalid_argument);
  EXPECT_NO_THROW(Matrix(1));
}

TEST(Poly, DivmodGcdLcm) {
  const FiniteField F(field_spec_for_order(7));
  const Poly a = from_roots(F, {1, 2, 2});
  const Poly b = from_roots(F, {2, 3});
  EXPECT_EQ(poly::gcd(F, a, b), from_roots(F, {2}));
  EXPECT_EQ(poly::lcm(F, a, b), from_roots(F, {1, 2, 2, 3}));
  const auto [q, r] = poly::divmod(F, a, b);
  EXPECT_EQ(poly::add(F, poly::mul(F, q, b), r), a);
  EXPECT_LT(r.degree(), b.degree());
  EXPECT_EQ(poly::eval(F, a, 2), 0u);
  EXPECT_NE(poly::eval(F, a, 4), 0u);
}

TEST(CharPoly, Examples) {
  const FiniteField F7(field_spec_for_order(7)), F5(field_spec_for_order(5));
  EXPECT_EQ(mat::char_poly(F7, mat::identity(3)), from_roots(F7, {1, 1, 1}));
  EXPECT_EQ(mat::char_poly(F5, mat::jordan_block(3, 1)), from_roots(F5, {1, 1, 1}));
  EXPECT_EQ(mat::char_poly(F7, mat::diagonal({1, 2, 3})), from_roots(F7, {1, 2, 3}));
}

TEST(CharPoly, MatchesLeibnizAndCayleyHamilton) {
  std::mt19937_64 rng(7);
  for (std::uint64_t q : {2, 3, 4, 5, 7, 8, 9})
    for (int n = 1; n <= 4; ++n) {
      const FiniteField F(field_spec_for_order(q));
      for (int trial = 0; trial < 60; ++trial) {
        const Matrix m = random_matrix(F, n, rng);
        const Poly cp = mat::char_poly(F, m);
        ASSERT_EQ(cp, leibniz_char_poly(F, m));
        ASSERT_TRUE(mat::is_zero(mat::eval_poly(F, cp, m)));
        const Poly mp = mat::min_poly(F, m);
        ASSERT_TRUE(mat::is_zero(mat::eval_poly(F, mp, m)));
        ASSERT_TRUE(poly::divmod(F, cp, mp).second.is_zero());
        ASSERT_EQ(mp.lead(), 1u);
        ASSERT_EQ(cp.c[0], n % 2 ? F.neg(mat::det(F, m)) : mat::det(F, m));
      }
    }
}

TEST(CharPoly, FiveAndSixDimensional) {
  std::mt19937_64 rng(11);
  const FiniteField F(field_spec_for_order(3));
  for (int n : {5, 6})
    for (int trial = 0; trial < 5; ++trial) {
      const Matrix m = random_matrix(F, n, rng);
      ASSERT_EQ(mat::char_poly(F, m), leibniz_char_poly(F, m));
    }
}

TEST(MinPoly, Examples) {
  const FiniteField F5(field_spec_for_order(5));
  EXPECT_EQ(mat::min_poly(F5, mat::identity(3)), from_roots(F5, {1}));
  EXPECT_EQ(mat::min_poly(F5, mat::jordan_block(3, 1)), from_roots(F5, {1, 1, 1}));
  EXPECT_EQ(mat::min_poly(F5, mat::diagonal({1, 1, 2})), from_roots(F5, {1, 2}));
}

TEST(MinPoly, LeastAnnihilatorOnSmallSamples) {
  std::mt19937_64 rng(3);
  const FiniteField F(field_spec_for_order(3));
  for (int trial = 0; trial < 200; ++trial) {
    const Matrix m = random_matrix(F, 3, rng);
    const Poly mp = mat::min_poly(F, m);
    // No monic polynomial of smaller degree annihilates m.
    for (int deg = 0; deg < mp.degree(); ++deg) {
      std::uint64_t total = 1;
      for (int i = 0; i < deg; ++i) total *= 3;
      for (std::uint64_t code = 0; code < total; ++code) {
        Poly p;
        p.c.resize(static_cast<std::size_t>(deg) + 1);
        std::uint64_t c = code;
        for (int i = 0; i < deg; ++i, c /= 3) p.c[static_cast<std::size_t>(i)] = static_cast<Elem>(c % 3);
        p.c.back() = 1;
        ASSERT_FALSE(mat::is_zero(mat::eval_poly(F, p, m)));
      }
    }
  }
}

TEST(Regular, Examples) {
  const FiniteField F5(field_spec_for_order(5));
  for (int n = 2; n <= 6; ++n) EXPECT_FALSE(mat::is_regular(F5, mat::identity(n)));
  EXPECT_TRUE(mat::is_regular(F5, mat::jordan_block(3, 1)));
  EXPECT_FALSE(mat::is_regular(F5, mat::diagonal({1, 1, 2})));
  EXPECT_TRUE(mat::is_regular(F5, mat::diagonal({1, 3, 2})));
  EXPECT_TRUE(mat::is_unipotent(F5, mat::jordan_block(3, 1)));
  EXPECT_FALSE(mat::is_unipotent(F5, mat::jordan_block(3, 2)));
}

TEST(Regular, CyclicVectorOracleOnRandomMatrices) {
  std::mt19937_64 rng(5);
  for (std::uint64_t q : {2, 4, 5})
    for (int n = 2; n <= 3; ++n) {
      const FiniteField F(field_spec_for_order(q));
      for (int trial = 0; trial < 300; ++trial) {
        const Matrix m = random_matrix(F, n, rng);
        ASSERT_EQ(mat::is_regular(F, m), has_cyclic_vector(F, m));
      }
    }
}

TEST(Regular, ScalarMultiplesStayRegular) {
  std::mt19937_64 rng(9);
  const FiniteField F(field_spec_for_order(7));
  for (int trial = 0; trial < 300; ++trial) {
    const Matrix m = random_matrix(F, 3, rng);
    if (!mat::is_regular(F, m)) continue;
    for (Elem c = 1; c < 7; ++c) ASSERT_TRUE(mat::is_regular(F, mat::scale(F, m, c)));
  }
}

TEST(Elimination, DetAndInverse) {
  std::mt19937_64 rng(13);
  const FiniteField F(field_spec_for_order(9));
  for (int trial = 0; trial < 200; ++trial) {
    const Matrix a = random_matrix(F, 3, rng), b = random_matrix(F, 3, rng);
    ASSERT_EQ(mat::det(F, mat::mul(F, a, b)), F.mul(mat::det(F, a), mat::det(F, b)));
    const auto inv = mat::inverse(F, a);
    ASSERT_EQ(inv.has_value(), mat::det(F, a) != 0);
    if (inv) {
      ASSERT_TRUE(mat::is_identity(mat::mul(F, a, *inv)));
    }
  }
  const Matrix p = mat::permutation({1, 2, 0});
  EXPECT_EQ(mat::apply(F, p, {1, 0, 0}), (std::vector<Elem>{0, 1, 0}));
  EXPECT_EQ(mat::det(F, p), 1u);
}
