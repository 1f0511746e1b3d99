#include <gtest/gtest.h>

#include <functional>
#include <set>

#include "modp_lab/feasibility.hpp"

using namespace modp;

namespace {

ResidualRep rep(i64 p, std::initializer_list<std::pair<int, i64>> items) {
  std::vector<InducedSummand> ss;
  for (auto [d, k] : items) ss.emplace_back(p, d, k);
  return ResidualRep(p, std::move(ss));
}

// Attainable set through the Lemma formula applied to the Breuil data of
// each profile, over a brute-force (x, y) box.
std::set<i64> attainable_via_lemma(const TameParams& tp, i64 r, const std::vector<i64>& allowed) {
  std::set<i64> out;
  const auto d = static_cast<std::size_t>(tp.d());
  std::vector<i64> x(d), y(d);
  std::function<void(std::size_t)> rec = [&](std::size_t pos) {
    if (pos == 2 * d) {
      const Niveau1Profile prof{tp, r, x, y};
      if (!validate(prof)) out.insert(generic_fiber_exponent(from_profile(prof)).kappa());
      return;
    }
    if (pos < d) {
      for (i64 v : allowed) {
        x[pos] = v;
        rec(pos + 1);
      }
    } else {
      for (i64 v = 0; v <= r; ++v) {
        y[pos - d] = v;
        rec(pos + 1);
      }
    }
  };
  rec(0);
  return out;
}

std::vector<std::vector<i64>> subsets(i64 p, std::size_t max_size) {
  std::vector<std::vector<i64>> out;
  for (unsigned mask = 1; mask < (1u << (p - 1)); ++mask) {
    std::vector<i64> s;
    for (i64 x = 0; x <= p - 2; ++x)
      if (mask & (1u << x)) s.push_back(x);
    if (s.size() <= max_size) out.push_back(s);
  }
  return out;
}

}  // namespace

TEST(InertialType, Validation) {
  EXPECT_THROW(InertialType(7, {}), std::invalid_argument);
  EXPECT_THROW(InertialType(7, {6}), std::invalid_argument);
  EXPECT_THROW(InertialType(7, {-1}), std::invalid_argument);
  const InertialType t(7, {3, 0, 3});
  EXPECT_EQ(t.exponents(), (std::vector<i64>{0, 3, 3}));
  EXPECT_EQ(t.distinct(), (std::vector<i64>{0, 3}));
}

TEST(Attainable, Examples) {
  EXPECT_EQ(attainable_exponents(TameParams(5, 1), 0, InertialType(5, {2})), (std::vector<i64>{2}));
  EXPECT_EQ(attainable_exponents(TameParams(5, 1), 1, InertialType(5, {2})), (std::vector<i64>{2, 3}));
  const auto k = attainable_exponents(TameParams(5, 2), 1, InertialType(5, {1, 2}));
  EXPECT_TRUE(std::binary_search(k.begin(), k.end(), 16));
  EXPECT_THROW(attainable_exponents(TameParams(5, 1), 0, InertialType(7, {2})), std::invalid_argument);
}

TEST(Attainable, AgreesWithLemmaRoute) {
  for (i64 p : {3, 5, 7})
    for (int d = 1; d <= 3; ++d)
      for (i64 r = 0; r <= std::min<i64>(2, p - 2); ++r) {
        const TameParams tp(p, d);
        for (const auto& a : subsets(p, 3)) {
          const auto got = attainable_exponents(tp, r, InertialType(p, a));
          const auto want = attainable_via_lemma(tp, r, a);
          ASSERT_EQ(std::set<i64>(got.begin(), got.end()), want) << p << " " << d << " " << r;
        }
      }
}

TEST(Attainable, MonotoneInR) {
  for (i64 p : {5, 7, 11})
    for (int d = 1; d <= 3; ++d) {
      const TameParams tp(p, d);
      for (const auto& a : subsets(p, 2)) {
        const InertialType t(p, a);
        for (i64 r = 0; r + 1 <= std::min<i64>(2, p - 2); ++r) {
          const auto lo = attainable_exponents(tp, r, t);
          const auto hi = attainable_exponents(tp, r + 1, t);
          ASSERT_TRUE(std::includes(hi.begin(), hi.end(), lo.begin(), lo.end()));
        }
      }
    }
}

TEST(Attainable, FrobeniusStable) {
  const TameParams tp(7, 3);
  const auto k = attainable_exponents(tp, 1, InertialType(7, {0, 2, 5}));
  const std::set<i64> set(k.begin(), k.end());
  for (i64 x : k) EXPECT_TRUE(set.count(frobenius_twist(ExponentClass(tp, x)).kappa()));
}

TEST(Hypotheses, DetCheck) {
  const InertialType t(11, {0, 3, 7});
  // Expected det exponent (0+3+7+3) mod 10 = 3.
  const auto good = check_hypotheses({11, 3, 1, t, rep(11, {{2, 2}, {1, 1}})});
  EXPECT_EQ(det_inertia_exponent(rep(11, {{2, 2}, {1, 1}})), 3);
  EXPECT_TRUE(good[0].passed);
  EXPECT_EQ(good[0].name, "det");
  const auto bad = check_hypotheses({11, 3, 1, t, rep(11, {{2, 2}, {1, 2}})});
  EXPECT_FALSE(bad[0].passed);
}

TEST(Hypotheses, Bounds) {
  const auto at5 = check_hypotheses({5, 3, 1, InertialType(5, {0, 0, 0}), rep(5, {{3, 1}})});
  EXPECT_EQ(at5[2].name, "p-bound");
  EXPECT_TRUE(at5[2].passed);
  const auto at3 = check_hypotheses({3, 3, 1, InertialType(3, {0, 0, 0}), rep(3, {{3, 1}})});
  EXPECT_FALSE(at3[2].passed);
  const auto r2 = check_hypotheses({11, 3, 2, InertialType(11, {0, 0, 0}), rep(11, {{3, 1}})});
  EXPECT_EQ(r2[1].name, "r-bound");
  EXPECT_FALSE(r2[1].passed);
}

TEST(Hypotheses, BigSubquotientOnlyOnEdge) {
  const InertialType t(11, {0, 1, 2});
  const auto edge = check_hypotheses({11, 3, 1, t, rep(11, {{1, 0}, {1, 1}, {1, 5}})});
  EXPECT_EQ(edge[3].name, "big-subquotient");
  EXPECT_TRUE(edge[3].applicable);
  EXPECT_FALSE(edge[3].passed);
  const auto below = check_hypotheses({11, 3, 0, t, rep(11, {{1, 0}, {1, 1}, {1, 5}})});
  EXPECT_FALSE(below[3].applicable);
  EXPECT_TRUE(below[3].passed);
  const auto diag = check_hypotheses({11, 3, 1, t, rep(11, {{1, 0}, {1, 1}, {1, 5}})}, {false});
  EXPECT_FALSE(diag[3].applicable);
  EXPECT_THROW(check_hypotheses({11, 2, 0, t, rep(11, {{1, 0}})}), std::invalid_argument);
}

TEST(Verdict, Kinds) {
  const InertialType t(11, {0, 3, 7});
  const auto ok = theorem_verdict({11, 3, 1, t, rep(11, {{2, 2}, {1, 1}})});
  EXPECT_EQ(ok.kind, Verdict::Kind::predicts_not_regular);
  const auto det = theorem_verdict({11, 3, 1, t, rep(11, {{2, 2}, {1, 2}})});
  EXPECT_EQ(det.kind, Verdict::Kind::not_applicable);
  EXPECT_EQ(det.failed, (std::vector<std::string>{"det"}));
  const auto rb = theorem_verdict({11, 3, 2, t, rep(11, {{2, 2}, {1, 1}})});
  EXPECT_EQ(rb.failed, (std::vector<std::string>{"r-bound"}));
}

TEST(Compositions, PartitionsOfN) {
  EXPECT_EQ(niveau_compositions(3), (std::vector<std::vector<int>>{{3}, {2, 1}, {1, 1, 1}}));
  EXPECT_EQ(niveau_compositions(4).size(), 5u);
  EXPECT_EQ(all_types(7, 3).size(), 56u);
  EXPECT_EQ(all_types(11, 3).size(), 220u);
}

struct Frozen {
  i64 p, r, candidates, applicable;
};

// Candidate counts cross-checked against an independent script; applicable
// counts are recomputed by the brute-force oracle below.
TEST(ExhaustiveVerify, ZeroCounterexamplesWithFrozenCounts) {
  const Frozen table[] = {{7, 0, 326, 48},     {7, 1, 2720, 240},   {11, 0, 1570, 140},
                          {11, 1, 14760, 720}, {13, 0, 2740, 204}, {13, 1, 26536, 1056}};
  for (const auto& f : table) {
    const auto rep = exhaustive_verify(f.p, 3, f.r, {});
    EXPECT_TRUE(rep.counterexamples.empty()) << f.p << " " << f.r;
    EXPECT_EQ(rep.reps_checked, f.candidates);
    EXPECT_EQ(rep.reps_applicable, f.applicable);
    EXPECT_EQ(rep.types_checked, static_cast<i64>(all_types(f.p, 3).size()));
  }
}

// Independent count: all multisets of canonical primitive summands, each
// attainable via the Lemma route, filtered by hypotheses written out here.
TEST(ExhaustiveVerify, ApplicableCountMatchesBruteForce) {
  for (i64 p : {7, 11})
    for (i64 r : {0, 1}) {
      i64 applicable = 0, regular = 0;
      for (const auto& type : all_types(p, 3)) {
        std::vector<std::pair<int, i64>> cands;  // (d, kappa)
        for (int d = 1; d <= 3; ++d) {
          const TameParams tp(p, d);
          const auto att = attainable_via_lemma(tp, r, type.distinct());
          for (i64 k = 0; k < tp.e(); ++k) {
            const ExponentClass x(tp, k);
            if (is_primitive(x) && canonical_orbit_representative(x).kappa() == k && att.count(k)) cands.emplace_back(d, k);
          }
        }
        i64 sum_a = 0;
        for (i64 a : type.exponents()) sum_a += a;
        const i64 want_det = (sum_a + 3) % (p - 1);
        // Choose a nondecreasing index sequence with total niveau 3.
        std::function<void(std::size_t, int, std::vector<std::pair<int, i64>>&)> rec =
            [&](std::size_t from, int dim, std::vector<std::pair<int, i64>>& chosen) {
              if (dim == 3) {
                i64 det = 0;
                bool big = false;
                std::vector<i64> ex;
                for (auto [d, k] : chosen) {
                  det += k;
                  big = big || d > 1;
                  for (int i = 0; i < d; ++i, k /= p) ex.push_back(k % p);
                }
                if (det % (p - 1) != want_det) return;
                if (r == 1 && !big) return;
                ++applicable;
                std::set<i64> cells;
                for (i64 a : ex)
                  for (i64 s = 0; s <= r + 1; ++s) cells.insert((a + s) % p);
                if (cells.size() == ex.size() * static_cast<std::size_t>(r + 2)) ++regular;
                return;
              }
              for (std::size_t i = from; i < cands.size(); ++i) {
                if (dim + cands[i].first > 3) continue;
                chosen.push_back(cands[i]);
                rec(i, dim + cands[i].first, chosen);
                chosen.pop_back();
              }
            };
        std::vector<std::pair<int, i64>> chosen;
        rec(0, 0, chosen);
      }
      const auto report = exhaustive_verify(p, 3, r, {});
      EXPECT_EQ(report.reps_applicable, applicable) << p << " " << r;
      EXPECT_EQ(regular, 0) << p << " " << r;
    }
}

TEST(ExhaustiveVerify, DiagnosticModeFindsCharacterSums) {
  VerifyOptions opts;
  opts.big_subquotient_filter = false;
  const auto rep = exhaustive_verify(11, 3, 1, {}, opts);
  EXPECT_TRUE(rep.diagnostic);
  EXPECT_EQ(rep.counterexamples.size(), 16u);
  for (const auto& c : rep.counterexamples) {
    EXPECT_TRUE(is_r_regular(c.rep, 1));
    EXPECT_FALSE(has_big_subquotient(c.rep));
    const TheoremInstance inst{11, 3, 1, InertialType(11, c.type), c.rep};
    EXPECT_EQ(theorem_verdict(inst, {false}).kind, Verdict::Kind::predicts_not_regular);
    EXPECT_EQ(theorem_verdict(inst).failed, (std::vector<std::string>{"big-subquotient"}));
  }
}

TEST(ExhaustiveVerify, DeterministicAcrossWorkers) {
  VerifyOptions one, many;
  one.big_subquotient_filter = many.big_subquotient_filter = false;
  many.workers = 8;
  const auto a = exhaustive_verify(13, 3, 1, {}, one);
  const auto b = exhaustive_verify(13, 3, 1, {}, many);
  EXPECT_EQ(a.reps_checked, b.reps_checked);
  EXPECT_EQ(a.reps_applicable, b.reps_applicable);
  ASSERT_EQ(a.counterexamples.size(), b.counterexamples.size());
  for (std::size_t i = 0; i < a.counterexamples.size(); ++i) {
    EXPECT_EQ(a.counterexamples[i].type, b.counterexamples[i].type);
    EXPECT_EQ(a.counterexamples[i].rep, b.counterexamples[i].rep);
  }
}

TEST(ExhaustiveVerify, OrbitDedupOnlyRemovesConjugates) {
  VerifyOptions raw;
  raw.dedup_orbits = false;
  for (i64 r : {0, 1}) {
    const auto a = exhaustive_verify(7, 3, r, {});
    const auto b = exhaustive_verify(7, 3, r, {}, raw);
    // With r = 0 no primitive constituent of niveau > 1 is attainable.
    if (r == 0)
      EXPECT_EQ(b.reps_checked, a.reps_checked);
    else
      EXPECT_GT(b.reps_checked, a.reps_checked);
    EXPECT_TRUE(b.counterexamples.empty());
  }
}

TEST(ExhaustiveVerify, SingleTypeAndErrors) {
  const auto one = exhaustive_verify(11, 3, 1, InertialType(11, {0, 3, 7}));
  EXPECT_EQ(one.types_checked, 1);
  EXPECT_TRUE(one.counterexamples.empty());
  try {
    exhaustive_verify(3, 3, 1, {});
    FAIL();
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("p-bound hypothesis unsatisfiable"), std::string::npos);
  }
  EXPECT_THROW(exhaustive_verify(11, 3, 2, {}), std::invalid_argument);
  EXPECT_THROW(exhaustive_verify(11, 3, 1, InertialType(11, {0, 1})), std::invalid_argument);
  VerifyOptions tiny;
  tiny.budget = 1;
  try {
    exhaustive_verify(11, 3, 1, {}, tiny);
    FAIL();
  } catch (const BudgetExceeded& e) {
    EXPECT_EQ(e.budget(), 1);
    EXPECT_GT(e.candidates(), 1);
  }
}

TEST(ExhaustiveVerify, OtherDimensions) {
  EXPECT_TRUE(exhaustive_verify(5, 2, 0, {}).counterexamples.empty());
  EXPECT_TRUE(exhaustive_verify(11, 4, 1, {}).counterexamples.empty());
}
