#pragma once

// Decision engine for generic vanishing in small Hodge-Tate weights.
//
// For a tame inertial type built from exponents a_1..a_n and Hodge-Tate
// weights in [0, r], the inertia exponent of every irreducible constituent of
// the reduction is attainable by a niveau-1 rank-one Breuil module whose k_i
// are drawn from s * {a_j}. exhaustive_verify enumerates every residual
// representation assembled from attainable constituents, keeps those meeting
// the hypotheses, and confirms none of them is r-regular.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "modp_lab/breuil_rank_one.hpp"
#include "modp_lab/residual_reps.hpp"
#include "modp_lab/tame_arith.hpp"

namespace modp {

inline constexpr i64 kDefaultInstanceBudget = 10'000'000;

class InertialType {
 public:
  InertialType(i64 p, std::vector<i64> a_vec) : p_(p), a_(std::move(a_vec)) {
    if (a_.empty()) throw std::invalid_argument("inertial type needs at least one exponent");
    for (i64 a : a_)
      if (a < 0 || a > p - 2)
        throw std::invalid_argument("type exponent " + std::to_string(a) + " outside [0, p-2]");
    std::sort(a_.begin(), a_.end());
  }

  i64 p() const noexcept { return p_; }
  int size() const noexcept { return static_cast<int>(a_.size()); }
  const std::vector<i64>& exponents() const noexcept { return a_; }
  std::vector<i64> distinct() const {
    auto out = a_;
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  friend bool operator==(const InertialType&, const InertialType&) = default;
  friend auto operator<=>(const InertialType& a, const InertialType& b) { return a.a_ <=> b.a_; }

 private:
  i64 p_;
  std::vector<i64> a_;  // sorted multiset
};

/// Inertia exponents kappa of niveau-d characters reachable from a rank-one
/// object with k_i in s * type and jumps bounded by r. Sorted, unique.
inline std::vector<i64> attainable_exponents(const TameParams& params, i64 r, const InertialType& type) {
  if (type.p() != params.p()) throw std::invalid_argument("type and params disagree on p");
  std::vector<char> hit(static_cast<std::size_t>(params.e()), 0);
  for_each_profile(params, r, type.distinct(),
                   [&](const Niveau1Profile& prof) { hit[static_cast<std::size_t>(profile_kappa(prof).kappa())] = 1; });
  std::vector<i64> out;
  for (std::size_t k = 0; k < hit.size(); ++k)
    if (hit[k]) out.push_back(static_cast<i64>(k));
  return out;
}

struct TheoremInstance {
  i64 p;
  int n;
  i64 r;
  InertialType type;
  ResidualRep rep;
};

struct HypothesisCheck {
  std::string name;
  bool passed;
  bool applicable;
  std::string reason;
};

struct HypothesisOptions {
  // Diagnostic switch: when false the extra hypothesis for r = (n-1)/2 is
  // reported as not applicable instead of being enforced.
  bool require_big_subquotient = true;
};

inline std::vector<HypothesisCheck> check_hypotheses(const TheoremInstance& inst, HypothesisOptions opts = {}) {
  if (inst.rep.dimension() != inst.n || inst.type.size() != inst.n)
    throw std::invalid_argument("instance dimension mismatch: rep, type and n must agree");
  if (inst.rep.p() != inst.p || inst.type.p() != inst.p) throw std::invalid_argument("instance prime mismatch");
  if (inst.r < 0) throw std::invalid_argument("r must be non-negative");

  const i64 n = inst.n;
  const i64 tri = n * (n - 1) / 2;
  std::vector<HypothesisCheck> out;

  i64 sum_a = 0;
  for (i64 a : inst.type.exponents()) sum_a += a;
  const i64 want = (sum_a + tri) % (inst.p - 1);
  const i64 got = det_inertia_exponent(inst.rep);
  out.push_back({"det", got == want, true,
                 "det exponent " + std::to_string(got) + " vs expected (sum a + n(n-1)/2) mod (p-1) = " +
                     std::to_string(want)});

  out.push_back({"r-bound", 2 * inst.r <= n - 1, true,
                 "r=" + std::to_string(inst.r) + " must satisfy r <= (n-1)/2 = " + std::to_string(n - 1) + "/2"});

  out.push_back({"p-bound", inst.p > tri + 1, true,
                 "p=" + std::to_string(inst.p) + " must exceed n(n-1)/2 + 1 = " + std::to_string(tri + 1)});

  const bool on_edge = 2 * inst.r == n - 1;
  if (on_edge && opts.require_big_subquotient) {
    const bool big = has_big_subquotient(inst.rep);
    out.push_back({"big-subquotient", big, true,
                   big ? "some summand has dimension > 1" : "r = (n-1)/2 but every summand is a character"});
  } else {
    out.push_back({"big-subquotient", true, false,
                   on_edge ? "disabled (diagnostic mode)" : "only required when r = (n-1)/2"});
  }
  return out;
}

struct Verdict {
  enum class Kind { not_applicable, predicts_not_regular };
  Kind kind;
  std::vector<std::string> failed;
};

inline Verdict theorem_verdict(const TheoremInstance& inst, HypothesisOptions opts = {}) {
  Verdict v{Verdict::Kind::predicts_not_regular, {}};
  for (const auto& c : check_hypotheses(inst, opts))
    if (!c.passed) v.failed.push_back(c.name);
  if (!v.failed.empty()) v.kind = Verdict::Kind::not_applicable;
  return v;
}

class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(std::vector<i64> type, i64 candidates, i64 budget)
      : std::runtime_error("instance budget exceeded: type [" + join(type) + "] needs " + std::to_string(candidates) +
                           " candidate reps, budget is " + std::to_string(budget)),
        type_(std::move(type)),
        candidates_(candidates),
        budget_(budget) {}

  const std::vector<i64>& type() const noexcept { return type_; }
  i64 candidates() const noexcept { return candidates_; }
  i64 budget() const noexcept { return budget_; }

 private:
  static std::string join(const std::vector<i64>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
  }
  std::vector<i64> type_;
  i64 candidates_;
  i64 budget_;
};

struct VerifyOptions {
  i64 budget = kDefaultInstanceBudget;  // candidate reps per (p, type)
  bool big_subquotient_filter = true;
  bool dedup_orbits = true;
  unsigned workers = 1;
};

struct Counterexample {
  std::vector<i64> type;
  ResidualRep rep;
  std::vector<i64> exponents;
};

struct VerificationReport {
  i64 p;
  int n;
  i64 r;
  bool diagnostic = false;
  i64 types_checked = 0;
  i64 reps_checked = 0;     // candidates enumerated
  i64 reps_applicable = 0;  // candidates meeting every hypothesis
  std::vector<Counterexample> counterexamples;
  double elapsed_ms = 0;
};

/// Partitions of n into non-increasing parts, largest first.
inline std::vector<std::vector<int>> niveau_compositions(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int left, int cap) -> void {
    if (left == 0) {
      out.push_back(cur);
      return;
    }
    for (int d = std::min(left, cap); d >= 1; --d) {
      cur.push_back(d);
      self(self, left - d, d);
      cur.pop_back();
    }
  };
  rec(rec, n, n);
  return out;
}

/// Every multiset of n exponents from [0, p-2], lexicographic.
inline std::vector<InertialType> all_types(i64 p, int n) {
  std::vector<InertialType> out;
  std::vector<i64> cur(static_cast<std::size_t>(n), 0);
  for (;;) {
    out.emplace_back(p, cur);
    int pos = n - 1;
    while (pos >= 0 && cur[static_cast<std::size_t>(pos)] == p - 2) --pos;
    if (pos < 0) break;
    const i64 v = cur[static_cast<std::size_t>(pos)] + 1;
    for (int i = pos; i < n; ++i) cur[static_cast<std::size_t>(i)] = v;
  }
  return out;
}

namespace detail {

inline i64 multichoose(i64 items, i64 k) {
  // C(items + k - 1, k), saturating at a large sentinel.
  if (k == 0) return 1;
  if (items == 0) return 0;
  i128 acc = 1;
  for (i64 i = 1; i <= k; ++i) {
    acc = acc * (items + k - i) / i;
    if (acc > (static_cast<i128>(1) << 62)) return static_cast<i64>(1) << 62;
  }
  return static_cast<i64>(acc);
}

// Nondecreasing index vectors of length k over [0, items).
template <class F>
void for_each_multiset_index(std::size_t items, std::size_t k, F&& f) {
  if (k == 0) {
    f(std::vector<std::size_t>{});
    return;
  }
  if (items == 0) return;
  std::vector<std::size_t> idx(k, 0);
  for (;;) {
    f(static_cast<const std::vector<std::size_t>&>(idx));
    std::size_t pos = k;
    while (pos-- > 0 && idx[pos] + 1 == items) {
    }
    if (pos == static_cast<std::size_t>(-1)) return;
    const std::size_t v = idx[pos] + 1;
    for (std::size_t i = pos; i < k; ++i) idx[i] = v;
  }
}

struct TypeResult {
  i64 checked = 0;
  i64 applicable = 0;
  std::vector<Counterexample> counterexamples;
  std::exception_ptr error;
};

inline TypeResult verify_type(i64 p, int n, i64 r, const InertialType& type, const VerifyOptions& opts) {
  TypeResult res;
  // Candidate constituents per niveau.
  std::map<int, std::vector<i64>> pool;
  for (int d = 1; d <= n; ++d) {
    const TameParams tp(p, d);
    std::vector<i64> ks;
    for (i64 k : attainable_exponents(tp, r, type)) {
      const ExponentClass x(tp, k);
      if (!is_primitive(x)) continue;
      ks.push_back(opts.dedup_orbits ? canonical_orbit_representative(x).kappa() : k);
    }
    std::sort(ks.begin(), ks.end());
    ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
    pool[d] = std::move(ks);
  }

  const auto parts = niveau_compositions(n);
  i64 total = 0;
  for (const auto& part : parts) {
    i64 count = 1;
    for (std::size_t i = 0; i < part.size();) {
      std::size_t j = i;
      while (j < part.size() && part[j] == part[i]) ++j;
      count = std::min<i64>(count * detail::multichoose(static_cast<i64>(pool[part[i]].size()),
                                                        static_cast<i64>(j - i)),
                            static_cast<i64>(1) << 62);
      i = j;
    }
    total = std::min<i64>(total + count, static_cast<i64>(1) << 62);
  }
  if (total > opts.budget) throw BudgetExceeded(type.exponents(), total, opts.budget);

  const HypothesisOptions hopts{opts.big_subquotient_filter};
  for (const auto& part : parts) {
    // Group equal niveaus; each group picks a multiset of exponents.
    std::vector<std::pair<int, std::size_t>> groups;
    for (int d : part) {
      if (!groups.empty() && groups.back().first == d)
        ++groups.back().second;
      else
        groups.emplace_back(d, 1);
    }
    std::vector<std::vector<std::vector<std::size_t>>> choices(groups.size());
    for (std::size_t g = 0; g < groups.size(); ++g)
      for_each_multiset_index(pool[groups[g].first].size(), groups[g].second,
                              [&](const std::vector<std::size_t>& ix) { choices[g].push_back(ix); });
    if (std::any_of(choices.begin(), choices.end(), [](const auto& c) { return c.empty(); })) continue;

    std::vector<std::size_t> pick(groups.size(), 0);
    for (;;) {
      std::vector<InducedSummand> summands;
      for (std::size_t g = 0; g < groups.size(); ++g) {
        const int d = groups[g].first;
        for (std::size_t ix : choices[g][pick[g]]) summands.emplace_back(p, d, pool[d][ix]);
      }
      ResidualRep rep(p, std::move(summands));
      ++res.checked;
      const TheoremInstance inst{p, n, r, type, rep};
      const auto verdict = theorem_verdict(inst, hopts);
      if (verdict.kind == Verdict::Kind::predicts_not_regular) {
        ++res.applicable;
        if (is_r_regular(rep, r)) res.counterexamples.push_back({type.exponents(), rep, rep_exponents(rep)});
      }
      std::size_t pos = groups.size();
      while (pos-- > 0) {
        if (pick[pos] + 1 < choices[pos].size()) {
          ++pick[pos];
          break;
        }
        pick[pos] = 0;
      }
      if (pos == static_cast<std::size_t>(-1)) break;
    }
  }
  return res;
}

inline bool counterexample_less(const Counterexample& a, const Counterexample& b) {
  if (a.type != b.type) return a.type < b.type;
  const auto& sa = a.rep.summands();
  const auto& sb = b.rep.summands();
  return std::lexicographical_compare(sa.begin(), sa.end(), sb.begin(), sb.end(),
                                      [](const auto& x, const auto& y) { return canonical_less(x, y); });
}

}  // namespace detail

/// Exhaustive check over `types` (all multisets of size n when empty).
/// Throws std::invalid_argument if the p- or r-bound hypotheses cannot hold
/// and BudgetExceeded when a type would need more candidates than allowed.
inline VerificationReport exhaustive_verify(i64 p, int n, i64 r, std::vector<InertialType> types,
                                            const VerifyOptions& opts = {}) {
  const auto t0 = std::chrono::steady_clock::now();
  if (n < 1 || n > kMaxNiveau) throw std::invalid_argument("n must lie in [1, " + std::to_string(kMaxNiveau) + "]");
  (void)TameParams(p, 1);
  const i64 tri = static_cast<i64>(n) * (n - 1) / 2;
  if (!(p > tri + 1))
    throw std::invalid_argument("p-bound hypothesis unsatisfiable: need p > n(n-1)/2 + 1 = " + std::to_string(tri + 1));
  if (r < 0 || 2 * r > n - 1)
    throw std::invalid_argument("r-bound hypothesis unsatisfiable: need 0 <= r <= (n-1)/2");
  if (types.empty()) types = all_types(p, n);
  for (const auto& t : types)
    if (t.p() != p || t.size() != n) throw std::invalid_argument("inertial type must have n entries over the same p");
  std::sort(types.begin(), types.end());

  std::vector<detail::TypeResult> results(types.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < types.size(); i = next++) {
      try {
        results[i] = detail::verify_type(p, n, r, types[i], opts);
      } catch (...) {
        results[i].error = std::current_exception();
      }
    }
  };
  const unsigned nworkers = std::max(1u, std::min<unsigned>(opts.workers, static_cast<unsigned>(types.size())));
  if (nworkers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < nworkers; ++w) pool.emplace_back(worker);
  }

  VerificationReport rep;
  rep.p = p;
  rep.n = n;
  rep.r = r;
  rep.diagnostic = !opts.big_subquotient_filter;
  for (auto& res : results) {
    if (res.error) std::rethrow_exception(res.error);
    ++rep.types_checked;
    rep.reps_checked += res.checked;
    rep.reps_applicable += res.applicable;
    for (auto& c : res.counterexamples) rep.counterexamples.push_back(std::move(c));
  }
  std::sort(rep.counterexamples.begin(), rep.counterexamples.end(), detail::counterexample_less);
  rep.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

inline VerificationReport exhaustive_verify(i64 p, int n, i64 r, const InertialType& type,
                                            const VerifyOptions& opts = {}) {
  return exhaustive_verify(p, n, r, std::vector<InertialType>{type}, opts);
}

}  // namespace modp
