#pragma once

// Rank-one Breuil modules with tame descent data, reduced to their exponent
// data (r_i, k_i), and the inertial character of their generic fiber.
//
// Two routes to the generic-fiber exponent are provided: the general formula
// on (r_i, k_i), and the shortcut on niveau-1 profiles (x_i, y_i). They are
// independent code paths and the test suite checks them against each other.

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "modp_lab/tame_arith.hpp"

namespace modp {

struct RankOneData {
  TameParams params;
  i64 r;                     // weight bound, 0 <= r <= p-2
  std::vector<i64> r_vec;    // filtration jumps, each in [0, e*r]
  std::vector<i64> k_vec;    // descent-data exponents, each in [0, e)
};

struct Niveau1Profile {
  TameParams params;
  i64 r;
  std::vector<i64> x_vec;  // each in [0, p-2]
  std::vector<i64> y_vec;  // each in [0, r]

  friend bool operator==(const Niveau1Profile&, const Niveau1Profile&) = default;
};

struct Violation {
  enum class Kind { weight_bound, length, r_range, k_range, chain };
  Kind kind;
  int index;  // offending position, -1 when not positional
  std::string message;
};

inline const char* to_string(Violation::Kind k) {
  switch (k) {
    case Violation::Kind::weight_bound: return "weight_bound";
    case Violation::Kind::length: return "length";
    case Violation::Kind::r_range: return "r_range";
    case Violation::Kind::k_range: return "k_range";
    case Violation::Kind::chain: return "chain";
  }
  return "unknown";
}

/// Checks, in order: weight bound, vector lengths, r_i ranges, k_i ranges,
/// then k_i == p (k_(i-1) + r_(i-1)) mod e for i = 0..d-1 (cyclic). Returns
/// the first failure.
inline std::optional<Violation> validate(const RankOneData& m) {
  const TameParams& tp = m.params;
  const i64 e = tp.e();
  const auto d = static_cast<std::size_t>(tp.d());
  if (m.r < 0 || m.r > tp.p() - 2)
    return Violation{Violation::Kind::weight_bound, -1,
                     "weight bound r=" + std::to_string(m.r) + " outside [0, p-2]"};
  if (m.r_vec.size() != d || m.k_vec.size() != d)
    return Violation{Violation::Kind::length, -1, "r_vec and k_vec must have length d"};
  for (std::size_t i = 0; i < d; ++i) {
    if (m.r_vec[i] < 0 || m.r_vec[i] > e * m.r)
      return Violation{Violation::Kind::r_range, static_cast<int>(i),
                       "r_" + std::to_string(i) + "=" + std::to_string(m.r_vec[i]) + " outside [0, e*r]"};
  }
  for (std::size_t i = 0; i < d; ++i) {
    if (m.k_vec[i] < 0 || m.k_vec[i] >= e)
      return Violation{Violation::Kind::k_range, static_cast<int>(i),
                       "k_" + std::to_string(i) + "=" + std::to_string(m.k_vec[i]) + " outside [0, e)"};
  }
  for (std::size_t i = 0; i < d; ++i) {
    const std::size_t prev = (i + d - 1) % d;
    const i64 expect = static_cast<i64>(static_cast<i128>(tp.p()) * (m.k_vec[prev] + m.r_vec[prev]) % e);
    if (expect != m.k_vec[i])
      return Violation{Violation::Kind::chain, static_cast<int>(i),
                       "chain violation at i=" + std::to_string(i) + ": p(k_" + std::to_string(prev) + "+r_" +
                           std::to_string(prev) + ") = " + std::to_string(expect) + " mod e, but k_" +
                           std::to_string(i) + "=" + std::to_string(m.k_vec[i])};
  }
  return std::nullopt;
}

/// kappa_0 = k_0 + p (r_0 p^(d-1) + r_1 p^(d-2) + ... + r_(d-1)) / e  mod e.
///
/// The chain condition forces e to divide the numerator; a nonzero remainder
/// means validate() let something through and is reported as invariant_error.
inline ExponentClass generic_fiber_exponent(const RankOneData& m) {
  if (auto v = validate(m)) throw std::invalid_argument("invalid rank-one data: " + v->message);
  const TameParams& tp = m.params;
  i128 weighted = 0;
  for (std::size_t i = 0; i < m.r_vec.size(); ++i) weighted = weighted * tp.p() + m.r_vec[i];
  const i128 numer = weighted * tp.p();
  if (numer % tp.e() != 0)
    throw invariant_error("generic fiber: e does not divide p * sum r_i p^(d-1-i)");
  const i128 kappa = (static_cast<i128>(m.k_vec[0]) + numer / tp.e()) % tp.e();
  return ExponentClass(tp, static_cast<i64>(kappa));
}

inline std::optional<Violation> validate(const Niveau1Profile& prof) {
  const TameParams& tp = prof.params;
  const auto d = static_cast<std::size_t>(tp.d());
  if (prof.r < 0 || prof.r > tp.p() - 2)
    return Violation{Violation::Kind::weight_bound, -1, "weight bound r outside [0, p-2]"};
  if (prof.x_vec.size() != d || prof.y_vec.size() != d)
    return Violation{Violation::Kind::length, -1, "x_vec and y_vec must have length d"};
  for (std::size_t i = 0; i < d; ++i) {
    if (prof.x_vec[i] < 0 || prof.x_vec[i] > tp.p() - 2)
      return Violation{Violation::Kind::k_range, static_cast<int>(i), "x_i outside [0, p-2]"};
    if (prof.y_vec[i] < 0 || prof.y_vec[i] > prof.r)
      return Violation{Violation::Kind::r_range, static_cast<int>(i), "y_i outside [0, r]"};
  }
  for (std::size_t i = 0; i < d; ++i) {
    const i64 ri = tp.s() * (prof.x_vec[(i + 1) % d] - prof.x_vec[i]) + tp.e() * prof.y_vec[i];
    if (ri < 0 || ri > tp.e() * prof.r)
      return Violation{Violation::Kind::r_range, static_cast<int>(i),
                       "r_" + std::to_string(i) + "=" + std::to_string(ri) + " outside [0, e*r]"};
  }
  return std::nullopt;
}

/// k_i = s x_i, r_i = s (x_(i+1) - x_i) + e y_i. A negative or oversized r_i
/// is a range error, never wrapped.
inline RankOneData from_profile(const Niveau1Profile& prof) {
  if (auto v = validate(prof)) throw std::out_of_range("profile invalid: " + v->message);
  const TameParams& tp = prof.params;
  const auto d = static_cast<std::size_t>(tp.d());
  RankOneData out{tp, prof.r, std::vector<i64>(d), std::vector<i64>(d)};
  for (std::size_t i = 0; i < d; ++i) {
    out.k_vec[i] = tp.s() * prof.x_vec[i];
    out.r_vec[i] = tp.s() * (prof.x_vec[(i + 1) % d] - prof.x_vec[i]) + tp.e() * prof.y_vec[i];
  }
  return out;
}

// (x_0 + y_0) + p^(d-1)(x_1 + y_1) + ... + p (x_(d-1) + y_(d-1))  mod e
inline ExponentClass profile_kappa(const Niveau1Profile& prof) {
  const TameParams& tp = prof.params;
  const int d = tp.d();
  i128 acc = prof.x_vec[0] + prof.y_vec[0];
  for (int i = 1; i < d; ++i)
    acc += static_cast<i128>(ipow(tp.p(), d - i)) * (prof.x_vec[static_cast<std::size_t>(i)] +
                                                     prof.y_vec[static_cast<std::size_t>(i)]);
  return ExponentClass(tp, static_cast<i64>(acc % tp.e()));
}

/// Visits every valid profile with x_i drawn from allowed_x and y_i in [0, r],
/// in lexicographic order on (x_vec, y_vec). allowed_x is deduplicated and
/// sorted first.
template <class Visitor>
void for_each_profile(const TameParams& params, i64 r, std::vector<i64> allowed_x, Visitor&& visit) {
  if (allowed_x.empty()) throw std::invalid_argument("allowed_x must be non-empty");
  if (r < 0 || r > params.p() - 2) throw std::invalid_argument("weight bound r outside [0, p-2]");
  std::sort(allowed_x.begin(), allowed_x.end());
  allowed_x.erase(std::unique(allowed_x.begin(), allowed_x.end()), allowed_x.end());
  for (i64 a : allowed_x)
    if (a < 0 || a > params.p() - 2) throw std::invalid_argument("allowed_x entries must lie in [0, p-2]");

  const auto d = static_cast<std::size_t>(params.d());
  const i64 e = params.e();
  const i64 s = params.s();
  std::vector<std::size_t> xi(d, 0);
  Niveau1Profile prof{params, r, std::vector<i64>(d), std::vector<i64>(d)};
  for (;;) {
    for (std::size_t i = 0; i < d; ++i) prof.x_vec[i] = allowed_x[xi[i]];
    // Each y_i is constrained only by its own jump, so the admissible y-range
    // per coordinate is computed once and the odometer runs inside it.
    std::vector<i64> ylo(d), yhi(d);
    bool feasible = true;
    for (std::size_t i = 0; i < d; ++i) {
      const i64 base = s * (prof.x_vec[(i + 1) % d] - prof.x_vec[i]);
      ylo[i] = 0;
      while (ylo[i] <= r && base + e * ylo[i] < 0) ++ylo[i];
      yhi[i] = r;
      while (yhi[i] >= 0 && base + e * yhi[i] > e * r) --yhi[i];
      if (ylo[i] > yhi[i]) feasible = false;
    }
    if (feasible) {
      for (std::size_t i = 0; i < d; ++i) prof.y_vec[i] = ylo[i];
      for (;;) {
        visit(static_cast<const Niveau1Profile&>(prof));
        std::size_t pos = d;
        while (pos-- > 0) {
          if (prof.y_vec[pos] < yhi[pos]) {
            ++prof.y_vec[pos];
            break;
          }
          prof.y_vec[pos] = ylo[pos];
        }
        if (pos == static_cast<std::size_t>(-1)) break;
      }
    }
    std::size_t pos = d;
    while (pos-- > 0) {
      if (xi[pos] + 1 < allowed_x.size()) {
        ++xi[pos];
        break;
      }
      xi[pos] = 0;
    }
    if (pos == static_cast<std::size_t>(-1)) break;
  }
}

inline std::vector<Niveau1Profile> enumerate_profiles(const TameParams& params, i64 r, std::vector<i64> allowed_x) {
  std::vector<Niveau1Profile> out;
  for_each_profile(params, r, std::move(allowed_x), [&](const Niveau1Profile& p) { out.push_back(p); });
  return out;
}

}  // namespace modp
