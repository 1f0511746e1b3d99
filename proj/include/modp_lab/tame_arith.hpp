#pragma once

// Exponent bookkeeping for tame inertia characters.
//
// A character of niveau d is written omega_d^kappa with kappa taken modulo
// e = p^d - 1. Everything here is exact integer arithmetic on canonical
// residues; no character is ever evaluated.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "modp_lab/errors.hpp"

namespace modp {

using i64 = std::int64_t;
using i128 = __int128;

inline constexpr i64 kMaxPrime = 97;
inline constexpr int kMaxNiveau = 6;

constexpr bool is_prime(i64 n) {
  if (n < 2) return false;
  for (i64 f = 2; f * f <= n; ++f)
    if (n % f == 0) return false;
  return true;
}

constexpr i64 ipow(i64 base, int exp) {
  i64 out = 1;
  for (int i = 0; i < exp; ++i) out *= base;
  return out;
}

// Mathematical residue in [0, m).
constexpr i64 mod_floor(i64 a, i64 m) {
  const i64 r = a % m;
  return r < 0 ? r + m : r;
}

/// The arithmetic frame (p, d) with e = p^d - 1 and s = 1 + p + ... + p^(d-1).
///
/// Construction rejects anything outside 3 <= p <= 97 (odd prime) and
/// 1 <= d <= 6, which keeps every intermediate of the rank-one formulas inside
/// 128-bit range.
class TameParams {
 public:
  TameParams(i64 p, int d) : p_(p), d_(d) {
    if (p < 3 || p > kMaxPrime || !is_prime(p))
      throw std::invalid_argument("p must be an odd prime <= " + std::to_string(kMaxPrime) +
                                  " (got " + std::to_string(p) + ")");
    if (d < 1 || d > kMaxNiveau)
      throw std::invalid_argument("niveau d must lie in [1, " + std::to_string(kMaxNiveau) + "] (got " +
                                  std::to_string(d) + ")");
    e_ = ipow(p, d) - 1;
    s_ = e_ / (p - 1);
  }

  i64 p() const noexcept { return p_; }
  int d() const noexcept { return d_; }
  i64 e() const noexcept { return e_; }
  i64 s() const noexcept { return s_; }

  friend bool operator==(const TameParams&, const TameParams&) = default;

 private:
  i64 p_;
  int d_;
  i64 e_ = 0;
  i64 s_ = 0;
};

/// kappa in [0, e) for a fixed frame.
class ExponentClass {
 public:
  ExponentClass(const TameParams& params, i64 kappa) : params_(params), kappa_(kappa) {
    if (kappa < 0 || kappa >= params.e())
      throw std::out_of_range("exponent " + std::to_string(kappa) + " outside [0, " +
                              std::to_string(params.e()) + ")");
  }

  static ExponentClass reduce(const TameParams& params, i64 any) {
    return ExponentClass(params, mod_floor(any, params.e()));
  }

  const TameParams& params() const noexcept { return params_; }
  i64 kappa() const noexcept { return kappa_; }

  friend bool operator==(const ExponentClass&, const ExponentClass&) = default;

 private:
  TameParams params_;
  i64 kappa_;
};

using DigitVector = std::vector<i64>;

/// Base-p digits [a_0, ..., a_(d-1)] with sum a_i p^i = kappa. Since
/// kappa < p^d - 1 the all-(p-1) vector never occurs and 0 maps to all zeros.
inline DigitVector digits(const ExponentClass& x) {
  const TameParams& tp = x.params();
  DigitVector out(static_cast<std::size_t>(tp.d()));
  i64 k = x.kappa();
  for (auto& a : out) {
    a = k % tp.p();
    k /= tp.p();
  }
  return out;
}

inline ExponentClass from_digits(const TameParams& params, const DigitVector& ds) {
  if (ds.size() != static_cast<std::size_t>(params.d()))
    throw std::invalid_argument("digit vector length does not match niveau");
  i128 acc = 0;
  for (std::size_t i = ds.size(); i-- > 0;) {
    if (ds[i] < 0 || ds[i] >= params.p()) throw std::out_of_range("digit outside [0, p-1]");
    acc = acc * params.p() + ds[i];
  }
  return ExponentClass(params, static_cast<i64>(acc % params.e()));
}

inline ExponentClass frobenius_twist(const ExponentClass& x) {
  const TameParams& tp = x.params();
  return ExponentClass(tp, static_cast<i64>((static_cast<i128>(x.kappa()) * tp.p()) % tp.e()));
}

/// True iff no proper divisor d' of d has p^d' * kappa == kappa (mod e),
/// i.e. the induced representation is irreducible.
inline bool is_primitive(const ExponentClass& x) {
  const TameParams& tp = x.params();
  for (int dp = 1; dp < tp.d(); ++dp) {
    if (tp.d() % dp != 0) continue;
    const i128 moved = static_cast<i128>(ipow(tp.p(), dp)) * x.kappa() % tp.e();
    if (moved == x.kappa()) return false;
  }
  return true;
}

// omega_d^(kappa * s) = omega^(kappa mod (p-1)).
inline i64 norm_to_niveau1(const ExponentClass& x) { return x.kappa() % (x.params().p() - 1); }

/// Smallest element of the Frobenius orbit {kappa, p kappa, p^2 kappa, ...}.
inline ExponentClass canonical_orbit_representative(const ExponentClass& x) {
  ExponentClass best = x;
  ExponentClass cur = x;
  for (int i = 1; i < x.params().d(); ++i) {
    cur = frobenius_twist(cur);
    if (cur.kappa() < best.kappa()) best = cur;
  }
  return best;
}

}  // namespace modp
