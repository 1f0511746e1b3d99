#pragma once

// Small finite fields F_q, q = l^m <= 2^20.
//
// An element is encoded as the integer sum c_i l^i of its coefficient vector
// over F_l in the basis 1, x, x^2, ... modulo the field modulus. The encoding
// is canonical, so equal elements compare and hash equal bit for bit.
// Multiplication goes through discrete log / antilog tables built once per
// field.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace modp {

using Elem = std::uint32_t;

inline constexpr std::uint64_t kMaxFieldOrder = 1u << 20;
inline constexpr std::uint64_t kBuiltinModulusLimit = 1u << 10;

namespace detail {

// Dense polynomials over F_l with small integer coefficients, low to high.
using PrimePoly = std::vector<std::uint32_t>;

inline void trim(PrimePoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline std::uint32_t inv_mod_prime(std::uint32_t a, std::uint32_t l) {
  std::uint64_t r = 1, b = a % l;
  for (std::uint32_t e = l - 2; e; e >>= 1) {
    if (e & 1) r = r * b % l;
    b = b * b % l;
  }
  return static_cast<std::uint32_t>(r);
}

inline PrimePoly prime_poly_mod(PrimePoly a, const PrimePoly& m, std::uint32_t l) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  const std::uint32_t lead_inv = inv_mod_prime(m.back(), l);
  while (a.size() > dm) {
    const std::uint64_t c = static_cast<std::uint64_t>(a.back()) * lead_inv % l;
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i)
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + (l - (c * m[i]) % l)) % l);
    trim(a);
  }
  return a;
}

inline bool is_irreducible_over_prime(const PrimePoly& f, std::uint32_t l) {
  const std::size_t deg = f.size() - 1;
  if (deg == 0) return false;
  if (deg == 1) return true;
  // Trial division by every monic polynomial of degree 1..deg/2.
  for (std::size_t dg = 1; dg <= deg / 2; ++dg) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < dg; ++i) count *= l;
    for (std::uint64_t code = 0; code < count; ++code) {
      PrimePoly g(dg + 1, 0);
      std::uint64_t c = code;
      for (std::size_t i = 0; i < dg; ++i) {
        g[i] = static_cast<std::uint32_t>(c % l);
        c /= l;
      }
      g[dg] = 1;
      if (prime_poly_mod(f, g, l).empty()) return false;
    }
  }
  return true;
}

inline bool is_prime_u32(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t f = 2; f * f <= n; ++f)
    if (n % f == 0) return false;
  return true;
}

}  // namespace detail

/// Characteristic, degree and monic irreducible modulus (low-to-high).
struct FieldSpec {
  std::uint32_t characteristic = 0;
  int degree = 0;
  std::vector<std::uint32_t> modulus;

  std::uint64_t order() const {
    std::uint64_t q = 1;
    for (int i = 0; i < degree; ++i) q *= characteristic;
    return q;
  }

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

/// First monic irreducible of the given degree, ordering candidates by the
/// integer encoding of their lower coefficients. Only offered for q <= 2^10;
/// bigger fields need an explicit modulus.
inline std::vector<std::uint32_t> builtin_modulus(std::uint32_t l, int m) {
  if (!detail::is_prime_u32(l)) throw std::invalid_argument("field characteristic must be prime");
  if (m < 1) throw std::invalid_argument("field degree must be >= 1");
  std::uint64_t q = 1;
  for (int i = 0; i < m; ++i) q *= l;
  if (q > kBuiltinModulusLimit)
    throw std::invalid_argument("no built-in modulus for q=" + std::to_string(q) + "; supply one explicitly");
  if (m == 1) return {0, 1};
  for (std::uint64_t code = 0; code < q; ++code) {
    detail::PrimePoly f(static_cast<std::size_t>(m) + 1, 0);
    std::uint64_t c = code;
    for (int i = 0; i < m; ++i) {
      f[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(c % l);
      c /= l;
    }
    f[static_cast<std::size_t>(m)] = 1;
    if (f[0] != 0 && detail::is_irreducible_over_prime(f, l)) return f;
  }
  throw std::logic_error("no irreducible polynomial found");
}

inline FieldSpec make_field_spec(std::uint32_t l, int m) { return FieldSpec{l, m, builtin_modulus(l, m)}; }

/// Field for a prime power q, using the built-in modulus.
inline FieldSpec field_spec_for_order(std::uint64_t q) {
  if (q < 2) throw std::invalid_argument("field order must be a prime power >= 2");
  std::uint64_t l = 2;
  while (q % l != 0) ++l;
  int m = 0;
  std::uint64_t rest = q;
  while (rest % l == 0) {
    rest /= l;
    ++m;
  }
  if (rest != 1) throw std::invalid_argument("q=" + std::to_string(q) + " is not a prime power");
  return make_field_spec(static_cast<std::uint32_t>(l), m);
}

class FiniteField {
 public:
  explicit FiniteField(FieldSpec spec) : spec_(std::move(spec)) {
    const std::uint32_t l = spec_.characteristic;
    if (!detail::is_prime_u32(l)) throw std::invalid_argument("field characteristic must be prime");
    if (spec_.degree < 1) throw std::invalid_argument("field degree must be >= 1");
    const std::uint64_t q = spec_.order();
    if (q > kMaxFieldOrder) throw std::invalid_argument("field order exceeds 2^20");
    if (spec_.modulus.size() != static_cast<std::size_t>(spec_.degree) + 1 || spec_.modulus.back() != 1)
      throw std::invalid_argument("modulus must be monic of the stated degree");
    for (auto c : spec_.modulus)
      if (c >= l) throw std::invalid_argument("modulus coefficients must lie in [0, char)");
    if (!detail::is_irreducible_over_prime(spec_.modulus, l))
      throw std::invalid_argument("modulus is not irreducible over the prime field");
    q_ = static_cast<std::uint32_t>(q);
    build_tables();
  }

  const FieldSpec& spec() const noexcept { return spec_; }
  std::uint32_t characteristic() const noexcept { return spec_.characteristic; }
  int degree() const noexcept { return spec_.degree; }
  std::uint32_t order() const noexcept { return q_; }
  /// Generator of the multiplicative group used for the log tables.
  Elem primitive() const noexcept { return exp_[1]; }

  Elem zero() const noexcept { return 0; }
  Elem one() const noexcept { return 1; }

  Elem from_int(std::int64_t v) const noexcept {
    const auto l = static_cast<std::int64_t>(spec_.characteristic);
    return static_cast<Elem>(((v % l) + l) % l);
  }

  Elem add(Elem a, Elem b) const noexcept {
    const std::uint32_t l = spec_.characteristic;
    if (spec_.degree == 1) return (a + b) % l;
    if (l == 2) return a ^ b;
    Elem out = 0, place = 1;
    while (a || b) {
      out += place * (((a % l) + (b % l)) % l);
      a /= l;
      b /= l;
      place *= l;
    }
    return out;
  }

  Elem neg(Elem a) const noexcept {
    const std::uint32_t l = spec_.characteristic;
    if (spec_.degree == 1) return a == 0 ? 0 : l - a;
    if (l == 2) return a;
    Elem out = 0, place = 1;
    while (a) {
      out += place * ((l - a % l) % l);
      a /= l;
      place *= l;
    }
    return out;
  }

  Elem sub(Elem a, Elem b) const noexcept { return add(a, neg(b)); }

  Elem mul(Elem a, Elem b) const noexcept {
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }

  Elem inv(Elem a) const {
    if (a == 0) throw std::domain_error("inverse of zero");
    return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
  }

  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

  Elem pow(Elem a, std::int64_t e) const {
    if (a == 0) {
      if (e == 0) return 1;
      if (e < 0) throw std::domain_error("negative power of zero");
      return 0;
    }
    const std::int64_t n = q_ - 1;
    const std::int64_t k = ((static_cast<std::int64_t>(log_[a]) * (e % n)) % n + n) % n;
    return exp_[static_cast<std::size_t>(k)];
  }

  /// Discrete log base primitive(); undefined for 0.
  std::uint32_t log(Elem a) const {
    if (a == 0) throw std::domain_error("log of zero");
    return log_[a];
  }

  /// Frobenius x -> x^l.
  Elem frobenius(Elem a) const { return pow(a, spec_.characteristic); }

  /// Coefficient vector over the prime field, length = degree.
  std::vector<std::uint32_t> coefficients(Elem a) const {
    std::vector<std::uint32_t> out(static_cast<std::size_t>(spec_.degree));
    for (auto& c : out) {
      c = a % spec_.characteristic;
      a /= spec_.characteristic;
    }
    return out;
  }

  Elem from_coefficients(const std::vector<std::int64_t>& cs) const {
    if (cs.size() > static_cast<std::size_t>(spec_.degree))
      throw std::invalid_argument("coefficient vector longer than field degree");
    Elem out = 0;
    for (std::size_t i = cs.size(); i-- > 0;) out = out * spec_.characteristic + from_int(cs[i]);
    return out;
  }

 private:
  // Multiplication of encoded elements via the polynomial representation;
  // only used to build the tables.
  Elem slow_mul(Elem a, Elem b) const {
    const std::uint32_t l = spec_.characteristic;
    const auto m = static_cast<std::size_t>(spec_.degree);
    detail::PrimePoly pa(m), pb(m), prod(2 * m, 0);
    for (std::size_t i = 0; i < m; ++i) {
      pa[i] = a % l;
      a /= l;
      pb[i] = b % l;
      b /= l;
    }
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + static_cast<std::uint64_t>(pa[i]) * pb[j]) % l);
    auto red = detail::prime_poly_mod(std::move(prod), spec_.modulus, l);
    Elem out = 0;
    for (std::size_t i = red.size(); i-- > 0;) out = out * l + red[i];
    return out;
  }

  void build_tables() {
    const std::uint32_t n = q_ - 1;
    std::vector<std::uint32_t> primes;
    for (std::uint32_t f = 2, rest = n; rest > 1; ++f) {
      if (rest % f == 0) {
        primes.push_back(f);
        while (rest % f == 0) rest /= f;
      }
    }
    auto slow_pow = [&](Elem a, std::uint32_t e) {
      Elem r = 1;
      while (e) {
        if (e & 1) r = slow_mul(r, a);
        a = slow_mul(a, a);
        e >>= 1;
      }
      return r;
    };
    Elem g = 0;
    for (Elem cand = 1; cand < q_; ++cand) {
      bool ok = true;
      for (auto f : primes)
        if (slow_pow(cand, n / f) == 1) {
          ok = false;
          break;
        }
      if (ok) {
        g = cand;
        break;
      }
    }
    if (q_ == 2) g = 1;
    exp_.assign(2 * static_cast<std::size_t>(n) + 1, 0);
    log_.assign(q_, 0);
    Elem x = 1;
    for (std::uint32_t i = 0; i < n; ++i) {
      exp_[i] = x;
      log_[x] = i;
      x = slow_mul(x, g);
    }
    for (std::uint32_t i = n; i < exp_.size(); ++i) exp_[i] = exp_[i - n];
  }

  FieldSpec spec_;
  std::uint32_t q_ = 0;
  std::vector<Elem> exp_;
  std::vector<std::uint32_t> log_;
};

}  // namespace modp
