#pragma once

// Semisimple mod-p representations of G_Qp, modelled as multisets of
// inductions Ind omega_d^kappa. Only inertia data and niveau are kept;
// unramified twists play no role in anything computed here.

#include <algorithm>
#include <charconv>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "modp_lab/tame_arith.hpp"

namespace modp {

/// Ind from Q_(p^d) of a character with inertia omega_d^kappa; kappa must be
/// primitive so the induction is irreducible of dimension d.
class InducedSummand {
 public:
  explicit InducedSummand(const ExponentClass& kappa) : kappa_(kappa) {
    if (!is_primitive(kappa))
      throw std::invalid_argument("kappa=" + std::to_string(kappa.kappa()) + " is not primitive at niveau " +
                                  std::to_string(kappa.params().d()) + ": the induction is reducible");
  }
  InducedSummand(i64 p, int d, i64 kappa) : InducedSummand(ExponentClass(TameParams(p, d), kappa)) {}

  const TameParams& params() const noexcept { return kappa_.params(); }
  const ExponentClass& exponent() const noexcept { return kappa_; }
  int niveau() const noexcept { return kappa_.params().d(); }
  i64 kappa() const noexcept { return kappa_.kappa(); }

  friend bool operator==(const InducedSummand&, const InducedSummand&) = default;
  // Canonical summand order: niveau descending, then kappa ascending.
  friend bool canonical_less(const InducedSummand& a, const InducedSummand& b) {
    if (a.niveau() != b.niveau()) return a.niveau() > b.niveau();
    return a.kappa() < b.kappa();
  }

 private:
  ExponentClass kappa_;
};

class ResidualRep {
 public:
  ResidualRep(i64 p, std::vector<InducedSummand> summands) : p_(p), summands_(std::move(summands)) {
    if (summands_.empty()) throw std::invalid_argument("a representation needs at least one summand");
    for (const auto& s : summands_)
      if (s.params().p() != p_) throw std::invalid_argument("all summands must share the prime p");
  }

  i64 p() const noexcept { return p_; }
  const std::vector<InducedSummand>& summands() const noexcept { return summands_; }
  int dimension() const noexcept {
    int n = 0;
    for (const auto& s : summands_) n += s.niveau();
    return n;
  }

  ResidualRep canonicalized() const {
    auto sorted = summands_;
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return canonical_less(a, b); });
    return ResidualRep(p_, std::move(sorted));
  }

  friend bool operator==(const ResidualRep&, const ResidualRep&) = default;

 private:
  i64 p_;
  std::vector<InducedSummand> summands_;
};

inline std::vector<i64> summand_exponents(const InducedSummand& s) { return digits(s.exponent()); }

// Multiset union, in summand order.
inline std::vector<i64> rep_exponents(const ResidualRep& rep) {
  std::vector<i64> out;
  for (const auto& s : rep.summands()) {
    const auto ds = summand_exponents(s);
    out.insert(out.end(), ds.begin(), ds.end());
  }
  return out;
}

/// The residues a_i + k (0 <= k <= r+1) are pairwise distinct mod p.
inline bool is_r_regular(std::span<const i64> exponents, i64 p, i64 r) {
  if (r < 0) throw std::invalid_argument("r must be non-negative");
  const auto width = static_cast<std::size_t>(r + 2);
  if (exponents.size() * width > static_cast<std::size_t>(p)) return false;
  std::vector<char> seen(static_cast<std::size_t>(p), 0);
  for (i64 a : exponents) {
    for (i64 k = 0; k <= r + 1; ++k) {
      auto& slot = seen[static_cast<std::size_t>(mod_floor(a + k, p))];
      if (slot) return false;
      slot = 1;
    }
  }
  return true;
}

inline bool is_r_regular(const ResidualRep& rep, i64 r) {
  const auto ex = rep_exponents(rep);
  return is_r_regular(ex, rep.p(), r);
}

inline i64 det_inertia_exponent(const ResidualRep& rep) {
  i64 acc = 0;
  for (const auto& s : rep.summands()) acc += norm_to_niveau1(s.exponent());
  return acc % (rep.p() - 1);
}

inline bool has_big_subquotient(const ResidualRep& rep) {
  return std::any_of(rep.summands().begin(), rep.summands().end(), [](const auto& s) { return s.niveau() > 1; });
}

/// Tensor with omega^t: each kappa_i becomes kappa_i + s_i t.
inline ResidualRep twist_by_omega(const ResidualRep& rep, i64 t) {
  std::vector<InducedSummand> out;
  out.reserve(rep.summands().size());
  for (const auto& s : rep.summands()) {
    const auto& tp = s.params();
    out.emplace_back(ExponentClass::reduce(tp, s.kappa() + mod_floor(t, tp.p() - 1) * tp.s()));
  }
  return ResidualRep(rep.p(), std::move(out));
}

inline ResidualRep concatenate(const ResidualRep& a, const ResidualRep& b) {
  if (a.p() != b.p()) throw std::invalid_argument("cannot concatenate representations over different primes");
  auto ss = a.summands();
  ss.insert(ss.end(), b.summands().begin(), b.summands().end());
  return ResidualRep(a.p(), std::move(ss));
}

/// Parses "d:kappa(,d:kappa)*", e.g. "2:16,1:2". Whitespace is not accepted.
inline ResidualRep parse_rep(std::string_view text, i64 p) {
  auto parse_int = [&](std::string_view part) -> i64 {
    i64 v = 0;
    const auto* first = part.data();
    const auto* last = part.data() + part.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (part.empty() || ec != std::errc() || ptr != last)
      throw std::invalid_argument("malformed rep: expected integer, got '" + std::string(part) + "'");
    return v;
  };
  if (text.empty()) throw std::invalid_argument("malformed rep: empty string");
  std::vector<InducedSummand> summands;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::string_view item = text.substr(start, comma == std::string_view::npos ? text.npos : comma - start);
    const std::size_t colon = item.find(':');
    if (colon == std::string_view::npos)
      throw std::invalid_argument("malformed rep: summand '" + std::string(item) + "' is not d:kappa");
    const i64 d = parse_int(item.substr(0, colon));
    const i64 kappa = parse_int(item.substr(colon + 1));
    if (d < 1 || d > kMaxNiveau) throw std::invalid_argument("malformed rep: niveau out of range");
    summands.emplace_back(p, static_cast<int>(d), kappa);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return ResidualRep(p, std::move(summands));
}

inline std::string format_rep(const ResidualRep& rep) {
  std::string out;
  for (const auto& s : rep.summands()) {
    if (!out.empty()) out += ',';
    out += std::to_string(s.niveau()) + ":" + std::to_string(s.kappa());
  }
  return out;
}

}  // namespace modp
