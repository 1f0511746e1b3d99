#pragma once

// The eigenvalue congruence on q-restricted dominant weights of SL_n(F_q).
//
// A weight (a_1 >= ... >= a_n = 0) with a_i - a_(i+1) in [0, q-1] survives
// when every permutation x of its entries satisfies
//   q^(n-1) x_1 + q^(n-2) x_2 + ... + x_n == q^beta  (mod (q^n - 1)/(q - 1))
// for some beta in [0, n-1].

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "modp_lab/finite_field.hpp"

namespace modp {

using Weight = std::vector<std::int64_t>;

inline constexpr std::uint64_t kMaxWeightCount = 10'000'000;

namespace detail {

inline bool weight_congruence_holds(const Weight& w, std::uint64_t q) {
  const auto n = w.size();
  unsigned __int128 qn = 1;
  for (std::size_t i = 0; i < n; ++i) qn *= q;
  const unsigned __int128 N = (qn - 1) / (q - 1);
  std::vector<unsigned __int128> qpow(n);
  qpow[0] = 1 % N;
  for (std::size_t i = 1; i < n; ++i) qpow[i] = qpow[i - 1] * q % N;

  Weight x = w;
  std::sort(x.begin(), x.end());
  do {
    unsigned __int128 acc = 0;
    for (std::size_t i = 0; i < n; ++i) acc = (acc + qpow[n - 1 - i] * static_cast<std::uint64_t>(x[i])) % N;
    bool hit = false;
    for (std::size_t b = 0; b < n && !hit; ++b) hit = acc == qpow[b];
    if (!hit) return false;
  } while (std::next_permutation(x.begin(), x.end()));
  return true;
}

}  // namespace detail

/// Surviving weights, listed in lexicographic order.
inline std::vector<Weight> admissible_weights(std::uint64_t q, int n) {
  if (n < 3 || n > 6) throw std::invalid_argument("n must lie in [3, 6] (got " + std::to_string(n) + ")");
  const FieldSpec spec = field_spec_for_order(q);
  if (spec.characteristic < static_cast<std::uint32_t>(n))
    throw std::invalid_argument("characteristic " + std::to_string(spec.characteristic) + " is smaller than n=" +
                                std::to_string(n));
  std::uint64_t count = 1;
  for (int i = 0; i < n - 1; ++i) {
    count *= q;
    if (count > kMaxWeightCount) throw std::invalid_argument("too many restricted weights to enumerate");
  }
  std::vector<Weight> out;
  std::vector<std::int64_t> diffs(static_cast<std::size_t>(n - 1), 0);  // a_i - a_(i+1), i < n
  for (std::uint64_t code = 0; code < count; ++code) {
    std::uint64_t c = code;
    for (auto& dlt : diffs) {
      dlt = static_cast<std::int64_t>(c % q);
      c /= q;
    }
    Weight w(static_cast<std::size_t>(n), 0);
    for (int i = n - 2; i >= 0; --i) w[static_cast<std::size_t>(i)] = w[static_cast<std::size_t>(i) + 1] + diffs[static_cast<std::size_t>(i)];
    if (detail::weight_congruence_holds(w, q)) out.push_back(std::move(w));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace modp
