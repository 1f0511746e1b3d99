#pragma once

// Dense polynomials and small square matrices over a FiniteField.
//
// All routines take the field explicitly; Matrix and Poly are plain values.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "modp_lab/errors.hpp"
#include "modp_lab/finite_field.hpp"

namespace modp {

inline constexpr int kMaxMatrixDim = 6;

/// Coefficients low to high, no trailing zeros. The zero polynomial is empty.
struct Poly {
  std::vector<Elem> c;

  int degree() const noexcept { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const noexcept { return c.empty(); }
  Elem lead() const { return c.back(); }

  friend bool operator==(const Poly&, const Poly&) = default;
};

namespace poly {

inline void trim(Poly& a) {
  while (!a.c.empty() && a.c.back() == 0) a.c.pop_back();
}

inline Poly x_minus(const FiniteField& F, Elem root) { return Poly{{F.neg(root), F.one()}}; }

inline Poly add(const FiniteField& F, const Poly& a, const Poly& b) {
  Poly out{a.c};
  if (out.c.size() < b.c.size()) out.c.resize(b.c.size(), 0);
  for (std::size_t i = 0; i < b.c.size(); ++i) out.c[i] = F.add(out.c[i], b.c[i]);
  trim(out);
  return out;
}

inline Poly scale(const FiniteField& F, const Poly& a, Elem s) {
  Poly out{a.c};
  for (auto& x : out.c) x = F.mul(x, s);
  trim(out);
  return out;
}

inline Poly sub(const FiniteField& F, const Poly& a, const Poly& b) { return add(F, a, scale(F, b, F.neg(F.one()))); }

inline Poly mul(const FiniteField& F, const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  Poly out{std::vector<Elem>(a.c.size() + b.c.size() - 1, 0)};
  for (std::size_t i = 0; i < a.c.size(); ++i)
    for (std::size_t j = 0; j < b.c.size(); ++j) out.c[i + j] = F.add(out.c[i + j], F.mul(a.c[i], b.c[j]));
  trim(out);
  return out;
}

inline Poly monic(const FiniteField& F, const Poly& a) {
  if (a.is_zero()) return a;
  return scale(F, a, F.inv(a.lead()));
}

/// Quotient and remainder; b must be nonzero.
inline std::pair<Poly, Poly> divmod(const FiniteField& F, const Poly& a, const Poly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  Poly rem = a;
  trim(rem);
  if (rem.degree() < b.degree()) return {Poly{}, rem};
  Poly quo{std::vector<Elem>(static_cast<std::size_t>(rem.degree() - b.degree() + 1), 0)};
  const Elem li = F.inv(b.lead());
  while (!rem.is_zero() && rem.degree() >= b.degree()) {
    const auto shift = static_cast<std::size_t>(rem.degree() - b.degree());
    const Elem c = F.mul(rem.lead(), li);
    quo.c[shift] = c;
    for (std::size_t i = 0; i < b.c.size(); ++i) rem.c[shift + i] = F.sub(rem.c[shift + i], F.mul(c, b.c[i]));
    trim(rem);
  }
  trim(quo);
  return {quo, rem};
}

inline Poly gcd(const FiniteField& F, Poly a, Poly b) {
  trim(a);
  trim(b);
  while (!b.is_zero()) {
    Poly r = divmod(F, a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(F, a);
}

inline Poly lcm(const FiniteField& F, const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  return monic(F, divmod(F, mul(F, a, b), gcd(F, a, b)).first);
}

inline Elem eval(const FiniteField& F, const Poly& a, Elem x) {
  Elem acc = 0;
  for (std::size_t i = a.c.size(); i-- > 0;) acc = F.add(F.mul(acc, x), a.c[i]);
  return acc;
}

inline Poly power_of(const FiniteField& F, const Poly& base, int k) {
  Poly out{{F.one()}};
  for (int i = 0; i < k; ++i) out = mul(F, out, base);
  return out;
}

}  // namespace poly

/// n x n matrix, row-major. 1 <= n <= 6.
struct Matrix {
  int n = 0;
  std::vector<Elem> a;

  Matrix() = default;
  explicit Matrix(int dim) : n(dim), a(static_cast<std::size_t>(dim * dim), 0) {
    if (dim < 1 || dim > kMaxMatrixDim) throw std::invalid_argument("matrix dimension must lie in [1, 6]");
  }

  Elem& at(int i, int j) { return a[static_cast<std::size_t>(i * n + j)]; }
  Elem at(int i, int j) const { return a[static_cast<std::size_t>(i * n + j)]; }

  friend bool operator==(const Matrix&, const Matrix&) = default;
};

struct MatrixHash {
  std::size_t operator()(const Matrix& m) const noexcept {
    std::size_t h = static_cast<std::size_t>(m.n) * 0x9E3779B97F4A7C15ull;
    for (Elem x : m.a) h = (h ^ x) * 0x100000001B3ull + (h >> 29);
    return h;
  }
};

namespace mat {

inline Matrix identity(int n) {
  Matrix m(n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

inline Matrix scalar(int n, Elem c) {
  Matrix m(n);
  for (int i = 0; i < n; ++i) m.at(i, i) = c;
  return m;
}

inline Matrix diagonal(const std::vector<Elem>& entries) {
  Matrix m(static_cast<int>(entries.size()));
  for (int i = 0; i < m.n; ++i) m.at(i, i) = entries[static_cast<std::size_t>(i)];
  return m;
}

/// Jordan block with eigenvalue lambda: lambda on the diagonal, 1 above it.
inline Matrix jordan_block(int n, Elem lambda) {
  Matrix m = scalar(n, lambda);
  for (int i = 0; i + 1 < n; ++i) m.at(i, i + 1) = 1;
  return m;
}

/// Permutation matrix sending e_j to e_(perm[j]).
inline Matrix permutation(const std::vector<int>& perm) {
  Matrix m(static_cast<int>(perm.size()));
  for (int j = 0; j < m.n; ++j) m.at(perm[static_cast<std::size_t>(j)], j) = 1;
  return m;
}

inline Matrix mul(const FiniteField& F, const Matrix& x, const Matrix& y) {
  if (x.n != y.n) throw std::invalid_argument("matrix dimension mismatch");
  Matrix out(x.n);
  for (int i = 0; i < x.n; ++i)
    for (int k = 0; k < x.n; ++k) {
      const Elem xik = x.at(i, k);
      if (xik == 0) continue;
      for (int j = 0; j < x.n; ++j) out.at(i, j) = F.add(out.at(i, j), F.mul(xik, y.at(k, j)));
    }
  return out;
}

inline Matrix add(const FiniteField& F, const Matrix& x, const Matrix& y) {
  if (x.n != y.n) throw std::invalid_argument("matrix dimension mismatch");
  Matrix out(x.n);
  for (std::size_t i = 0; i < x.a.size(); ++i) out.a[i] = F.add(x.a[i], y.a[i]);
  return out;
}

inline Matrix scale(const FiniteField& F, const Matrix& x, Elem s) {
  Matrix out = x;
  for (auto& v : out.a) v = F.mul(v, s);
  return out;
}

inline Matrix transpose(const Matrix& x) {
  Matrix out(x.n);
  for (int i = 0; i < x.n; ++i)
    for (int j = 0; j < x.n; ++j) out.at(j, i) = x.at(i, j);
  return out;
}

inline Matrix apply_entrywise(const Matrix& x, const std::function<Elem(Elem)>& f) {
  Matrix out = x;
  for (auto& v : out.a) v = f(v);
  return out;
}

inline bool is_zero(const Matrix& x) {
  return std::all_of(x.a.begin(), x.a.end(), [](Elem v) { return v == 0; });
}

inline bool is_identity(const Matrix& x) { return x == identity(x.n); }

inline bool is_diagonal(const Matrix& x) {
  for (int i = 0; i < x.n; ++i)
    for (int j = 0; j < x.n; ++j)
      if (i != j && x.at(i, j) != 0) return false;
  return true;
}

inline bool is_scalar(const Matrix& x) { return is_diagonal(x) && x == scalar(x.n, x.at(0, 0)); }

/// Row-reduces a list of vectors in place; returns the rank.
inline int row_reduce(const FiniteField& F, std::vector<std::vector<Elem>>& rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows[0].size();
  int rank = 0;
  for (std::size_t c = 0; c < cols && rank < static_cast<int>(rows.size()); ++c) {
    std::size_t piv = static_cast<std::size_t>(rank);
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[static_cast<std::size_t>(rank)]);
    auto& pr = rows[static_cast<std::size_t>(rank)];
    const Elem inv = F.inv(pr[c]);
    for (auto& v : pr) v = F.mul(v, inv);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == static_cast<std::size_t>(rank) || rows[r][c] == 0) continue;
      const Elem f = rows[r][c];
      for (std::size_t k = 0; k < cols; ++k) rows[r][k] = F.sub(rows[r][k], F.mul(f, pr[k]));
    }
    ++rank;
  }
  return rank;
}

inline Elem det(const FiniteField& F, const Matrix& x) {
  Matrix m = x;
  Elem d = 1;
  for (int c = 0; c < m.n; ++c) {
    int piv = c;
    while (piv < m.n && m.at(piv, c) == 0) ++piv;
    if (piv == m.n) return 0;
    if (piv != c) {
      for (int j = 0; j < m.n; ++j) std::swap(m.at(piv, j), m.at(c, j));
      d = F.neg(d);
    }
    d = F.mul(d, m.at(c, c));
    const Elem inv = F.inv(m.at(c, c));
    for (int r = c + 1; r < m.n; ++r) {
      if (m.at(r, c) == 0) continue;
      const Elem f = F.mul(m.at(r, c), inv);
      for (int j = c; j < m.n; ++j) m.at(r, j) = F.sub(m.at(r, j), F.mul(f, m.at(c, j)));
    }
  }
  return d;
}

inline std::optional<Matrix> inverse(const FiniteField& F, const Matrix& x) {
  const int n = x.n;
  std::vector<std::vector<Elem>> rows(static_cast<std::size_t>(n), std::vector<Elem>(static_cast<std::size_t>(2 * n), 0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = x.at(i, j);
    rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(n + i)] = 1;
  }
  row_reduce(F, rows);
  Matrix out(n);
  for (int i = 0; i < n; ++i) {
    if (rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] != 1) return std::nullopt;
    for (int j = 0; j < n; ++j) out.at(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(n + j)];
  }
  return out;
}

inline std::vector<Elem> apply(const FiniteField& F, const Matrix& x, const std::vector<Elem>& v) {
  std::vector<Elem> out(static_cast<std::size_t>(x.n), 0);
  for (int i = 0; i < x.n; ++i)
    for (int j = 0; j < x.n; ++j)
      out[static_cast<std::size_t>(i)] = F.add(out[static_cast<std::size_t>(i)], F.mul(x.at(i, j), v[static_cast<std::size_t>(j)]));
  return out;
}

/// p(x) evaluated at the matrix, by Horner's rule.
inline Matrix eval_poly(const FiniteField& F, const Poly& p, const Matrix& x) {
  Matrix acc(x.n);
  for (std::size_t i = p.c.size(); i-- > 0;) acc = add(F, mul(F, acc, x), scalar(x.n, p.c[i]));
  return acc;
}

/// det(X I - M) via reduction to upper Hessenberg form and the standard
/// three-term recurrence on leading principal blocks.
inline Poly char_poly(const FiniteField& F, const Matrix& m) {
  const int n = m.n;
  Matrix h = m;
  for (int j = 0; j + 2 < n; ++j) {
    int piv = j + 1;
    while (piv < n && h.at(piv, j) == 0) ++piv;
    if (piv == n) continue;
    if (piv != j + 1) {
      for (int k = 0; k < n; ++k) std::swap(h.at(piv, k), h.at(j + 1, k));
      for (int k = 0; k < n; ++k) std::swap(h.at(k, piv), h.at(k, j + 1));
    }
    const Elem inv = F.inv(h.at(j + 1, j));
    for (int i = j + 2; i < n; ++i) {
      if (h.at(i, j) == 0) continue;
      const Elem u = F.mul(h.at(i, j), inv);
      for (int k = 0; k < n; ++k) h.at(i, k) = F.sub(h.at(i, k), F.mul(u, h.at(j + 1, k)));
      for (int k = 0; k < n; ++k) h.at(k, j + 1) = F.add(h.at(k, j + 1), F.mul(u, h.at(k, i)));
    }
  }
  // p_k = det(X I - H_k) for the leading k x k block.
  std::vector<Poly> p(static_cast<std::size_t>(n) + 1);
  p[0] = Poly{{F.one()}};
  for (int k = 1; k <= n; ++k) {
    Poly cur = poly::mul(F, poly::x_minus(F, h.at(k - 1, k - 1)), p[static_cast<std::size_t>(k - 1)]);
    Elem t = F.one();
    for (int i = k - 1; i >= 1; --i) {
      t = F.mul(t, h.at(i, i - 1));
      const Elem coef = F.mul(t, h.at(i - 1, k - 1));
      cur = poly::sub(F, cur, poly::scale(F, p[static_cast<std::size_t>(i - 1)], coef));
    }
    p[static_cast<std::size_t>(k)] = std::move(cur);
  }
  return p[static_cast<std::size_t>(n)];
}

/// Minimal polynomial of v under M: the monic generator of the annihilator
/// of v, read off from the first linear dependency among v, Mv, M^2 v, ...
inline Poly local_min_poly(const FiniteField& F, const Matrix& m, const std::vector<Elem>& v) {
  const auto n = static_cast<std::size_t>(m.n);
  struct Entry {
    std::vector<Elem> vec;
    std::vector<Elem> combo;  // coefficients of powers of M
    std::size_t pivot;
  };
  std::vector<Entry> basis;
  std::vector<Elem> w = v;
  for (std::size_t k = 0; k <= n; ++k) {
    std::vector<Elem> combo(n + 1, 0);
    combo[k] = 1;
    std::vector<Elem> cur = w;
    for (const auto& b : basis) {
      const Elem f = cur[b.pivot];
      if (f == 0) continue;
      for (std::size_t i = 0; i < n; ++i) cur[i] = F.sub(cur[i], F.mul(f, b.vec[i]));
      for (std::size_t i = 0; i <= n; ++i) combo[i] = F.sub(combo[i], F.mul(f, b.combo[i]));
    }
    std::size_t piv = 0;
    while (piv < n && cur[piv] == 0) ++piv;
    if (piv == n) {
      Poly out{combo};
      poly::trim(out);
      return poly::monic(F, out);
    }
    const Elem inv = F.inv(cur[piv]);
    for (auto& x : cur) x = F.mul(x, inv);
    for (auto& x : combo) x = F.mul(x, inv);
    // Keep the basis fully reduced at the new pivot.
    for (auto& b : basis) {
      const Elem f = b.vec[piv];
      if (f == 0) continue;
      for (std::size_t i = 0; i < n; ++i) b.vec[i] = F.sub(b.vec[i], F.mul(f, cur[i]));
      for (std::size_t i = 0; i <= n; ++i) b.combo[i] = F.sub(b.combo[i], F.mul(f, combo[i]));
    }
    basis.push_back({cur, combo, piv});
    w = apply(F, m, w);
  }
  throw invariant_error("Krylov sequence of length n+1 was independent");
}

/// lcm of the local minimal polynomials of the standard basis vectors.
inline Poly min_poly(const FiniteField& F, const Matrix& m) {
  Poly acc{{F.one()}};
  for (int j = 0; j < m.n; ++j) {
    std::vector<Elem> e(static_cast<std::size_t>(m.n), 0);
    e[static_cast<std::size_t>(j)] = 1;
    acc = poly::lcm(F, acc, local_min_poly(F, m, e));
    if (acc.degree() == m.n) break;
  }
  return acc;
}

// Minimal and characteristic polynomials coincide.
inline bool is_regular(const FiniteField& F, const Matrix& m) { return min_poly(F, m).degree() == m.n; }

inline bool is_unipotent(const FiniteField& F, const Matrix& m) {
  return char_poly(F, m) == poly::power_of(F, poly::x_minus(F, F.one()), m.n);
}

}  // namespace mat
}  // namespace modp
