#pragma once

// Finite matrix groups over F_q and decision procedures for the lemmas on
// regular elements and characteristic-polynomial annihilation.
//
// Groups are always fully enumerated by breadth-first closure, so every check
// below is exact. A representation of an abstract group G is given on
// generators; the abstract group itself is either supplied by a faithful
// realization or taken to be the image of rho.

#include <algorithm>
#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "modp_lab/errors.hpp"
#include "modp_lab/finite_field.hpp"
#include "modp_lab/linalg.hpp"

namespace modp {

inline constexpr std::size_t kDefaultClosureCap = 1'000'000;

using FieldPtr = std::shared_ptr<const FiniteField>;

inline FieldPtr make_field(FieldSpec spec) { return std::make_shared<const FiniteField>(std::move(spec)); }
inline FieldPtr make_field(std::uint64_t q) { return make_field(field_spec_for_order(q)); }

class CapExceeded : public std::runtime_error {
 public:
  CapExceeded(std::size_t partial, std::size_t cap)
      : std::runtime_error("group closure exceeded cap of " + std::to_string(cap) + " elements (reached " +
                           std::to_string(partial) + ")"),
        partial_(partial) {}
  std::size_t partial_size() const noexcept { return partial_; }

 private:
  std::size_t partial_;
};

namespace detail {

inline void check_generators(const FiniteField& F, const std::vector<Matrix>& gens, int n) {
  for (const auto& g : gens) {
    if (g.n != n) throw std::invalid_argument("generators must all have dimension " + std::to_string(n));
    for (Elem x : g.a)
      if (x >= F.order()) throw std::invalid_argument("matrix entry is not a field element");
    if (mat::det(F, g) == 0) throw std::invalid_argument("generator is not invertible");
  }
}

}  // namespace detail

/// Subgroup of GL_n(F_q) generated by a list of invertible matrices.
///
/// elements()[0] is the identity; the rest follow breadth-first insertion
/// order (right multiplication by generators in list order), which makes the
/// enumeration and every witness deterministic.
class GeneratedGroup {
 public:
  static GeneratedGroup closure(FieldPtr field, int n, std::vector<Matrix> gens, std::size_t cap = kDefaultClosureCap) {
    detail::check_generators(*field, gens, n);
    GeneratedGroup G(std::move(field), n, std::move(gens));
    G.insert(mat::identity(n));
    const FiniteField& F = *G.field_;
    for (std::size_t i = 0; i < G.elements_.size(); ++i) {
      for (const auto& g : G.generators_) {
        Matrix y = mat::mul(F, G.elements_[i], g);
        if (!G.index_.count(y)) {
          G.insert(std::move(y));
          if (G.elements_.size() > cap) throw CapExceeded(G.elements_.size(), cap);
        }
      }
    }
    return G;
  }

  const FieldPtr& field_ptr() const noexcept { return field_; }
  const FiniteField& field() const noexcept { return *field_; }
  int dimension() const noexcept { return n_; }
  std::size_t order() const noexcept { return elements_.size(); }
  const std::vector<Matrix>& elements() const noexcept { return elements_; }
  const std::vector<Matrix>& generators() const noexcept { return generators_; }

  std::optional<std::size_t> index_of(const Matrix& m) const {
    auto it = index_.find(m);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  bool contains(const Matrix& m) const { return index_.count(m) != 0; }

 private:
  GeneratedGroup(FieldPtr f, int n, std::vector<Matrix> gens) : field_(std::move(f)), n_(n), generators_(std::move(gens)) {}

  void insert(Matrix m) {
    index_.emplace(m, elements_.size());
    elements_.push_back(std::move(m));
  }

  FieldPtr field_;
  int n_;
  std::vector<Matrix> generators_;
  std::vector<Matrix> elements_;
  std::unordered_map<Matrix, std::size_t, MatrixHash> index_;
};

/// Subgroup of G generated by the elements satisfying pred, grown one missing
/// element at a time so the generating list stays short.
template <class Pred>
GeneratedGroup subgroup_generated_by(const GeneratedGroup& G, Pred&& pred, std::size_t cap = kDefaultClosureCap) {
  GeneratedGroup H = GeneratedGroup::closure(G.field_ptr(), G.dimension(), {}, cap);
  for (const auto& g : G.elements()) {
    if (!pred(g) || H.contains(g)) continue;
    auto gens = H.generators();
    gens.push_back(g);
    H = GeneratedGroup::closure(G.field_ptr(), G.dimension(), std::move(gens), cap);
    if (H.order() == G.order()) break;
  }
  return H;
}

inline GeneratedGroup regular_subgroup(const GeneratedGroup& G) {
  const FiniteField& F = G.field();
  return subgroup_generated_by(G, [&](const Matrix& g) { return mat::is_regular(F, g); });
}

/// The regular elements of G exist and generate G.
inline bool is_regular_generated(const GeneratedGroup& G) {
  const FiniteField& F = G.field();
  const auto& els = G.elements();
  if (std::none_of(els.begin(), els.end(), [&](const Matrix& g) { return mat::is_regular(F, g); })) return false;
  return regular_subgroup(G).order() == G.order();
}

// ---------------------------------------------------------------------------
// Irreducibility

/// Dimension of the F_q-span of the algebra generated by gens.
inline int enveloping_algebra_dimension(const FiniteField& F, int n, const std::vector<Matrix>& gens) {
  const auto len = static_cast<std::size_t>(n * n);
  std::vector<std::vector<Elem>> basis;  // reduced rows
  std::vector<std::size_t> pivots;
  std::vector<Matrix> frontier;
  auto insert = [&](const Matrix& m) {
    std::vector<Elem> v = m.a;
    for (std::size_t b = 0; b < basis.size(); ++b) {
      const Elem f = v[pivots[b]];
      if (f == 0) continue;
      for (std::size_t i = 0; i < len; ++i) v[i] = F.sub(v[i], F.mul(f, basis[b][i]));
    }
    std::size_t piv = 0;
    while (piv < len && v[piv] == 0) ++piv;
    if (piv == len) return;
    const Elem inv = F.inv(v[piv]);
    for (auto& x : v) x = F.mul(x, inv);
    for (std::size_t b = 0; b < basis.size(); ++b) {
      const Elem f = basis[b][piv];
      if (f == 0) continue;
      for (std::size_t i = 0; i < len; ++i) basis[b][i] = F.sub(basis[b][i], F.mul(f, v[i]));
    }
    Matrix as(n);
    as.a = v;
    frontier.push_back(as);
    basis.push_back(std::move(v));
    pivots.push_back(piv);
  };
  insert(mat::identity(n));
  for (std::size_t i = 0; i < frontier.size(); ++i) {
    const Matrix cur = frontier[i];
    for (const auto& g : gens) insert(mat::mul(F, cur, g));
  }
  return static_cast<int>(basis.size());
}

/// Irreducible over the algebraic closure (Burnside: the group spans M_n).
inline bool is_absolutely_irreducible(const FiniteField& F, int n, const std::vector<Matrix>& gens) {
  return enveloping_algebra_dimension(F, n, gens) == n * n;
}

/// A proper nonzero F_q-rational invariant subspace, found by spinning every
/// vector up to scalars. Throws if there are more than 2^22 lines to try.
inline std::optional<std::vector<std::vector<Elem>>> find_invariant_subspace(const FiniteField& F, int n,
                                                                             const std::vector<Matrix>& gens) {
  const std::uint64_t q = F.order();
  std::uint64_t lines = 0, qp = 1;
  for (int i = 0; i < n; ++i) {
    lines += qp;
    qp *= q;
  }
  if (lines > (1u << 22)) throw std::invalid_argument("too many lines for exhaustive spinning");
  const auto N = static_cast<std::size_t>(n);
  std::vector<Elem> v(N, 0);
  for (std::size_t lead = 0; lead < N; ++lead) {
    // Vectors with first nonzero coordinate at `lead`, equal to 1.
    const std::size_t free = N - lead - 1;
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < free; ++i) count *= q;
    for (std::uint64_t code = 0; code < count; ++code) {
      std::fill(v.begin(), v.end(), 0);
      v[lead] = 1;
      std::uint64_t c = code;
      for (std::size_t i = lead + 1; i < N; ++i) {
        v[i] = static_cast<Elem>(c % q);
        c /= q;
      }
      std::vector<std::vector<Elem>> span{v};
      std::vector<std::vector<Elem>> reduced{v};
      for (std::size_t i = 0; i < span.size() && span.size() < N; ++i) {
        for (const auto& g : gens) {
          auto w = mat::apply(F, g, span[i]);
          auto trial = reduced;
          trial.push_back(w);
          if (mat::row_reduce(F, trial) > static_cast<int>(span.size())) {
            span.push_back(w);
            reduced = std::move(trial);
            reduced.resize(span.size());
          }
          if (span.size() == N) break;
        }
      }
      if (span.size() < N) return span;
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Reports

struct Check {
  std::string name;
  bool passed = true;
  std::string detail;
  std::optional<std::size_t> witness_index;  // element index in the group or pair
  std::vector<Matrix> witness;               // matrices describing the witness
};

struct LemmaReport {
  std::string lemma;
  std::vector<Check> preconditions;
  std::vector<Check> conclusions;

  bool preconditions_met() const {
    for (const auto& c : preconditions)
      if (!c.passed) return false;
    return true;
  }
  bool holds() const {
    if (!preconditions_met()) return false;
    for (const auto& c : conclusions)
      if (!c.passed) return false;
    return true;
  }
};

// ---------------------------------------------------------------------------
// Pairs of representations

class HomomorphismConflict : public std::invalid_argument {
 public:
  explicit HomomorphismConflict(const std::string& what) : std::invalid_argument(what) {}
};

/// Two representations rho (dim n) and theta (dim m) of one finite group G,
/// given on a common list of generators.
///
/// G is taken from `group_gens` when supplied (a faithful realization),
/// otherwise G is identified with rho(G). The closure walks G and carries the
/// images along; reaching an element twice with different images means the
/// generator assignment does not extend to a homomorphism, reported as
/// HomomorphismConflict with the offending element.
class RepresentationPair {
 public:
  static RepresentationPair build(FieldPtr field, std::vector<Matrix> rho_gens, std::vector<Matrix> theta_gens,
                                  std::vector<Matrix> group_gens = {}, std::size_t cap = kDefaultClosureCap) {
    if (rho_gens.empty()) throw std::invalid_argument("at least one generator is required");
    if (theta_gens.size() != rho_gens.size())
      throw std::invalid_argument("rho and theta need images for the same generators");
    if (!group_gens.empty() && group_gens.size() != rho_gens.size())
      throw std::invalid_argument("group realization needs the same number of generators");
    const FiniteField& F = *field;
    const int n = rho_gens[0].n;
    const int m = theta_gens[0].n;
    detail::check_generators(F, rho_gens, n);
    detail::check_generators(F, theta_gens, m);
    const bool own = !group_gens.empty();
    if (own) detail::check_generators(F, group_gens, group_gens[0].n);

    RepresentationPair P(std::move(field), std::move(rho_gens), std::move(theta_gens), std::move(group_gens));
    const auto& real_gens = own ? P.group_gens_ : P.rho_gens_;
    const int rn = real_gens[0].n;
    P.insert(mat::identity(rn), mat::identity(n), mat::identity(m));
    for (std::size_t i = 0; i < P.real_.size(); ++i) {
      for (std::size_t j = 0; j < real_gens.size(); ++j) {
        Matrix g = mat::mul(F, P.real_[i], real_gens[j]);
        Matrix r = own ? mat::mul(F, P.rho_[i], P.rho_gens_[j]) : g;
        Matrix t = mat::mul(F, P.theta_[i], P.theta_gens_[j]);
        auto it = P.index_.find(g);
        if (it == P.index_.end()) {
          P.insert(std::move(g), std::move(r), std::move(t));
          if (P.real_.size() > cap) throw CapExceeded(P.real_.size(), cap);
          continue;
        }
        const std::size_t k = it->second;
        if (P.rho_[k] != r || P.theta_[k] != t)
          throw HomomorphismConflict(std::string("generator images do not define a homomorphism: ") +
                                     (P.rho_[k] != r ? "rho" : "theta") + " takes two values on element #" +
                                     std::to_string(k));
      }
    }
    return P;
  }

  const FiniteField& field() const noexcept { return *field_; }
  const FieldPtr& field_ptr() const noexcept { return field_; }
  std::size_t order() const noexcept { return real_.size(); }
  int rho_dim() const noexcept { return rho_gens_[0].n; }
  int theta_dim() const noexcept { return theta_gens_[0].n; }
  bool has_realization() const noexcept { return !group_gens_.empty(); }

  const Matrix& element(std::size_t i) const { return real_[i]; }
  const Matrix& rho(std::size_t i) const { return rho_[i]; }
  const Matrix& theta(std::size_t i) const { return theta_[i]; }
  const std::vector<Matrix>& rho_generators() const noexcept { return rho_gens_; }
  const std::vector<Matrix>& theta_generators() const noexcept { return theta_gens_; }
  const std::vector<Matrix>& group_generators() const noexcept { return has_realization() ? group_gens_ : rho_gens_; }

  std::optional<std::size_t> index_of(const Matrix& realization) const {
    auto it = index_.find(realization);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  /// Index of element(i) * generator j.
  std::size_t times_generator(std::size_t i, std::size_t j) const {
    return index_.at(mat::mul(*field_, real_[i], group_generators()[j]));
  }

 private:
  RepresentationPair(FieldPtr f, std::vector<Matrix> rg, std::vector<Matrix> tg, std::vector<Matrix> gg)
      : field_(std::move(f)), rho_gens_(std::move(rg)), theta_gens_(std::move(tg)), group_gens_(std::move(gg)) {}

  void insert(Matrix g, Matrix r, Matrix t) {
    index_.emplace(g, real_.size());
    real_.push_back(std::move(g));
    rho_.push_back(std::move(r));
    theta_.push_back(std::move(t));
  }

  FieldPtr field_;
  std::vector<Matrix> rho_gens_, theta_gens_, group_gens_;
  std::vector<Matrix> real_, rho_, theta_;
  std::unordered_map<Matrix, std::size_t, MatrixHash> index_;
};

namespace detail {

inline Check witness_check(std::string name, const RepresentationPair& P, std::size_t i, std::string detail) {
  return Check{std::move(name), false, std::move(detail), i, {P.rho(i), P.theta(i)}};
}

inline Check theta_irreducible_check(const RepresentationPair& P) {
  const int m = P.theta_dim();
  const int dim = enveloping_algebra_dimension(P.field(), m, P.theta_generators());
  return Check{"theta_irreducible", dim == m * m,
               "enveloping algebra of theta has dimension " + std::to_string(dim) + " of " + std::to_string(m * m),
               std::nullopt, {}};
}

}  // namespace detail

/// char(rho(g)) applied to theta(g) vanishes for every g in G.
inline Check annihilation_holds(const RepresentationPair& P) {
  const FiniteField& F = P.field();
  for (std::size_t i = 0; i < P.order(); ++i) {
    const Poly cp = mat::char_poly(F, P.rho(i));
    if (!mat::is_zero(mat::eval_poly(F, cp, P.theta(i))))
      return detail::witness_check("annihilation", P, i, "char(rho(g)) does not annihilate theta(g)");
  }
  return Check{"annihilation", true, "checked on all " + std::to_string(P.order()) + " elements", std::nullopt, {}};
}

/// With theta irreducible and annihilation, ker rho is inside ker theta.
inline LemmaReport kernel_containment(const RepresentationPair& P) {
  LemmaReport rep{"kernel_containment", {annihilation_holds(P), detail::theta_irreducible_check(P)}, {}};
  if (!rep.preconditions_met()) return rep;
  std::size_t kernel = 0;
  for (std::size_t i = 0; i < P.order(); ++i) {
    if (!mat::is_identity(P.rho(i))) continue;
    ++kernel;
    if (!mat::is_identity(P.theta(i))) {
      rep.conclusions.push_back(detail::witness_check("kernel_contained", P, i, "rho(g) = 1 but theta(g) != 1"));
      return rep;
    }
  }
  rep.conclusions.push_back(
      Check{"kernel_contained", true, "|ker rho| = " + std::to_string(kernel), std::nullopt, {}});
  return rep;
}

/// theta agrees with the i-th diagonal character of rho on all of G.
inline bool theta_is_summand(const RepresentationPair& P) {
  if (P.theta_dim() != 1) return false;
  for (int c = 0; c < P.rho_dim(); ++c) {
    bool all = true;
    for (std::size_t i = 0; i < P.order() && all; ++i) all = P.rho(i).at(c, c) == P.theta(i).at(0, 0);
    if (all) return true;
  }
  return false;
}

/// rho a sum of characters, theta a character: every g lies in the kernel of
/// some chi_i * theta^(-1).
inline LemmaReport union_of_kernels(const RepresentationPair& P) {
  LemmaReport rep{"union_of_kernels", {}, {}};
  bool diag = true;
  for (const auto& g : P.rho_generators()) diag = diag && mat::is_diagonal(g);
  rep.preconditions.push_back(Check{"rho_diagonal", diag, "rho must be a direct sum of characters", std::nullopt, {}});
  rep.preconditions.push_back(
      Check{"theta_character", P.theta_dim() == 1, "theta must be one-dimensional", std::nullopt, {}});
  rep.preconditions.push_back(annihilation_holds(P));
  if (!rep.preconditions_met()) return rep;
  for (std::size_t i = 0; i < P.order(); ++i) {
    bool hit = false;
    for (int c = 0; c < P.rho_dim() && !hit; ++c) hit = P.rho(i).at(c, c) == P.theta(i).at(0, 0);
    if (!hit) {
      rep.conclusions.push_back(
          detail::witness_check("union_of_kernels", P, i, "g lies in no kernel of chi_i theta^-1"));
      return rep;
    }
  }
  rep.conclusions.push_back(Check{"union_of_kernels", true,
                                  theta_is_summand(P) ? "theta is one of the summands of rho"
                                                      : "theta is not a summand of rho",
                                  std::nullopt, {}});
  return rep;
}

// ---------------------------------------------------------------------------
// Monomial inductions and the regular-element lemma

struct MonomialInduction {
  std::vector<Matrix> generators;  // shift, then diag(psi) and its conjugates
  bool reducible = false;
  std::string warning;
};

/// Ind_H^G psi for G = H x| <shift>, realized monomially: the cyclic shift P
/// together with D = diag(g^e_0, ..., g^e_(n-1)) for g = field.primitive(),
/// and the conjugates P^i D P^-i.
inline MonomialInduction build_monomial_induction(const FieldPtr& field, const std::vector<std::int64_t>& psi_exponents) {
  const FiniteField& F = *field;
  const int n = static_cast<int>(psi_exponents.size());
  if (n < 2 || n > kMaxMatrixDim) throw std::invalid_argument("monomial induction needs 2 <= n <= 6 exponents");
  std::vector<int> perm(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) perm[static_cast<std::size_t>(j)] = (j + 1) % n;
  const Matrix shift = mat::permutation(perm);
  const Matrix shift_inv = *mat::inverse(F, shift);
  std::vector<Elem> diag;
  for (auto e : psi_exponents) diag.push_back(F.pow(F.primitive(), e));
  MonomialInduction out;
  out.generators.push_back(shift);
  Matrix D = mat::diagonal(diag);
  for (int i = 0; i < n; ++i) {
    out.generators.push_back(D);
    D = mat::mul(F, mat::mul(F, shift, D), shift_inv);
  }
  out.reducible = !is_absolutely_irreducible(F, n, out.generators);
  if (out.reducible) out.warning = "psi is fixed by the shift: the induced representation is reducible";
  return out;
}

enum class RegularLemmaMode { induced, unipotent };

inline Check absolutely_irreducible_check(const GeneratedGroup& G) {
  const int n = G.dimension();
  const int dim = enveloping_algebra_dimension(G.field(), n, G.generators());
  Check c{"irreducible", dim == n * n,
          "enveloping algebra has dimension " + std::to_string(dim) + " of " + std::to_string(n * n), std::nullopt, {}};
  if (!c.passed) {
    if (auto sub = find_invariant_subspace(G.field(), n, G.generators()))
      c.detail += "; invariant subspace of dimension " + std::to_string(sub->size());
  }
  return c;
}

inline LemmaReport verify_regular_lemma(const GeneratedGroup& G, RegularLemmaMode mode) {
  const FiniteField& F = G.field();
  LemmaReport rep{mode == RegularLemmaMode::induced ? "regular_lemma_induced" : "regular_lemma_unipotent", {}, {}};
  rep.preconditions.push_back(
      Check{"dimension_3", G.dimension() == 3, "the lemma concerns subgroups of GL_3", std::nullopt, {}});
  rep.preconditions.push_back(absolutely_irreducible_check(G));

  if (mode == RegularLemmaMode::induced) {
    std::size_t diag = 0;
    for (const auto& g : G.elements()) diag += mat::is_diagonal(g) ? 1 : 0;
    rep.preconditions.push_back(Check{"diagonal_subgroup_index_3", diag * 3 == G.order(),
                                      "|G| = " + std::to_string(G.order()) + ", |diagonal part| = " + std::to_string(diag),
                                      std::nullopt, {}});
    if (!rep.preconditions_met()) return rep;
    Check all_regular{"off_diagonal_regular", true, "", std::nullopt, {}};
    std::size_t off = 0;
    for (std::size_t i = 0; i < G.order(); ++i) {
      const auto& g = G.elements()[i];
      if (mat::is_diagonal(g)) continue;
      ++off;
      if (!mat::is_regular(F, g)) {
        all_regular = Check{"off_diagonal_regular", false, "element outside the diagonal subgroup is not regular", i, {g}};
        break;
      }
    }
    if (all_regular.passed) all_regular.detail = std::to_string(off) + " elements outside the diagonal subgroup";
    rep.conclusions.push_back(all_regular);
    const auto Hoff = subgroup_generated_by(G, [](const Matrix& g) { return !mat::is_diagonal(g); });
    rep.conclusions.push_back(Check{"off_diagonal_generate", Hoff.order() == G.order(),
                                    "subgroup generated has order " + std::to_string(Hoff.order()), std::nullopt, {}});
  } else {
    std::optional<std::size_t> uni;
    for (std::size_t i = 0; i < G.order() && !uni; ++i) {
      const auto& g = G.elements()[i];
      if (mat::is_unipotent(F, g) && mat::is_regular(F, g)) uni = i;
    }
    Check c{"contains_regular_unipotent", uni.has_value(), uni ? "found" : "no regular unipotent element", uni, {}};
    if (uni) c.witness.push_back(G.elements()[*uni]);
    rep.preconditions.push_back(c);
    if (!rep.preconditions_met()) return rep;
  }
  const auto H = regular_subgroup(G);
  Check rg{"regular_generated", H.order() == G.order(),
           "regular elements generate a subgroup of order " + std::to_string(H.order()) + " in |G| = " +
               std::to_string(G.order()),
           std::nullopt, {}};
  if (!rg.passed) {
    for (std::size_t i = 0; i < G.order(); ++i)
      if (!H.contains(G.elements()[i])) {
        rg.witness_index = i;
        rg.witness.push_back(G.elements()[i]);
        break;
      }
  }
  rep.conclusions.push_back(rg);
  return rep;
}

// ---------------------------------------------------------------------------
// Intertwiners

inline constexpr std::uint64_t kIntertwinerSearchLimit = 1u << 20;

/// An invertible T with rho(g) T = T theta(g) for every generator, or none.
/// Dimension mismatch yields none. The solution space is searched
/// exhaustively; spaces with more than 2^20 elements are refused.
inline std::optional<Matrix> find_intertwiner(const FiniteField& F, const std::vector<Matrix>& rho_gens,
                                              const std::vector<Matrix>& theta_gens) {
  if (rho_gens.size() != theta_gens.size())
    throw std::invalid_argument("rho and theta need the same number of generators");
  if (rho_gens.empty()) throw std::invalid_argument("at least one generator is required");
  const int n = rho_gens[0].n;
  if (theta_gens[0].n != n) return std::nullopt;
  const auto N = static_cast<std::size_t>(n * n);
  std::vector<std::vector<Elem>> rows;
  for (std::size_t g = 0; g < rho_gens.size(); ++g) {
    const auto& R = rho_gens[g];
    const auto& T = theta_gens[g];
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        std::vector<Elem> row(N, 0);
        // (R X)_ij - (X T)_ij, unknown X_kl at index k*n + l.
        for (int k = 0; k < n; ++k) {
          auto& a = row[static_cast<std::size_t>(k * n + j)];
          a = F.add(a, R.at(i, k));
          auto& b = row[static_cast<std::size_t>(i * n + k)];
          b = F.sub(b, T.at(k, j));
        }
        rows.push_back(std::move(row));
      }
  }
  const int rank = mat::row_reduce(F, rows);
  // Null space basis from the reduced row echelon form.
  std::vector<std::size_t> pivot_col;
  for (int r = 0; r < rank; ++r) {
    std::size_t c = 0;
    while (rows[static_cast<std::size_t>(r)][c] == 0) ++c;
    pivot_col.push_back(c);
  }
  std::vector<char> is_pivot(N, 0);
  for (auto c : pivot_col) is_pivot[c] = 1;
  std::vector<std::vector<Elem>> kernel;
  for (std::size_t f = 0; f < N; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Elem> v(N, 0);
    v[f] = 1;
    for (int r = 0; r < rank; ++r) v[pivot_col[static_cast<std::size_t>(r)]] = F.neg(rows[static_cast<std::size_t>(r)][f]);
    kernel.push_back(std::move(v));
  }
  if (kernel.empty()) return std::nullopt;
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < kernel.size(); ++i) {
    total *= F.order();
    if (total > kIntertwinerSearchLimit)
      throw std::invalid_argument("intertwiner space of dimension " + std::to_string(kernel.size()) +
                                  " is too large for exhaustive search");
  }
  Matrix X(n);
  for (std::uint64_t code = 1; code < total; ++code) {
    std::fill(X.a.begin(), X.a.end(), 0);
    std::uint64_t c = code;
    for (const auto& v : kernel) {
      const auto coef = static_cast<Elem>(c % F.order());
      c /= F.order();
      if (coef == 0) continue;
      for (std::size_t i = 0; i < N; ++i) X.a[i] = F.add(X.a[i], F.mul(coef, v[i]));
    }
    if (mat::det(F, X) != 0) return X;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Determinants from a family of characteristic polynomials

/// family(i) is a monic polynomial of degree dim(theta) attached to element
/// i of P. With theta(G) regular-generated, family(i)(theta(i)) = 0 and the
/// constant terms multiplicative, det theta(g) must equal a_n(g), where
/// family(g) = X^n - a_1 X^(n-1) + ... + (-1)^n a_n.
template <class Family>
LemmaReport det_agreement(const RepresentationPair& P, Family&& family) {
  const FiniteField& F = P.field();
  const int m = P.theta_dim();
  LemmaReport rep{"det_agreement", {}, {}};
  std::vector<Poly> fam(P.order());
  for (std::size_t i = 0; i < P.order(); ++i) fam[i] = family(i);

  Check shape{"family_monic_degree_n", true, "", std::nullopt, {}};
  for (std::size_t i = 0; i < P.order() && shape.passed; ++i)
    if (fam[i].degree() != m || fam[i].lead() != F.one())
      shape = detail::witness_check("family_monic_degree_n", P, i, "family polynomial is not monic of degree n");
  rep.preconditions.push_back(shape);
  if (!shape.passed) return rep;

  const Elem sign = (m % 2 == 0) ? F.one() : F.neg(F.one());
  auto a_n = [&](std::size_t i) { return F.mul(sign, fam[i].c[0]); };

  Check mult{"constant_term_multiplicative", true, "", std::nullopt, {}};
  for (std::size_t i = 0; i < P.order() && mult.passed; ++i)
    for (std::size_t j = 0; j < P.group_generators().size(); ++j) {
      const std::size_t gij = P.times_generator(i, j);
      const auto gen = *P.index_of(P.group_generators()[j]);
      if (a_n(gij) != F.mul(a_n(i), a_n(gen))) {
        mult = detail::witness_check("constant_term_multiplicative", P, i, "a_n(g h) != a_n(g) a_n(h) for a generator h");
        break;
      }
    }
  rep.preconditions.push_back(mult);

  Check ann{"family_annihilates_theta", true, "", std::nullopt, {}};
  for (std::size_t i = 0; i < P.order(); ++i)
    if (!mat::is_zero(mat::eval_poly(F, fam[i], P.theta(i)))) {
      ann = detail::witness_check("family_annihilates_theta", P, i, "family polynomial does not annihilate theta(g)");
      break;
    }
  rep.preconditions.push_back(ann);

  const auto theta_group = GeneratedGroup::closure(P.field_ptr(), m, P.theta_generators());
  const bool rg = is_regular_generated(theta_group);
  rep.preconditions.push_back(Check{"theta_regular_generated", rg,
                                    "theta(G) has order " + std::to_string(theta_group.order()), std::nullopt, {}});
  if (!rep.preconditions_met()) return rep;

  for (std::size_t i = 0; i < P.order(); ++i)
    if (mat::det(F, P.theta(i)) != a_n(i)) {
      rep.conclusions.push_back(detail::witness_check("det_equals_a_n", P, i, "det theta(g) != a_n(g)"));
      return rep;
    }
  rep.conclusions.push_back(Check{"det_equals_a_n", true, "", std::nullopt, {}});
  return rep;
}

/// det_agreement with the family g -> char(rho(g)); needs dim rho = dim theta.
inline LemmaReport det_agreement_from_rho(const RepresentationPair& P) {
  if (P.rho_dim() != P.theta_dim()) throw std::invalid_argument("rho and theta must have the same dimension");
  return det_agreement(P, [&](std::size_t i) { return mat::char_poly(P.field(), P.rho(i)); });
}

}  // namespace modp
