#pragma once

// JSON encodings for reps, reports, matrices and generator files.
//
// Generator files:
//   {"field": {"char": 7, "degree": 1, "modulus": [0, 1]},   // modulus optional
//    "n": 3,
//    "generators": [[ n*n row-major entries ], ...],
//    "theta": {"n": 1, "generators": [...]},                  // pair files only
//    "group": {"n": 3, "generators": [...]}}                  // optional realization
// An entry is either a coefficient array [c_0, ..., c_(m-1)] over the prime
// field or a plain integer, read as an element of the prime field.

#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "modp_lab/breuil_rank_one.hpp"
#include "modp_lab/feasibility.hpp"
#include "modp_lab/matrix_groups.hpp"
#include "modp_lab/residual_reps.hpp"

namespace modp::io {

using json = nlohmann::json;

inline constexpr const char* kSchemaVersion = "1.0";

// ---- reps and verification -------------------------------------------------

inline json to_json(const ResidualRep& rep) {
  json summands = json::array();
  for (const auto& s : rep.summands())
    summands.push_back({{"d", s.niveau()}, {"kappa", s.kappa()}, {"digits", digits(s.exponent())}});
  return {{"p", rep.p()},
          {"summands", summands},
          {"exponents", rep_exponents(rep)},
          {"detInertia", det_inertia_exponent(rep)}};
}

inline json to_json(const VerificationReport& rep) {
  json ces = json::array();
  for (const auto& c : rep.counterexamples)
    ces.push_back({{"type", c.type}, {"rep", format_rep(c.rep)}, {"exponents", c.exponents}});
  return {{"p", rep.p},
          {"n", rep.n},
          {"r", rep.r},
          {"diagnostic", rep.diagnostic},
          {"typesChecked", rep.types_checked},
          {"repsChecked", rep.reps_checked},
          {"repsApplicable", rep.reps_applicable},
          {"counterexamples", ces}};
}

inline json to_json(const std::vector<HypothesisCheck>& checks) {
  json out = json::array();
  for (const auto& c : checks)
    out.push_back({{"name", c.name}, {"passed", c.passed}, {"applicable", c.applicable}, {"reason", c.reason}});
  return out;
}

inline json profile_record(const Niveau1Profile& prof) {
  const i64 lemma = generic_fiber_exponent(from_profile(prof)).kappa();
  const i64 remark = profile_kappa(prof).kappa();
  return {{"p", prof.params.p()}, {"d", prof.params.d()},  {"r", prof.r},
          {"x", prof.x_vec},      {"y", prof.y_vec},       {"kappa0", remark},
          {"kappa0Lemma", lemma}, {"agree", lemma == remark}};
}

// ---- matrices --------------------------------------------------------------

inline FieldSpec parse_field(const json& j) {
  const auto l = j.at("char").get<std::uint32_t>();
  const int m = j.value("degree", 1);
  if (j.contains("modulus")) return FieldSpec{l, m, j.at("modulus").get<std::vector<std::uint32_t>>()};
  return make_field_spec(l, m);
}

inline json to_json(const FieldSpec& f) {
  return {{"char", f.characteristic}, {"degree", f.degree}, {"modulus", f.modulus}};
}

inline Elem parse_entry(const FiniteField& F, const json& e) {
  if (e.is_number_integer()) return F.from_int(e.get<std::int64_t>());
  if (e.is_array()) return F.from_coefficients(e.get<std::vector<std::int64_t>>());
  throw std::invalid_argument("matrix entry must be an integer or a coefficient array");
}

inline json entry_json(const FiniteField& F, Elem x) {
  if (F.degree() == 1) return x;
  return F.coefficients(x);
}

inline Matrix parse_matrix(const FiniteField& F, int n, const json& j) {
  if (!j.is_array() || j.size() != static_cast<std::size_t>(n * n))
    throw std::invalid_argument("generator must list " + std::to_string(n * n) + " row-major entries");
  Matrix m(n);
  for (std::size_t i = 0; i < j.size(); ++i) m.a[i] = parse_entry(F, j[i]);
  return m;
}

inline json to_json(const FiniteField& F, const Matrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.n; ++i) {
    json row = json::array();
    for (int k = 0; k < m.n; ++k) row.push_back(entry_json(F, m.at(i, k)));
    rows.push_back(row);
  }
  return rows;
}

struct GeneratorSet {
  int n = 0;
  std::vector<Matrix> generators;
};

inline GeneratorSet parse_generators(const FiniteField& F, const json& j) {
  GeneratorSet g;
  g.n = j.at("n").get<int>();
  if (g.n < 1 || g.n > kMaxMatrixDim) throw std::invalid_argument("n must lie in [1, 6]");
  for (const auto& m : j.at("generators")) g.generators.push_back(parse_matrix(F, g.n, m));
  return g;
}

struct GeneratorFile {
  FieldSpec field;
  GeneratorSet rho;
  std::optional<GeneratorSet> theta;
  std::optional<GeneratorSet> group;
};

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

inline GeneratorFile parse_generator_file(const json& j) {
  try {
    GeneratorFile f;
    f.field = parse_field(j.at("field"));
    const FiniteField F(f.field);
    f.rho = parse_generators(F, j);
    if (j.contains("theta")) f.theta = parse_generators(F, j.at("theta"));
    if (j.contains("group")) f.group = parse_generators(F, j.at("group"));
    return f;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed generator file: ") + e.what());
  }
}

inline json generator_file_json(const FieldSpec& spec, int n, const std::vector<Matrix>& gens) {
  const FiniteField F(spec);
  json gs = json::array();
  for (const auto& g : gens) {
    json flat = json::array();
    for (Elem x : g.a) flat.push_back(entry_json(F, x));
    gs.push_back(flat);
  }
  return {{"field", to_json(spec)}, {"n", n}, {"generators", gs}};
}

// ---- reports ---------------------------------------------------------------

inline json to_json(const FiniteField& F, const Check& c) {
  json j{{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}};
  if (c.witness_index) j["witnessIndex"] = *c.witness_index;
  if (!c.witness.empty()) {
    json w = json::array();
    for (const auto& m : c.witness) w.push_back(to_json(F, m));
    j["witness"] = w;
  }
  return j;
}

inline json to_json(const FiniteField& F, const LemmaReport& r) {
  json pre = json::array(), con = json::array();
  for (const auto& c : r.preconditions) pre.push_back(to_json(F, c));
  for (const auto& c : r.conclusions) con.push_back(to_json(F, c));
  return {{"lemma", r.lemma},
          {"preconditionsMet", r.preconditions_met()},
          {"holds", r.holds()},
          {"preconditions", pre},
          {"conclusions", con}};
}

inline json envelope(const std::string& command, json params, json payload, double elapsed_ms) {
  return {{"schemaVersion", kSchemaVersion},
          {"command", command},
          {"params", std::move(params)},
          {"payload", std::move(payload)},
          {"elapsedMs", static_cast<std::int64_t>(elapsed_ms)}};
}

}  // namespace modp::io
