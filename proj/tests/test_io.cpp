#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "modp_lab/io.hpp"

using namespace modp;
using io::json;

namespace {

std::string fixture(const std::string& name) { return std::string(MODP_LAB_FIXTURES) + "/" + name; }

io::GeneratorFile load(const std::string& name) { return io::parse_generator_file(io::read_json_file(fixture(name))); }

std::string write_temp(const std::string& name, const std::string& body) {
  const auto path = std::filesystem::temp_directory_path() / ("modp_lab_io_" + name);
  std::ofstream(path) << body;
  return path.string();
}

}  // namespace

TEST(RepJson, Fields) {
  const auto j = io::to_json(parse_rep("1:0,1:5", 7));
  EXPECT_EQ(j["p"], 7);
  EXPECT_EQ(j["exponents"], json({0, 5}));
  EXPECT_EQ(j["detInertia"], 5);
  EXPECT_EQ(j["summands"].size(), 2u);
  EXPECT_EQ(j["summands"][1]["digits"], json({5}));
  const auto two = io::to_json(parse_rep("2:8", 5));
  EXPECT_EQ(two["summands"][0]["digits"], json({3, 1}));
}

TEST(ReportJson, VerificationAndProfiles) {
  const auto rep = exhaustive_verify(7, 3, 0, all_types(7, 3), VerifyOptions{});
  const auto j = io::to_json(rep);
  EXPECT_EQ(j["repsChecked"], 326);
  EXPECT_EQ(j["repsApplicable"], 48);
  EXPECT_TRUE(j["counterexamples"].empty());
  for (const auto& prof : enumerate_profiles(TameParams(5, 2), 1, {1, 2})) {
    const auto rec = io::profile_record(prof);
    EXPECT_TRUE(rec["agree"].get<bool>());
    EXPECT_EQ(rec["kappa0"], rec["kappa0Lemma"]);
  }
}

TEST(GeneratorFile, Fixtures) {
  const auto a4 = load("a4_f7.json");
  EXPECT_EQ(a4.field.characteristic, 7u);
  EXPECT_EQ(a4.rho.n, 3);
  ASSERT_TRUE(a4.theta.has_value());
  EXPECT_EQ(a4.theta->n, 1);
  const auto P = RepresentationPair::build(make_field(a4.field), a4.rho.generators, a4.theta->generators);
  EXPECT_EQ(P.order(), 12u);

  const auto f4 = load("monomial_f4.json");
  EXPECT_EQ(f4.field.modulus, (std::vector<std::uint32_t>{1, 1, 1}));
  EXPECT_EQ(GeneratedGroup::closure(make_field(f4.field), f4.rho.n, f4.rho.generators).order(), 27u);
  const auto s3 = load("s3_sign_f7.json");
  EXPECT_EQ(GeneratedGroup::closure(make_field(s3.field), s3.rho.n, s3.rho.generators).order(), 6u);
  for (const char* name : {"klein4_f7.json", "monomial_f7.json", "sl3_f3.json"}) EXPECT_NO_THROW(load(name)) << name;
}

TEST(GeneratorFile, RoundTrip) {
  for (std::uint64_t q : {4, 7, 9}) {
    const auto spec = field_spec_for_order(q);
    auto F = make_field(spec);
    const auto mono = build_monomial_induction(F, {1, 2, 0});
    const auto back = io::parse_generator_file(io::generator_file_json(spec, 3, mono.generators));
    EXPECT_EQ(back.field.modulus, spec.modulus);
    EXPECT_EQ(back.rho.generators, mono.generators);
  }
}

TEST(GeneratorFile, EntriesAndMatrices) {
  auto F9 = make_field(9);
  EXPECT_EQ(io::parse_entry(*F9, json(-1)), F9->neg(1));
  EXPECT_EQ(io::parse_entry(*F9, json({1, 1})), 4u);
  EXPECT_EQ(io::entry_json(*F9, 4u), json({1, 1}));
  EXPECT_THROW(io::parse_entry(*F9, json("x")), std::invalid_argument);
  EXPECT_THROW(io::parse_matrix(*F9, 2, json({1, 0, 0})), std::invalid_argument);
  for (Elem x = 0; x < 9; ++x) EXPECT_EQ(io::parse_entry(*F9, io::entry_json(*F9, x)), x);
  const auto rows = io::to_json(*F9, mat::jordan_block(2, 4));
  EXPECT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0][0], io::entry_json(*F9, 4));
  EXPECT_EQ(rows[1][0], io::entry_json(*F9, 0));
}

TEST(GeneratorFile, Malformed) {
  EXPECT_THROW(io::read_json_file("/nonexistent/gens.json"), std::invalid_argument);
  EXPECT_THROW(io::read_json_file(write_temp("bad.json", "{ not json")), std::invalid_argument);
  const char* bodies[] = {
      R"({"n": 2, "generators": [[1,0,0,1]]})",
      R"({"field": {"char": 7}, "generators": [[1,0,0,1]]})",
      R"({"field": {"char": 7}, "n": 2, "generators": [[1,0,0]]})",
      R"({"field": {"char": 7}, "n": 9, "generators": []})",
      R"({"field": {"char": 6}, "n": 2, "generators": [[1,0,0,1]]})",
      R"({"field": {"char": 3, "degree": 2, "modulus": [2,0,1]}, "n": 2, "generators": [[1,0,0,1]]})",
      R"({"field": {"char": 7}, "n": 2, "generators": [[1,0,0,1]], "theta": {"n": 1}})",
  };
  for (const char* body : bodies) EXPECT_THROW(io::parse_generator_file(json::parse(body)), std::invalid_argument) << body;
}

TEST(ReportJson, LemmaWitness) {
  const auto s3 = load("s3_sign_f7.json");
  auto F = make_field(s3.field);
  const auto P = RepresentationPair::build(F, s3.rho.generators, s3.theta->generators);
  const auto j = io::to_json(*F, kernel_containment(P));
  EXPECT_FALSE(j["preconditionsMet"].get<bool>());
  EXPECT_FALSE(j["holds"].get<bool>());
  const auto& ann = j["preconditions"][0];
  EXPECT_EQ(ann["name"], "annihilation");
  EXPECT_TRUE(ann.contains("witnessIndex"));
  EXPECT_EQ(ann["witness"].size(), 2u);

  const auto env = io::envelope("group annihilation", {{"gens", "x"}}, j, 1.7);
  EXPECT_EQ(env["schemaVersion"], io::kSchemaVersion);
  EXPECT_EQ(env["elapsedMs"], 1);
  EXPECT_EQ(env["payload"], j);
}
