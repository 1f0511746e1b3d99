// modp_lab: command-line front end for the exponent, theorem and group engines.
//
// Exit codes: 0 success, 1 internal invariant failure or counterexample,
// 2 input error, 3 resource cap.

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "modp_lab/io.hpp"
#include "modp_lab/weights.hpp"

using namespace modp;
using io::json;

namespace {

enum Exit { kOk = 0, kInvariant = 1, kInput = 2, kCap = 3 };

std::vector<i64> parse_list(const std::string& text, const char* what) {
  std::vector<i64> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(item, &used));
      if (used != item.size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw std::invalid_argument(std::string("malformed ") + what + ": '" + text + "'");
    }
  }
  if (out.empty()) throw std::invalid_argument(std::string("malformed ") + what + ": empty list");
  return out;
}

class Timer {
 public:
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0_).count();
  }

 private:
  std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

void emit(const std::string& command, json params, json payload, const Timer& t) {
  std::cout << io::envelope(command, std::move(params), std::move(payload), t.ms()).dump(2) << "\n";
}

i64 default_budget() {
  if (const char* env = std::getenv("MODP_LAB_BUDGET")) {
    try {
      std::size_t used = 0;
      const long long v = std::stoll(env, &used);
      if (used == std::string(env).size() && v > 0) return v;
    } catch (const std::exception&) {
    }
    throw std::invalid_argument("MODP_LAB_BUDGET must be a positive integer");
  }
  return kDefaultInstanceBudget;
}

struct PairInput {
  FieldPtr field;
  io::GeneratorFile file;
};

PairInput load_pair_file(const std::string& path, bool need_theta) {
  PairInput in;
  in.file = io::parse_generator_file(io::read_json_file(path));
  if (need_theta && !in.file.theta) throw std::invalid_argument(path + ": pair file needs a \"theta\" section");
  in.field = make_field(in.file.field);
  return in;
}

RepresentationPair build_pair(const PairInput& in, std::size_t cap) {
  return RepresentationPair::build(in.field, in.file.rho.generators, in.file.theta->generators,
                                   in.file.group ? in.file.group->generators : std::vector<Matrix>{}, cap);
}

int lemma_exit(const LemmaReport& r) {
  if (!r.preconditions_met()) return kInput;
  return r.holds() ? kOk : kInvariant;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact exponent combinatorics and finite matrix group checks"};
  app.require_subcommand(1);

  // breuil-enumerate
  i64 be_p = 0, be_r = 0;
  int be_d = 0;
  std::string be_allowed, be_format = "json";
  auto* be = app.add_subcommand("breuil-enumerate", "Niveau-1 rank-one profiles with both kappa0 formulas");
  be->add_option("--p", be_p, "odd prime")->required();
  be->add_option("--d", be_d, "niveau")->required();
  be->add_option("--r", be_r, "weight bound")->required();
  be->add_option("--allowed", be_allowed, "comma-separated x values (default: all of [0, p-2])");
  be->add_option("--format", be_format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  // rep-regular
  i64 rr_p = 0, rr_r = 0;
  std::string rr_rep;
  auto* rr = app.add_subcommand("rep-regular", "Exponents, determinant on inertia and r-regularity of a rep");
  rr->add_option("--p", rr_p, "odd prime")->required();
  rr->add_option("--r", rr_r, "regularity parameter")->required();
  rr->add_option("--rep", rr_rep, "summands d:kappa,d:kappa,...")->required();

  // verify-theorem
  i64 vt_p = 0, vt_r = 0, vt_budget = 0;
  int vt_n = 0;
  unsigned vt_workers = std::max(1u, std::thread::hardware_concurrency());
  std::string vt_type;
  bool vt_all = false, vt_no_big = false, vt_no_dedup = false;
  auto* vt = app.add_subcommand("verify-theorem", "Exhaustive search for r-regular reps meeting every hypothesis");
  vt->add_option("--p", vt_p, "prime")->required();
  vt->add_option("--n", vt_n, "dimension")->required();
  vt->add_option("--r", vt_r, "Hodge-Tate bound")->required();
  auto* vt_type_opt = vt->add_option("--type", vt_type, "inertial type a,b,c");
  vt->add_flag("--all-types", vt_all, "every inertial type (default)")->excludes(vt_type_opt);
  vt->add_option("--budget", vt_budget, "candidate reps allowed per type (env MODP_LAB_BUDGET)");
  vt->add_option("--workers", vt_workers, "worker threads")->check(CLI::PositiveNumber);
  vt->add_flag("--no-big-subquotient", vt_no_big, "diagnostic: drop the big-subquotient hypothesis");
  vt->add_flag("--no-dedup", vt_no_dedup, "keep Frobenius-conjugate summands separately");

  // group
  auto* grp = app.add_subcommand("group", "Finite matrix group checks");
  grp->require_subcommand(1);
  std::string g_file, g_mode = "induced", g_lemma = "containment", g_psi;
  std::uint64_t g_q = 0;
  int g_n = 0;
  std::size_t g_cap = kDefaultClosureCap;

  auto add_file = [&](CLI::App* sc) {
    sc->add_option("--gens", g_file, "generator JSON file")->required();
    sc->add_option("--cap", g_cap, "closure size cap");
  };
  auto* g_rg = grp->add_subcommand("regular-generated", "Is the group generated by its regular elements");
  add_file(g_rg);
  auto* g_ann = grp->add_subcommand("annihilation", "Does char(rho(g)) kill theta(g) for all g");
  add_file(g_ann);
  auto* g_ker = grp->add_subcommand("kernels", "Kernel containment or union-of-kernels lemma");
  add_file(g_ker);
  g_ker->add_option("--lemma", g_lemma, "containment or union")->check(CLI::IsMember({"containment", "union"}));
  auto* g_reg = grp->add_subcommand("regular-lemma", "Regular-element lemma on a generator file");
  add_file(g_reg);
  g_reg->add_option("--mode", g_mode, "induced or unipotent")->check(CLI::IsMember({"induced", "unipotent"}));
  auto* g_mono = grp->add_subcommand("monomial-verify", "Build Ind psi monomially and check the induced mode");
  g_mono->add_option("--q", g_q, "field order")->required();
  g_mono->add_option("--psi", g_psi, "exponents of psi on the diagonal, e.g. 1,2,4")->required();
  g_mono->add_option("--cap", g_cap, "closure size cap");
  auto* g_aw = grp->add_subcommand("admissible-weights", "Restricted weights passing the eigenvalue congruence");
  g_aw->add_option("--q", g_q, "field order")->required();
  g_aw->add_option("--n", g_n, "rank")->required();
  auto* g_it = grp->add_subcommand("intertwiner", "Invertible T with rho(g) T = T theta(g)");
  g_it->add_option("--gens", g_file, "pair JSON file")->required();
  auto* g_det = grp->add_subcommand("det-agreement", "det theta = a_n from the char polys of rho");
  add_file(g_det);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInput;
  }

  Timer timer;
  try {
    if (*be) {
      const TameParams tp(be_p, be_d);
      std::vector<i64> allowed;
      if (be_allowed.empty()) {
        for (i64 x = 0; x <= be_p - 2; ++x) allowed.push_back(x);
      } else {
        allowed = parse_list(be_allowed, "--allowed");
      }
      if (be_r < 0 || be_r > be_p - 2) throw std::invalid_argument("r must lie in [0, p-2]");
      json records = json::array();
      bool all_agree = true;
      std::ostringstream csv;
      csv << "p,d,r,x,y,kappa0,kappa0_lemma,agree\n";
      auto join = [](const std::vector<i64>& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
        return s;
      };
      for_each_profile(tp, be_r, allowed, [&](const Niveau1Profile& prof) {
        json rec = io::profile_record(prof);
        all_agree = all_agree && rec["agree"].get<bool>();
        if (be_format == "csv") {
          csv << be_p << ',' << be_d << ',' << be_r << ',' << join(prof.x_vec) << ',' << join(prof.y_vec) << ','
              << rec["kappa0"] << ',' << rec["kappa0Lemma"] << ',' << (rec["agree"].get<bool>() ? "true" : "false")
              << "\n";
        } else {
          records.push_back(std::move(rec));
        }
      });
      if (!all_agree) {
        if (be_format == "csv") std::cout << csv.str();
        throw invariant_error("kappa0 formulas disagree on some profile");
      }
      if (be_format == "csv") {
        std::cout << csv.str();
      } else {
        const auto count = records.size();
        emit("breuil-enumerate", {{"p", be_p}, {"d", be_d}, {"r", be_r}, {"allowed", allowed}},
             {{"count", count}, {"records", std::move(records)}}, timer);
      }
      return kOk;
    }

    if (*rr) {
      (void)TameParams(rr_p, 1);
      if (rr_r < 0) throw std::invalid_argument("r must be >= 0");
      const ResidualRep rep = parse_rep(rr_rep, rr_p);
      json payload = io::to_json(rep);
      payload["r"] = rr_r;
      payload["regular"] = is_r_regular(rep, rr_r);
      emit("rep-regular", {{"p", rr_p}, {"r", rr_r}, {"rep", rr_rep}}, std::move(payload), timer);
      return kOk;
    }

    if (*vt) {
      VerifyOptions opts;
      opts.budget = vt_budget > 0 ? vt_budget : default_budget();
      opts.big_subquotient_filter = !vt_no_big;
      opts.dedup_orbits = !vt_no_dedup;
      opts.workers = vt_workers;
      std::vector<InertialType> types;
      if (!vt_type.empty()) types.emplace_back(vt_p, parse_list(vt_type, "--type"));
      const auto report = exhaustive_verify(vt_p, vt_n, vt_r, types, opts);
      json params{{"p", vt_p},
                  {"n", vt_n},
                  {"r", vt_r},
                  {"type", vt_type.empty() ? json("all") : json(vt_type)},
                  {"budget", opts.budget},
                  {"bigSubquotientFilter", opts.big_subquotient_filter},
                  {"dedupOrbits", opts.dedup_orbits}};
      json payload = io::to_json(report);
      emit("verify-theorem", std::move(params), std::move(payload), timer);
      return report.counterexamples.empty() ? kOk : kInvariant;
    }

    if (*grp) {
      if (*g_aw) {
        json ws = json::array();
        for (const auto& w : admissible_weights(g_q, g_n)) ws.push_back(w);
        emit("group admissible-weights", {{"q", g_q}, {"n", g_n}}, {{"weights", ws}}, timer);
        return kOk;
      }
      if (*g_mono) {
        auto field = make_field(g_q);
        const auto psi = parse_list(g_psi, "--psi");
        const auto mono = build_monomial_induction(field, psi);
        const int n = static_cast<int>(psi.size());
        const auto G = GeneratedGroup::closure(field, n, mono.generators, g_cap);
        const auto rep = verify_regular_lemma(G, RegularLemmaMode::induced);
        json payload{{"order", G.order()},
                     {"reducible", mono.reducible},
                     {"generators", io::generator_file_json(field->spec(), n, mono.generators)},
                     {"report", io::to_json(*field, rep)}};
        if (mono.reducible) {
          payload["warning"] = mono.warning;
          std::cerr << "warning: " << mono.warning << "\n";
        }
        emit("group monomial-verify", {{"q", g_q}, {"psi", psi}}, std::move(payload), timer);
        return lemma_exit(rep);
      }

      const json params{{"gens", g_file}};
      if (*g_rg || *g_reg) {
        const auto in = load_pair_file(g_file, false);
        const auto G = GeneratedGroup::closure(in.field, in.file.rho.n, in.file.rho.generators, g_cap);
        if (*g_rg) {
          const auto H = regular_subgroup(G);
          json payload{{"order", G.order()}, {"regularSubgroupOrder", H.order()}, {"regularGenerated", is_regular_generated(G)}};
          if (H.order() != G.order())
            for (std::size_t i = 0; i < G.order(); ++i)
              if (!H.contains(G.elements()[i])) {
                payload["witnessIndex"] = i;
                payload["witness"] = io::to_json(*in.field, G.elements()[i]);
                break;
              }
          emit("group regular-generated", params, std::move(payload), timer);
          return kOk;
        }
        const auto mode = g_mode == "induced" ? RegularLemmaMode::induced : RegularLemmaMode::unipotent;
        const auto rep = verify_regular_lemma(G, mode);
        emit("group regular-lemma", {{"gens", g_file}, {"mode", g_mode}},
             {{"order", G.order()}, {"report", io::to_json(*in.field, rep)}}, timer);
        return lemma_exit(rep);
      }

      const auto in = load_pair_file(g_file, true);
      if (*g_it) {
        const auto T = find_intertwiner(*in.field, in.file.rho.generators, in.file.theta->generators);
        json payload{{"found", T.has_value()},
                     {"rhoDim", in.file.rho.n},
                     {"thetaDim", in.file.theta->n}};
        if (T) payload["intertwiner"] = io::to_json(*in.field, *T);
        emit("group intertwiner", params, std::move(payload), timer);
        return kOk;
      }
      const auto pair = build_pair(in, g_cap);
      if (*g_ann) {
        const auto c = annihilation_holds(pair);
        json payload = io::to_json(*in.field, c);
        payload["holds"] = c.passed;
        payload["order"] = pair.order();
        emit("group annihilation", params, std::move(payload), timer);
        return kOk;
      }
      if (*g_ker) {
        const auto rep = g_lemma == "union" ? union_of_kernels(pair) : kernel_containment(pair);
        json payload{{"order", pair.order()}, {"report", io::to_json(*in.field, rep)}};
        if (g_lemma == "union") payload["thetaIsSummand"] = theta_is_summand(pair);
        emit("group kernels", {{"gens", g_file}, {"lemma", g_lemma}}, std::move(payload), timer);
        return lemma_exit(rep);
      }
      if (*g_det) {
        const auto rep = det_agreement_from_rho(pair);
        emit("group det-agreement", params, {{"order", pair.order()}, {"report", io::to_json(*in.field, rep)}},
             timer);
        return lemma_exit(rep);
      }
    }
  } catch (const invariant_error& e) {
    std::cerr << "internal invariant failure: " << e.what() << "\n";
    return kInvariant;
  } catch (const BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kCap;
  } catch (const CapExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kCap;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInvariant;
  }
  return kInput;
}
