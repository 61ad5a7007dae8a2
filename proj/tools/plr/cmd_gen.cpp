#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "plr/benchgen.hpp"
#include "plr/error.hpp"
#include "plr/syntax.hpp"

namespace plr::cli {

CLI::App* add_gen(CLI::App& app, GenOptions& o) {
  auto* cmd = app.add_subcommand("gen", "Generate a synthetic benchmark suite");
  cmd->add_option("--preset", o.preset, "Main KB preset")->check(CLI::IsMember({"K1", "K2", "K3"}));
  cmd->add_option("--policy-preset", o.policy_preset, "Policy preset")->check(CLI::IsMember({"P1", "P2", "P3"}));
  cmd->add_option("--seed", o.seed, "Seed");
  cmd->add_option("--count", o.count, "Queries per interval target");
  cmd->add_option("--out", o.out, "Output directory")->required();
  cmd->add_option("--ni", o.ni, "Interval targets per simple policy, e.g. --ni 0,1,2")->delimiter(',');
  cmd->add_option("--oracle", o.oracle, "Oracle ontology (.horn) providing the vocabulary");
  cmd->add_option("--synthetic-classes", o.synthetic_classes, "Generate a synthetic oracle with this many classes");
  cmd->add_option("--synthetic-height", o.synthetic_height, "Hierarchy height of the synthetic oracle");
  cmd->add_option("--synthetic-disjoint", o.synthetic_disjoint, "Disjointness axioms in the synthetic oracle");
  cmd->add_option("--mutation", o.mutation, "Consent mutation profile")
      ->check(CLI::IsMember({"default", "generalizing", "none"}));
  cmd->add_option("--disjuncts", o.disjuncts, "Simple policies per business policy (0 = preset)");
  cmd->add_option("--expected-limit", o.expected_limit,
                  "Compute expected answers when the split lhs has at most this many disjuncts (0 = never)");
  return cmd;
}

int run_gen(const GenOptions& o) {
  if (o.oracle.empty() == (o.synthetic_classes == 0)) {
    throw UsageError("exactly one of --oracle and --synthetic-classes is required");
  }
  SuiteParams params;
  params.kb = KBParams::preset(o.preset);
  params.policy = PolicyParams::preset(o.policy_preset);
  if (o.disjuncts != 0) params.policy.simple_per_full = o.disjuncts;
  params.seed = o.seed;
  params.count = o.count;
  params.ni_targets = o.ni;
  params.expected_limit = o.expected_limit;
  if (o.mutation == "generalizing") {
    params.mutation = MutationParams::generalizing_only();
  } else if (o.mutation == "none") {
    params.mutation = MutationParams::none();
  }
  for (auto t : o.ni) {
    if (t > params.policy.max_intervals) {
      std::cerr << "error: --ni " << t << " exceeds the preset's " << params.policy.max_intervals << " intervals\n";
      return kParse;
    }
  }

  OracleOntology onto;
  if (!o.oracle.empty()) {
    onto = parse_file<OracleOntology>(o.oracle, parse_oracle_ontology);
  } else {
    SyntheticOracleParams sp;
    sp.classes = o.synthetic_classes;
    sp.height = o.synthetic_height;
    sp.disjoint_pairs = o.synthetic_disjoint;
    Rng rng(Rng::derive(o.seed, {0xC1A55}));
    onto = gen_synthetic_oracle(sp, rng);
  }
  if (onto.concept_names().empty()) {
    std::cerr << "error: the oracle has no concept names to draw policies from\n";
    return kParse;
  }

  std::vector<ManifestEntry> entries;
  try {
    entries = gen_suite(params, onto, o.out);
  } catch (const std::runtime_error& e) {
    if (dynamic_cast<const plr::Error*>(&e) != nullptr) throw;
    throw FileError(e.what());
  }
  std::cout << "wrote " << entries.size() << " queries to " << o.out << "/manifest.txt\n";
  return kOk;
}

}  // namespace plr::cli
