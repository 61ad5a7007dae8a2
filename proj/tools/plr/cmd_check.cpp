#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "plr/syntax.hpp"
#include "report.hpp"

namespace plr::cli {

CLI::App* add_check(CLI::App& app, CheckOptions& o) {
  auto* cmd = app.add_subcommand("check", "Decide whether the business policy (lhs) complies with the consent (rhs)");
  cmd->add_option("--kb", o.kb, "Main knowledge base (.plkb)")->required();
  cmd->add_option("--lhs", o.lhs, "Business policy (.plp)")->required();
  cmd->add_option("--rhs", o.rhs, "Consent policy (.plp)")->required();
  cmd->add_option("--oracle", o.oracle.file, "Oracle ontology (.horn) for the built-in reasoner");
  cmd->add_option("--oracle-cmd", o.oracle.command, "External oracle command line");
  cmd->add_option("--oracle-sig", o.oracle.signature_file, "Declared signature of the external oracle");
  cmd->add_flag("--no-cache", o.no_cache, "Disable the normalization and oracle-query caches");
  cmd->add_option("--stats", o.stats, "Statistics format")->check(CLI::IsMember({"text", "json"}));
  cmd->add_flag("--exit-status", o.exit_status, "Exit 1 when not subsumed");
  return cmd;
}

int run_check(const CheckOptions& o) {
  const MainKB kb = parse_file<MainKB>(o.kb, parse_main_kb);
  const FullConcept lhs = parse_file<FullConcept>(o.lhs, parse_policy);
  const FullConcept rhs = parse_file<FullConcept>(o.rhs, parse_policy);
  const Oracle oracle = load_oracle(o.oracle);

  EngineConfig config;
  config.use_caches = !o.no_cache;
  config.cache_capacity = env_cache_cap();
  const Engine engine = Engine::build(kb, oracle, config);
  const CheckResult result = engine.check(lhs, rhs);

  if (o.stats == "json") {
    std::cout << stats_json(result).dump() << '\n';
  } else {
    std::cout << (result.answer ? "TRUE" : "FALSE") << '\n';
    print_text_stats(std::cout, result);
  }
  return o.exit_status && !result.answer ? kNotSubsumed : kOk;
}

}  // namespace plr::cli
