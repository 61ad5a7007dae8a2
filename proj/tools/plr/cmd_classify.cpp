#include <algorithm>
#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "plr/syntax.hpp"

namespace plr::cli {
namespace {

// The class first and its named subsumers by name; Bot and Top close the line.
std::string subsumer_line(const SaturationIndex& index, Symbol cls) {
  std::vector<std::string> named;
  bool bot = false;
  for (Symbol s : index.subsumers(cls)) {
    if (s == cls || s.is_top()) continue;
    if (s.is_bot()) {
      bot = true;
    } else {
      named.push_back(s.str());
    }
  }
  std::sort(named.begin(), named.end());
  std::string line = cls.str();
  for (const auto& n : named) line += " " + n;
  if (bot && !cls.is_bot()) line += " Bot";
  if (!cls.is_top()) line += " Top";
  return line;
}

}  // namespace

CLI::App* add_classify(CLI::App& app, ClassifyOptions& o) {
  auto* cmd = app.add_subcommand("classify", "Print saturated subsumers from an oracle ontology");
  cmd->add_option("--oracle", o.oracle, "Oracle ontology (.horn)")->required();
  cmd->add_option("--class", o.cls, "Only this class");
  return cmd;
}

int run_classify(const ClassifyOptions& o) {
  const OracleOntology onto = parse_file<OracleOntology>(o.oracle, parse_oracle_ontology);
  const SaturationIndex index = SaturationIndex::build(onto);
  if (!o.cls.empty()) {
    if (!is_valid_name(o.cls)) throw UsageError("'" + o.cls + "' is not a valid class name");
    const Symbol cls = Symbol::intern(o.cls);
    // In an empty ontology every name is trivially classified.
    if (!onto.axioms.empty() && !index.knows(cls)) {
      std::cerr << "error: unknown class " << o.cls << '\n';
      return kUnknownClass;
    }
    std::cout << subsumer_line(index, cls) << '\n';
    return kOk;
  }
  for (Symbol cls : index.concept_names()) std::cout << cls.str() << ": " << subsumer_line(index, cls) << '\n';
  return kOk;
}

}  // namespace plr::cli
