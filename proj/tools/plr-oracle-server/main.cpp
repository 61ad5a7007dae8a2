// Reference implementation of the external oracle line protocol, answering
// with the built-in saturation reasoner. The fault flags exist for tests.
#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "plr/error.hpp"
#include "plr/saturation.hpp"
#include "plr/syntax.hpp"

namespace {

std::string read_all(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Line-protocol oracle backed by the built-in reasoner"};
  std::string ontology_file;
  std::size_t fail_after = 0;
  std::size_t hang_after = 0;
  std::size_t exit_after = 0;
  bool reject_axioms = false;
  app.add_option("ontology", ontology_file, "Oracle ontology (.horn); empty when omitted");
  app.add_option("--fail-after", fail_after, "Answer 'E' to every query after this many");
  app.add_option("--hang-after", hang_after, "Stop answering after this many queries");
  app.add_option("--exit-after", exit_after, "Exit after this many queries");
  app.add_flag("--reject-axioms", reject_axioms, "Refuse every AX request");
  CLI11_PARSE(app, argc, argv);

  plr::OracleOntology onto;
  try {
    if (!ontology_file.empty()) onto = plr::parse_oracle_ontology(read_all(ontology_file));
  } catch (const std::exception& e) {
    std::cerr << "plr-oracle-server: " << e.what() << '\n';
    return 3;
  }

  std::optional<plr::SaturationIndex> index;
  std::size_t queries = 0;
  std::string line;
  while (std::getline(std::cin, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line == "QUIT") break;
    if (line.rfind("AX ", 0) == 0) {
      if (reject_axioms) {
        std::cout << "E axioms not accepted" << std::endl;
        continue;
      }
      try {
        for (const auto& ax : plr::parse_oracle_ontology(line.substr(3)).axioms) onto.add(ax);
        index.reset();
        std::cout << "1" << std::endl;
      } catch (const std::exception& e) {
        std::cout << "E " << e.what() << std::endl;
      }
      continue;
    }
    if (line.rfind("Q ", 0) == 0) {
      ++queries;
      if (exit_after != 0 && queries > exit_after) return 0;
      if (hang_after != 0 && queries > hang_after) {
        for (;;) std::this_thread::sleep_for(std::chrono::hours(1));
      }
      if (fail_after != 0 && queries > fail_after) {
        std::cout << "E injected failure" << std::endl;
        continue;
      }
      std::istringstream in(line.substr(2));
      std::vector<plr::Symbol> lhs;
      std::vector<plr::Symbol> rhs;
      bool right = false;
      bool ok = true;
      std::string tok;
      while (in >> tok) {
        if (tok == ":") {
          right = true;
        } else if (!plr::is_valid_name(tok)) {
          ok = false;
        } else if (right) {
          rhs.push_back(plr::Symbol::intern(tok));
        } else if (tok != "Top") {
          lhs.push_back(plr::Symbol::intern(tok));
        }
      }
      if (!ok || !right || rhs.empty()) {
        std::cout << "E malformed query" << std::endl;
        continue;
      }
      try {
        if (!index) index = plr::SaturationIndex::build(onto);
        std::cout << (index->entails_any(lhs, rhs) ? "1" : "0") << std::endl;
      } catch (const std::exception& e) {
        std::cout << "E " << e.what() << std::endl;
      }
      continue;
    }
    std::cout << "E unknown request" << std::endl;
  }
  return 0;
}
