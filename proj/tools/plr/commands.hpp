#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "common.hpp"

namespace CLI {
class App;
}

namespace plr::cli {

struct CheckOptions {
  std::string kb;
  std::string lhs;
  std::string rhs;
  OracleSource oracle;
  bool no_cache = false;
  std::string stats = "text";
  bool exit_status = false;
};

struct BenchOptions {
  std::string suite;
  std::size_t repeat = 1;
  std::size_t warmup = 0;
  std::string report;
  unsigned threads = 1;
  bool no_cache = false;
  std::string cache_scope = "run";
  bool detail = false;
};

struct GenOptions {
  std::string preset = "K1";
  std::string policy_preset = "P1";
  std::uint64_t seed = 0;
  std::size_t count = 10;
  std::string out;
  std::vector<std::size_t> ni;
  std::string oracle;
  std::size_t synthetic_classes = 0;
  std::size_t synthetic_height = 10;
  std::size_t synthetic_disjoint = 0;
  std::string mutation = "default";
  std::size_t disjuncts = 0;  // 0 = preset value
  std::size_t expected_limit = 2000;
};

struct ClassifyOptions {
  std::string oracle;
  std::string cls;
};

CLI::App* add_check(CLI::App& app, CheckOptions& o);
CLI::App* add_bench(CLI::App& app, BenchOptions& o);
CLI::App* add_gen(CLI::App& app, GenOptions& o);
CLI::App* add_classify(CLI::App& app, ClassifyOptions& o);

int run_check(const CheckOptions& o);
int run_bench(const BenchOptions& o);
int run_gen(const GenOptions& o);
int run_classify(const ClassifyOptions& o);

}  // namespace plr::cli
