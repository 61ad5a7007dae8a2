#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"

int main(int argc, char** argv) {
  using namespace plr::cli;

  CLI::App app{"Policy compliance checking with import-by-query oracles"};
  app.require_subcommand(1);

  CheckOptions check;
  BenchOptions bench;
  GenOptions gen;
  ClassifyOptions classify;
  auto* check_cmd = add_check(app, check);
  auto* bench_cmd = add_bench(app, bench);
  auto* gen_cmd = add_gen(app, gen);
  auto* classify_cmd = add_classify(app, classify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  if (check_cmd->parsed()) return guarded([&] { return run_check(check); });
  if (bench_cmd->parsed()) return guarded([&] { return run_bench(bench); });
  if (gen_cmd->parsed()) return guarded([&] { return run_gen(gen); });
  if (classify_cmd->parsed()) return guarded([&] { return run_classify(classify); });
  return kUsage;
}
