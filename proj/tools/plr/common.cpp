#include "common.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "plr/error.hpp"
#include "plr/syntax.hpp"

namespace plr::cli {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FileError("cannot write " + path.string());
  out << text;
  if (!out.flush()) throw FileError("cannot write " + path.string());
}

void rethrow_with_file(const std::string& file) {
  try {
    throw;
  } catch (const ParseError& e) {
    throw FileParseError(file + ":" + e.what());
  }
}

Oracle load_oracle(const OracleSource& source) {
  if (source.file.empty() == source.command.empty()) {
    throw UsageError("exactly one of --oracle and --oracle-cmd is required");
  }
  if (!source.file.empty()) {
    if (!source.signature_file.empty()) throw UsageError("--oracle-sig only applies to --oracle-cmd");
    return Oracle::builtin(parse_file<OracleOntology>(source.file, parse_oracle_ontology));
  }
  ExternalOracleOptions options;
  options.command = split_command(source.command);
  if (options.command.empty()) throw UsageError("--oracle-cmd is empty");
  if (!source.signature_file.empty()) {
    options.declared_signature = parse_file<Signature>(source.signature_file, parse_signature);
  } else {
    std::cerr << "warning: no --oracle-sig given; role separation against the oracle is not checked\n";
  }
  if (auto timeout = env_oracle_timeout()) options.timeout = *timeout;
  return external_oracle(std::move(options));
}

namespace {

std::optional<std::uint64_t> env_number(const char* name) {
  const char* raw = std::getenv(name);
  if (raw == nullptr || *raw == '\0') return std::nullopt;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(raw, &end, 10);
  if (*end != '\0') throw UsageError(std::string(name) + " must be a non-negative integer");
  return v;
}

}  // namespace

std::size_t env_cache_cap() { return env_number("PLR_CACHE_CAP").value_or(0); }

std::optional<std::chrono::milliseconds> env_oracle_timeout() {
  if (auto v = env_number("PLR_ORACLE_TIMEOUT_MS")) return std::chrono::milliseconds(*v);
  return std::nullopt;
}

int guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const FileParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kParse;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kParse;
  } catch (const SignatureViolation& e) {
    std::cerr << "signature violation: " << e.what() << '\n';
    return kSignature;
  } catch (const OracleFailure& e) {
    std::cerr << "oracle failure: " << e.what() << '\n';
    return kOracle;
  } catch (const FileError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFile;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFile;
  } catch (const GenerationFailure& e) {
    std::cerr << "generation failed: " << e.what() << '\n';
    return kParse;
  } catch (const ResourceLimit& e) {
    std::cerr << "resource limit: " << e.what() << '\n';
    return kResource;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternal;
  }
}

}  // namespace plr::cli
