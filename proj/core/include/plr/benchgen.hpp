#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "plr/concept.hpp"
#include "plr/horn.hpp"
#include "plr/knowledge_base.hpp"
#include "plr/normalizer.hpp"
#include "plr/oracle.hpp"

namespace plr {

/// Deterministic 64-bit generator (splitmix64). Bounded draws use rejection
/// sampling so output does not depend on the standard library's distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();
  /// Uniform in [lo, hi]; requires lo <= hi.
  std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi);
  /// Uniform index in [0, n); requires n > 0.
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(uniform(0, n - 1)); }
  bool chance(double p);

  /// Seed of an independent stream derived from `seed` and a path of labels.
  static std::uint64_t derive(std::uint64_t seed, std::initializer_list<std::uint64_t> path);

 private:
  std::uint64_t state_;
};

struct KBParams {
  std::size_t roles = 0;
  std::size_t properties = 0;
  /// The number of func axioms is drawn uniformly from [2·avg − max, max].
  std::size_t func_avg = 0;
  std::size_t func_max = 0;
  std::size_t range_axioms = 0;

  /// K1, K2, K3; throws std::invalid_argument otherwise.
  static KBParams preset(std::string_view name);
};

struct PolicyParams {
  std::size_t simple_per_full = 10;
  std::size_t max_width = 10;        // conjuncts per conjunction
  std::size_t max_depth = 4;         // existential nesting
  std::size_t max_classes = 30;      // concept names per simple policy
  std::size_t exists_per_level = 3;  // existentials per conjunction
  std::size_t max_intervals = 8;     // interval atoms per simple policy
  std::uint64_t max_interval_length = 50;
  /// Interval lower bounds are drawn from [0, value_span]; 0 = 2 · max_interval_length.
  std::uint64_t value_span = 0;
  /// Exact number of interval atoms per simple policy after normalization;
  /// unset draws uniformly from [0, max_intervals].
  std::optional<std::size_t> target_intervals;
  std::size_t max_retries = 200;

  /// P1, P2, P3; throws std::invalid_argument otherwise.
  static PolicyParams preset(std::string_view name);
};

struct MutationParams {
  double delete_conjunct = 0.2;
  double generalize = 0.2;  // superclass replacement, interval widening
  double specialize = 0.1;  // subclass replacement, interval narrowing
  double add_disjunct = 0.1;

  /// Only the mutations that keep the business policy compliant.
  static MutationParams generalizing_only() { return {0.2, 0.2, 0.0, 0.1}; }
  static MutationParams none() { return {0.0, 0.0, 0.0, 0.0}; }
};

/// Names the generator draws from.
struct Vocabulary {
  std::vector<Symbol> roles;       // main-KB roles
  std::vector<Symbol> properties;  // main-KB concrete properties
  std::vector<Symbol> classes;     // oracle concept names
};

struct GeneratedKB {
  MainKB kb;
  std::vector<Symbol> roles;
  std::vector<Symbol> properties;
};

/// Roles `role<i>`, properties `prop<i>`, func over both, range axioms on
/// distinct roles with classes drawn from `classes` (or fresh `Range<i>`
/// names when empty). No inclusion or disjointness axioms.
GeneratedKB gen_main_kb(const KBParams& params, const std::vector<Symbol>& classes, Rng& rng);

struct SyntheticOracleParams {
  std::size_t classes = 1000;
  std::size_t height = 10;
  double extra_parent = 0.7;  // probability of a second parent
  std::size_t disjoint_pairs = 0;
  std::size_t roles = 0;             // oracle-only roles `orole<i>`
  std::size_t existential_axioms = 0;
};

/// Layered random DAG over classes `C<i>` with sprinkled sibling disjointness
/// and optional existential axioms over oracle-only roles.
OracleOntology gen_synthetic_oracle(const SyntheticOracleParams& params, Rng& rng);

struct GeneratedPolicy {
  FullConcept policy;
  std::size_t discarded = 0;  // inconsistent draws thrown away
  std::size_t ni = 0;         // max interval atoms in a normalized disjunct
};

struct Consent {
  FullConcept policy;
  std::vector<std::string> log;
};

/// Draws business policies and consent mutations against one main KB and
/// oracle. Each generation phase draws from its own stream, so
/// varying only `target_intervals` leaves every name choice unchanged.
class PolicyGenerator {
 public:
  /// Throws SignatureViolation, OracleFailure as Engine::build.
  PolicyGenerator(const MainKB& kb, const Oracle& oracle, Vocabulary vocabulary, PolicyParams params);

  /// Throws GenerationFailure when a consistent disjunct cannot be drawn
  /// within the retry cap, std::invalid_argument on an empty class list.
  GeneratedPolicy business(std::uint64_t seed) const;

  /// Consent derived from the business policy drawn with the same `seed`.
  Consent consent(std::uint64_t seed, const MutationParams& mutation) const;

  const PolicyParams& params() const { return params_; }
  const Oracle& oracle() const { return oracle_; }
  const Normalizer& normalizer() const { return normalizer_; }

  struct Draft;

 private:
  Draft draw_structure(Rng& rng, std::size_t depth, std::size_t& classes) const;
  bool place_intervals(Draft& d, std::size_t count, Rng& rng) const;
  std::optional<Draft> draw_disjunct(std::uint64_t seed, std::size_t& discarded) const;
  std::size_t normalized_intervals(const Concept& c) const;

  MainKB k_minus_;
  Oracle oracle_;
  Normalizer normalizer_;
  Vocabulary vocab_;
  PolicyParams params_;
};

struct SuiteParams {
  KBParams kb;
  PolicyParams policy;
  MutationParams mutation;
  std::uint64_t seed = 0;
  std::size_t count = 0;
  /// One query per (index, target); empty = one query per index with
  /// `policy.target_intervals`.
  std::vector<std::size_t> ni_targets;
  /// Expected answers come from ref_decide when the split lhs has at most
  /// this many disjuncts; 0 disables.
  std::size_t expected_limit = 2000;
};

struct ManifestEntry {
  std::string lhs;
  std::string rhs;
  std::string kb;
  std::string oracle;
  std::uint64_t seed = 0;
  std::size_t ni = 0;
  std::optional<bool> expected;
};

/// Writes `kb.plkb`, `oracle.horn`, `queries/*.plp` and `manifest.txt` under
/// `out_dir`. Paths in the manifest are relative to it. Throws
/// std::filesystem::filesystem_error / std::runtime_error on I/O errors.
std::vector<ManifestEntry> gen_suite(const SuiteParams& params, const OracleOntology& oracle,
                                     const std::filesystem::path& out_dir);

/// One record per line:
///   lhs=… rhs=… kb=… oracle=… seed=N ni=N expected=true|false|unknown
/// `#` lines are comments.
std::string serialize_manifest(const std::vector<ManifestEntry>& entries);
/// Throws ParseError on malformed records.
std::vector<ManifestEntry> parse_manifest(std::string_view text);

}  // namespace plr
