#include "plr/benchgen.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "hash_util.hpp"
#include "plr/error.hpp"
#include "plr/refcheck.hpp"
#include "plr/syntax.hpp"

namespace plr {

// ---- Rng -------------------------------------------------------------------

std::uint64_t Rng::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

std::uint64_t Rng::uniform(std::uint64_t lo, std::uint64_t hi) {
  const std::uint64_t span = hi - lo;
  if (span == std::numeric_limits<std::uint64_t>::max()) return next();
  const std::uint64_t bound = span + 1;
  const std::uint64_t threshold = (0 - bound) % bound;
  std::uint64_t x = next();
  while (x < threshold) x = next();
  return lo + x % bound;
}

bool Rng::chance(double p) {
  if (p <= 0.0) return false;
  if (p >= 1.0) return true;
  return static_cast<double>(next() >> 11) * 0x1.0p-53 < p;
}

std::uint64_t Rng::derive(std::uint64_t seed, std::initializer_list<std::uint64_t> path) {
  std::uint64_t h = detail::mix(0x5eed, seed);
  for (auto v : path) h = detail::mix(h, v);
  return h;
}

namespace {

// Stream labels
constexpr std::uint64_t kStructure = 1;
constexpr std::uint64_t kIntervals = 2;
constexpr std::uint64_t kMutateNames = 3;
constexpr std::uint64_t kMutateIntervals = 4;
constexpr std::uint64_t kAddDisjunct = 5;
constexpr std::uint64_t kQuery = 6;
constexpr std::uint64_t kMainKB = 7;

template <typename T>
std::vector<T> sample_distinct(const std::vector<T>& pool, std::size_t n, Rng& rng) {
  std::vector<T> items = pool;
  n = std::min(n, items.size());
  for (std::size_t i = 0; i < n; ++i) std::swap(items[i], items[i + rng.index(items.size() - i)]);
  items.resize(n);
  return items;
}

std::vector<Symbol> numbered(std::string_view prefix, std::size_t n) {
  std::vector<Symbol> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(Symbol::intern(std::string(prefix) + std::to_string(i)));
  return out;
}

}  // namespace

// ---- presets -----------------------------------------------------------------

KBParams KBParams::preset(std::string_view name) {
  if (name == "K1") return {10, 5, 5, 9, 5};
  if (name == "K2") return {30, 10, 15, 27, 15};
  if (name == "K3") return {50, 15, 25, 45, 25};
  throw std::invalid_argument("unknown main KB preset '" + std::string(name) + "' (expected K1, K2 or K3)");
}

PolicyParams PolicyParams::preset(std::string_view name) {
  PolicyParams p;
  if (name == "P1") {
    p.max_interval_length = 50;
  } else if (name == "P2") {
    p.max_interval_length = 80;
  } else if (name == "P3") {
    p.max_interval_length = 150;
  } else {
    throw std::invalid_argument("unknown policy preset '" + std::string(name) + "' (expected P1, P2 or P3)");
  }
  return p;
}

// ---- main KB and oracle --------------------------------------------------------

GeneratedKB gen_main_kb(const KBParams& params, const std::vector<Symbol>& classes, Rng& rng) {
  GeneratedKB out;
  out.roles = numbered("role", params.roles);
  out.properties = numbered("prop", params.properties);

  std::vector<Symbol> all = out.roles;
  all.insert(all.end(), out.properties.begin(), out.properties.end());
  if (params.func_max > 0 && !all.empty()) {
    const std::size_t lo = 2 * params.func_avg > params.func_max ? 2 * params.func_avg - params.func_max : 0;
    const std::size_t n = rng.uniform(lo, params.func_max);
    for (Symbol s : sample_distinct(all, n, rng)) out.kb.add_func(s);
  }
  const auto ranged = sample_distinct(out.roles, params.range_axioms, rng);
  for (std::size_t i = 0; i < ranged.size(); ++i) {
    const Symbol cls = classes.empty() ? Symbol::intern("Range" + std::to_string(i)) : classes[rng.index(classes.size())];
    out.kb.add_range(ranged[i], cls);
  }
  return out;
}

OracleOntology gen_synthetic_oracle(const SyntheticOracleParams& params, Rng& rng) {
  OracleOntology onto;
  const std::size_t n = params.classes;
  if (n == 0) return onto;
  const auto classes = numbered("C", n);
  const std::size_t height = std::min(params.height, n - 1);

  // Class i sits on level i·(h+1)/n; start[L] is the first index of level L.
  std::vector<std::size_t> level(n);
  std::vector<std::size_t> start(height + 2, n);
  for (std::size_t i = 0; i < n; ++i) {
    level[i] = i * (height + 1) / n;
    start[level[i]] = std::min(start[level[i]], i);
  }
  start[height + 1] = n;

  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t l = level[i];
    if (l == 0) continue;
    const std::size_t parent = start[l - 1] + rng.index(start[l] - start[l - 1]);
    onto.add(HornAxiom::sub(classes[i], classes[parent]));
    if (rng.chance(params.extra_parent) && start[l] > 1) {
      const std::size_t extra = rng.index(start[l]);
      if (extra != parent) onto.add(HornAxiom::sub(classes[i], classes[extra]));
    }
  }

  for (std::size_t k = 0; k < params.disjoint_pairs; ++k) {
    const std::size_t a = rng.index(n);
    const std::size_t l = level[a];
    const std::size_t width = start[l + 1] - start[l];
    if (width < 2) continue;
    std::size_t b = start[l] + rng.index(width);
    if (b == a) b = start[l] + (b - start[l] + 1) % width;
    onto.add(HornAxiom::disj(classes[a], classes[b]));
  }

  const auto roles = numbered("orole", params.roles);
  for (std::size_t k = 0; k < params.existential_axioms && !roles.empty(); ++k) {
    const Symbol r = roles[rng.index(roles.size())];
    const Symbol a = classes[rng.index(n)];
    const Symbol b = classes[rng.index(n)];
    if (k % 2 == 0) {
      onto.add(HornAxiom::supex(a, r, b));
    } else {
      onto.add(HornAxiom::subex(r, a, b));
    }
  }
  return onto;
}

// ---- policies ---------------------------------------------------------------

struct PolicyGenerator::Draft {
  std::vector<Symbol> names;
  std::vector<std::pair<Symbol, Interval>> intervals;
  std::vector<Symbol> child_roles;
  std::vector<Draft> children;

  std::size_t width() const { return names.size() + intervals.size() + children.size(); }

  Concept build() const {
    std::vector<Concept> parts;
    parts.reserve(width());
    for (Symbol s : names) parts.push_back(Concept::name(s));
    for (const auto& [p, r] : intervals) parts.push_back(Concept::interval(p, r));
    for (std::size_t i = 0; i < children.size(); ++i) parts.push_back(Concept::exists(child_roles[i], children[i].build()));
    return Concept::conj(std::move(parts));
  }

  void collect(std::vector<Draft*>& out) {
    out.push_back(this);
    for (auto& c : children) c.collect(out);
  }
};

PolicyGenerator::PolicyGenerator(const MainKB& kb, const Oracle& oracle, Vocabulary vocabulary, PolicyParams params)
    : k_minus_(partition(kb).k_minus),
      oracle_(oracle.with_shifted(to_horn(partition(kb).shifted))),
      normalizer_(k_minus_),
      vocab_(std::move(vocabulary)),
      params_(params) {
  if (auto report = validate_instance(signature(kb), oracle.signature()); !report.ok()) {
    throw SignatureViolation(report.names());
  }
}

PolicyGenerator::Draft PolicyGenerator::draw_structure(Rng& rng, std::size_t depth, std::size_t& classes) const {
  Draft d;
  const std::size_t width = rng.uniform(1, std::max<std::size_t>(1, params_.max_width));
  std::size_t exists = 0;
  if (depth < params_.max_depth && !vocab_.roles.empty()) {
    exists = rng.uniform(0, std::min(params_.exists_per_level, width));
  }
  for (std::size_t i = exists; i < width && classes > 0; ++i) {
    d.names.push_back(vocab_.classes[rng.index(vocab_.classes.size())]);
    --classes;
  }
  for (std::size_t i = 0; i < exists; ++i) {
    d.child_roles.push_back(vocab_.roles[rng.index(vocab_.roles.size())]);
    d.children.push_back(draw_structure(rng, depth + 1, classes));
  }
  return d;
}

bool PolicyGenerator::place_intervals(Draft& d, std::size_t count, Rng& rng) const {
  if (count == 0) return true;
  if (vocab_.properties.empty()) return false;
  const std::uint64_t span = params_.value_span != 0 ? params_.value_span : 2 * params_.max_interval_length;
  const std::uint64_t max_len = std::max<std::uint64_t>(1, params_.max_interval_length);
  std::vector<Draft*> nodes;
  d.collect(nodes);
  for (std::size_t k = 0; k < count; ++k) {
    std::vector<Draft*> roomy;
    for (Draft* n : nodes) {
      if (n->width() < params_.max_width) roomy.push_back(n);
    }
    const auto& pool = roomy.empty() ? nodes : roomy;
    Draft* target = pool[rng.index(pool.size())];
    const Symbol prop = vocab_.properties[rng.index(vocab_.properties.size())];
    const std::uint64_t lo = rng.uniform(0, span);
    const std::uint64_t len = rng.uniform(1, max_len);
    target->intervals.emplace_back(prop, Interval{lo, lo + len - 1});
  }
  return true;
}

std::size_t PolicyGenerator::normalized_intervals(const Concept& c) const {
  QueryPath path(oracle_, nullptr);
  NormalizationStats stats;
  const Concept n = normalizer_.normalize(c, path, stats);
  return n.is_bottom() ? std::numeric_limits<std::size_t>::max() : interval_count(n);
}

std::optional<PolicyGenerator::Draft> PolicyGenerator::draw_disjunct(std::uint64_t seed, std::size_t& discarded) const {
  Rng srng(Rng::derive(seed, {kStructure}));
  std::optional<Draft> skeleton;
  for (std::size_t attempt = 0; attempt <= params_.max_retries; ++attempt) {
    std::size_t classes = params_.max_classes;
    Draft d = draw_structure(srng, 0, classes);
    if (normalized_intervals(d.build()) != std::numeric_limits<std::size_t>::max()) {
      skeleton = std::move(d);
      break;
    }
    ++discarded;
  }
  if (!skeleton) return std::nullopt;

  const std::uint64_t label = params_.target_intervals ? *params_.target_intervals + 1 : 0;
  Rng irng(Rng::derive(seed, {kIntervals, label}));
  const std::size_t target =
      params_.target_intervals ? *params_.target_intervals : irng.uniform(0, params_.max_intervals);
  std::optional<Draft> fallback;
  for (std::size_t attempt = 0; attempt <= params_.max_retries; ++attempt) {
    Draft d = *skeleton;
    if (!place_intervals(d, target, irng)) return skeleton;
    const std::size_t count = normalized_intervals(d.build());
    if (count == std::numeric_limits<std::size_t>::max()) {
      ++discarded;
      continue;
    }
    if (count == target || !params_.target_intervals) return d;
    if (!fallback) fallback = std::move(d);
  }
  return fallback;
}

GeneratedPolicy PolicyGenerator::business(std::uint64_t seed) const {
  if (vocab_.classes.empty()) throw std::invalid_argument("policy generation needs at least one class");
  std::vector<Concept> disjuncts;
  std::size_t discarded = 0;
  std::size_t ni = 0;
  const std::size_t n = std::max<std::size_t>(1, params_.simple_per_full);
  for (std::size_t i = 0; i < n; ++i) {
    auto d = draw_disjunct(Rng::derive(seed, {i}), discarded);
    if (!d) throw GenerationFailure("no consistent simple policy within " + std::to_string(params_.max_retries) + " retries");
    Concept c = d->build();
    ni = std::max(ni, normalized_intervals(c));
    disjuncts.push_back(std::move(c));
  }
  return {FullConcept(std::move(disjuncts)), discarded, ni};
}

namespace {

struct Mutator {
  const MutationParams& p;
  const SaturationIndex* index;
  Rng& names;
  Rng& values;
  std::vector<std::string>& log;

  std::optional<Symbol> pick(const std::vector<Symbol>& pool, Symbol self) {
    std::vector<Symbol> candidates;
    for (Symbol s : pool) {
      if (s != self && !s.is_top() && !s.is_bot()) candidates.push_back(s);
    }
    if (candidates.empty()) return std::nullopt;
    return candidates[names.index(candidates.size())];
  }

  template <typename Draft>
  void run(Draft& d) {
    std::vector<Symbol> kept;
    for (Symbol s : d.names) {
      if (names.chance(p.delete_conjunct)) {
        log.push_back("delete " + s.str());
        continue;
      }
      if (index != nullptr && names.chance(p.generalize)) {
        if (auto up = pick(index->subsumers(s), s)) {
          log.push_back("generalize " + s.str() + " -> " + up->str());
          s = *up;
        }
      } else if (index != nullptr && names.chance(p.specialize)) {
        if (auto down = pick(index->subsumees(s), s)) {
          log.push_back("specialize " + s.str() + " -> " + down->str());
          s = *down;
        }
      }
      kept.push_back(s);
    }
    d.names = std::move(kept);

    std::vector<std::pair<Symbol, Interval>> intervals;
    for (auto [prop, r] : d.intervals) {
      if (values.chance(p.delete_conjunct)) {
        log.push_back("delete interval " + prop.str());
        continue;
      }
      if (values.chance(p.generalize)) {
        const std::uint64_t len = r.hi - r.lo + 1;
        const std::uint64_t down = std::min(r.lo, values.uniform(0, len));
        r = Interval{r.lo - down, r.hi + values.uniform(0, len)};
        log.push_back("widen " + prop.str());
      } else if (values.chance(p.specialize)) {
        const std::uint64_t lo = values.uniform(r.lo, r.hi);
        r = Interval{lo, values.uniform(lo, r.hi)};
        log.push_back("narrow " + prop.str());
      }
      intervals.emplace_back(prop, r);
    }
    d.intervals = std::move(intervals);

    std::vector<Symbol> roles;
    std::vector<Draft> children;
    for (std::size_t i = 0; i < d.children.size(); ++i) {
      if (names.chance(p.delete_conjunct)) {
        log.push_back("delete some " + d.child_roles[i].str());
        continue;
      }
      run(d.children[i]);
      roles.push_back(d.child_roles[i]);
      children.push_back(std::move(d.children[i]));
    }
    d.child_roles = std::move(roles);
    d.children = std::move(children);
  }
};

}  // namespace

Consent PolicyGenerator::consent(std::uint64_t seed, const MutationParams& mutation) const {
  if (vocab_.classes.empty()) throw std::invalid_argument("policy generation needs at least one class");
  Consent out{FullConcept(Concept::bottom()), {}};
  std::vector<Concept> disjuncts;
  std::size_t discarded = 0;
  const std::uint64_t label = params_.target_intervals ? *params_.target_intervals + 1 : 0;
  const std::size_t n = std::max<std::size_t>(1, params_.simple_per_full);
  Rng add(Rng::derive(seed, {kAddDisjunct}));
  for (std::size_t i = 0; i < n; ++i) {
    auto d = draw_disjunct(Rng::derive(seed, {i}), discarded);
    if (!d) throw GenerationFailure("no consistent simple policy within " + std::to_string(params_.max_retries) + " retries");
    Rng names(Rng::derive(seed, {kMutateNames, i}));
    Rng values(Rng::derive(seed, {kMutateIntervals, i, label}));
    Mutator m{mutation, oracle_.index(), names, values, out.log};
    m.run(*d);
    disjuncts.push_back(d->build());
    if (add.chance(mutation.add_disjunct)) {
      auto extra = draw_disjunct(Rng::derive(seed, {kAddDisjunct, i}), discarded);
      if (extra) {
        out.log.push_back("add disjunct");
        disjuncts.push_back(extra->build());
      }
    }
  }
  out.policy = FullConcept(std::move(disjuncts));
  return out;
}

// ---- suites -----------------------------------------------------------------

namespace {

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << text;
  out.close();
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

std::string query_stem(std::size_t index, std::optional<std::size_t> target) {
  char buf[64];
  if (target) {
    std::snprintf(buf, sizeof buf, "q%05zu_ni%zu", index, *target);
  } else {
    std::snprintf(buf, sizeof buf, "q%05zu", index);
  }
  return buf;
}

}  // namespace

std::vector<ManifestEntry> gen_suite(const SuiteParams& params, const OracleOntology& oracle,
                                     const std::filesystem::path& out_dir) {
  const Oracle base = Oracle::builtin(oracle);
  Vocabulary vocab;
  vocab.classes = oracle.concept_names();
  Rng kb_rng(Rng::derive(params.seed, {kMainKB}));
  const GeneratedKB gk = gen_main_kb(params.kb, vocab.classes, kb_rng);
  vocab.roles = gk.roles;
  vocab.properties = gk.properties;

  std::filesystem::create_directories(out_dir / "queries");
  write_file(out_dir / "kb.plkb", serialize_main_kb(gk.kb));
  write_file(out_dir / "oracle.horn", serialize_oracle_ontology(oracle));

  std::vector<std::optional<std::size_t>> targets;
  if (params.ni_targets.empty()) {
    targets.push_back(params.policy.target_intervals);
  } else {
    for (auto t : params.ni_targets) targets.emplace_back(t);
  }
  std::vector<PolicyGenerator> generators;
  for (const auto& t : targets) {
    PolicyParams pp = params.policy;
    pp.target_intervals = t;
    generators.emplace_back(gk.kb, base, vocab, pp);
  }

  std::vector<ManifestEntry> entries;
  for (std::size_t q = 0; q < params.count; ++q) {
    const std::uint64_t qseed = Rng::derive(params.seed, {kQuery, q});
    for (std::size_t t = 0; t < targets.size(); ++t) {
      const auto& gen = generators[t];
      const GeneratedPolicy business = gen.business(qseed);
      const Consent consent = gen.consent(qseed, params.mutation);
      const std::string stem = query_stem(q, params.ni_targets.empty() ? std::nullopt : targets[t]);

      ManifestEntry e;
      e.lhs = "queries/" + stem + ".lhs.plp";
      e.rhs = "queries/" + stem + ".rhs.plp";
      e.kb = "kb.plkb";
      e.oracle = "oracle.horn";
      e.seed = qseed;
      e.ni = business.ni;
      if (params.expected_limit > 0) {
        try {
          // The split of the raw lhs bounds the split of its normal form.
          split_intervals(business.policy, consent.policy, {params.expected_limit});
          e.expected = ref_decide(gk.kb, base, business.policy, consent.policy);
        } catch (const ResourceLimit&) {
          e.expected.reset();
        }
      }
      write_file(out_dir / e.lhs, serialize_policy(business.policy) + "\n");
      write_file(out_dir / e.rhs, serialize_policy(consent.policy) + "\n");
      entries.push_back(std::move(e));
    }
  }
  write_file(out_dir / "manifest.txt", serialize_manifest(entries));
  return entries;
}

std::string serialize_manifest(const std::vector<ManifestEntry>& entries) {
  std::ostringstream out;
  out << "# plr suite manifest: lhs rhs kb oracle seed ni expected\n";
  for (const auto& e : entries) {
    out << "lhs=" << e.lhs << " rhs=" << e.rhs << " kb=" << e.kb << " oracle=" << e.oracle << " seed=" << e.seed
        << " ni=" << e.ni << " expected=" << (e.expected ? (*e.expected ? "true" : "false") : "unknown") << '\n';
  }
  return out.str();
}

std::vector<ManifestEntry> parse_manifest(std::string_view text) {
  std::vector<ManifestEntry> entries;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    ManifestEntry e;
    bool any = false;
    bool has_lhs = false, has_rhs = false, has_kb = false, has_oracle = false;
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
      if (i >= line.size() || line[i] == '#') break;
      const std::size_t start = i;
      while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
      const std::string_view field = line.substr(start, i - start);
      const std::size_t eq = field.find('=');
      if (eq == std::string_view::npos || eq == 0) {
        throw ParseError(line_no, start + 1, "expected key=value", std::string(field));
      }
      const std::string_view key = field.substr(0, eq);
      const std::string value(field.substr(eq + 1));
      auto number = [&]() -> std::uint64_t {
        std::uint64_t v = 0;
        std::istringstream in(value);
        if (value.empty() || !(in >> v) || !in.eof()) {
          throw ParseError(line_no, start + 1, "expected a number", std::string(field));
        }
        return v;
      };
      any = true;
      if (key == "lhs") {
        e.lhs = value, has_lhs = true;
      } else if (key == "rhs") {
        e.rhs = value, has_rhs = true;
      } else if (key == "kb") {
        e.kb = value, has_kb = true;
      } else if (key == "oracle") {
        e.oracle = value, has_oracle = true;
      } else if (key == "seed") {
        e.seed = number();
      } else if (key == "ni") {
        e.ni = number();
      } else if (key == "expected") {
        if (value == "true") {
          e.expected = true;
        } else if (value == "false") {
          e.expected = false;
        } else if (value != "unknown") {
          throw ParseError(line_no, start + 1, "expected true, false or unknown", std::string(field));
        }
      } else {
        throw ParseError(line_no, start + 1, "unknown manifest field", std::string(key));
      }
    }
    if (!any) continue;
    if (!has_lhs || !has_rhs || !has_kb || !has_oracle) {
      throw ParseError(line_no, 1, "record needs lhs, rhs, kb and oracle", std::string(line));
    }
    entries.push_back(std::move(e));
  }
  return entries;
}

}  // namespace plr
