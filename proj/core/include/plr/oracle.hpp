#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "plr/horn.hpp"
#include "plr/knowledge_base.hpp"
#include "plr/saturation.hpp"

namespace plr {

/// A query `A1 ⊓ … ⊓ Am ⊑ B1 ⊔ … ⊔ Bk` over concept names. An empty lhs
/// denotes Top; Bot may occur on the right. Both sides are kept sorted and
/// duplicate-free so equal queries compare and hash equal.
class OracleQuery {
 public:
  OracleQuery(std::vector<Symbol> lhs, std::vector<Symbol> rhs);
  OracleQuery(std::vector<Symbol> lhs, Symbol rhs) : OracleQuery(std::move(lhs), std::vector<Symbol>{rhs}) {}

  /// ⊓lhs ⊑ ⊥
  static OracleQuery unsatisfiable(std::vector<Symbol> lhs) { return {std::move(lhs), Symbol::bot()}; }

  std::span<const Symbol> lhs() const noexcept { return lhs_; }
  std::span<const Symbol> rhs() const noexcept { return rhs_; }
  std::size_t hash() const noexcept { return hash_; }

  friend bool operator==(const OracleQuery& a, const OracleQuery& b) noexcept {
    return a.hash_ == b.hash_ && a.lhs_ == b.lhs_ && a.rhs_ == b.rhs_;
  }

 private:
  std::vector<Symbol> lhs_;
  std::vector<Symbol> rhs_;
  std::size_t hash_ = 0;
};

/// The `Q …` wire line for a query, e.g. `Q A B : C`.
std::string to_wire(const OracleQuery& q);

/// Decision procedure behind an oracle handle. Implementations must be safe
/// for concurrent `entails` calls.
class OracleBackend {
 public:
  virtual ~OracleBackend() = default;

  /// Throws OracleFailure when no answer can be obtained.
  virtual bool entails(const OracleQuery& q) const = 0;
  virtual Signature signature() const = 0;
  /// A backend answering against the current axioms plus `axioms`.
  virtual std::shared_ptr<const OracleBackend> with_axioms(std::span<const HornAxiom> axioms) const = 0;
  virtual std::string_view name() const = 0;
  /// The saturated closure, when the backend has one.
  virtual const SaturationIndex* index() const { return nullptr; }
};

/// Counting handle over a backend. Copies share the backend and the counter.
class Oracle {
 public:
  explicit Oracle(std::shared_ptr<const OracleBackend> backend);

  /// Saturating backend. Throws ResourceLimit from saturation.
  static Oracle builtin(OracleOntology ontology, SaturationOptions options = {});
  /// Truth-table enumeration; role-free ontologies over at most 20 names.
  /// Throws UnsupportedInput otherwise.
  static Oracle brute_force(OracleOntology ontology);

  /// Issues one query to the backend and bumps the call counter.
  bool query(const OracleQuery& q) const;

  /// Handle answering against O ∪ shifted, with a fresh counter. An empty
  /// `shifted` returns a handle on the same backend.
  Oracle with_shifted(std::span<const HornAxiom> shifted) const;

  std::uint64_t calls() const noexcept { return calls_->load(std::memory_order_relaxed); }
  Signature signature() const { return backend_->signature(); }
  std::string_view backend_name() const { return backend_->name(); }
  const SaturationIndex* index() const { return backend_->index(); }
  const OracleBackend& backend() const { return *backend_; }

 private:
  std::shared_ptr<const OracleBackend> backend_;
  std::shared_ptr<std::atomic<std::uint64_t>> calls_;
};

/// Propositional entailment by enumerating all assignments over the names of
/// `axioms` and `q`. Top is fixed true and Bot fixed false. Throws
/// UnsupportedInput for role axioms or more than 20 names.
bool brute_force_query(std::span<const HornAxiom> axioms, const OracleQuery& q);

struct ExternalOracleOptions {
  /// argv of the oracle process; argv[0] is resolved through PATH.
  std::vector<std::string> command;
  /// Names the oracle declares, used for signature separation checks.
  Signature declared_signature;
  std::chrono::milliseconds timeout{30'000};
};

/// Spawns a process speaking the line protocol on its stdin/stdout:
///   AX <horn line>              -> 1 | E <message>
///   Q A1 .. An : B1 .. Bk       -> 1 | 0 | E <message>   (empty lhs written Top)
///   QUIT                        -> no response
/// Requests are serialized over the single connection. Throws OracleFailure
/// if the process cannot be started.
Oracle external_oracle(ExternalOracleOptions options);

/// Splits a command line on whitespace; double quotes group words.
std::vector<std::string> split_command(std::string_view command_line);

/// Reads a declared signature: lines `concept NAME`, `role NAME` or
/// `property NAME`, `#` comments. Throws ParseError.
Signature parse_signature(std::string_view text);

}  // namespace plr

template <>
struct std::hash<plr::OracleQuery> {
  std::size_t operator()(const plr::OracleQuery& q) const noexcept { return q.hash(); }
};
