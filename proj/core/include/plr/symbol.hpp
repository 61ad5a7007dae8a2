#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace plr {

/// An interned name. Names of every kind share one process-wide
/// table; the position a symbol occurs in decides what it denotes.
///
/// Identifiers are assigned in first-intern order, so orderings derived from
/// them are deterministic for a deterministic sequence of parses.
class Symbol {
 public:
  constexpr Symbol() = default;

  static Symbol intern(std::string_view name);
  /// Returns the symbol if `name` was interned before, otherwise an invalid symbol.
  static Symbol lookup(std::string_view name);

  /// Reserved concept names understood by every oracle.
  static Symbol top();
  static Symbol bot();

  constexpr std::uint32_t id() const noexcept { return id_; }
  constexpr bool valid() const noexcept { return id_ != kInvalid; }
  const std::string& str() const;

  bool is_top() const { return *this == top(); }
  bool is_bot() const { return *this == bot(); }

  friend constexpr bool operator==(Symbol, Symbol) = default;
  friend constexpr auto operator<=>(Symbol, Symbol) = default;

 private:
  static constexpr std::uint32_t kInvalid = 0xffffffffu;
  constexpr explicit Symbol(std::uint32_t id) : id_(id) {}
  std::uint32_t id_ = kInvalid;
};

}  // namespace plr

template <>
struct std::hash<plr::Symbol> {
  std::size_t operator()(plr::Symbol s) const noexcept { return std::hash<std::uint32_t>{}(s.id()); }
};
