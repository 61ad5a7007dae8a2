#include "plr/symbol.hpp"

#include <deque>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>

namespace plr {
namespace {

class SymbolTable {
 public:
  std::uint32_t intern(std::string_view name) {
    {
      std::shared_lock lock(mutex_);
      if (auto it = ids_.find(name); it != ids_.end()) return it->second;
    }
    std::unique_lock lock(mutex_);
    if (auto it = ids_.find(name); it != ids_.end()) return it->second;
    const auto id = static_cast<std::uint32_t>(names_.size());
    const std::string& stored = names_.emplace_back(name);
    ids_.emplace(std::string_view(stored), id);
    return id;
  }

  std::uint32_t lookup(std::string_view name) const {
    std::shared_lock lock(mutex_);
    auto it = ids_.find(name);
    return it == ids_.end() ? 0xffffffffu : it->second;
  }

  const std::string& name(std::uint32_t id) const {
    std::shared_lock lock(mutex_);
    return names_.at(id);
  }

 private:
  mutable std::shared_mutex mutex_;
  // deque: element addresses stay stable, the map keys view into them
  std::deque<std::string> names_;
  std::unordered_map<std::string_view, std::uint32_t> ids_;
};

SymbolTable& table() {
  static SymbolTable instance;
  return instance;
}

}  // namespace

Symbol Symbol::intern(std::string_view name) { return Symbol(table().intern(name)); }

Symbol Symbol::lookup(std::string_view name) { return Symbol(table().lookup(name)); }

Symbol Symbol::top() {
  static const Symbol s = intern("Top");
  return s;
}

Symbol Symbol::bot() {
  static const Symbol s = intern("Bot");
  return s;
}

const std::string& Symbol::str() const {
  static const std::string invalid = "<invalid>";
  return valid() ? table().name(id_) : invalid;
}

}  // namespace plr
