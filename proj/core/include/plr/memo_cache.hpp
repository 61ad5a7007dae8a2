#pragma once

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <list>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <utility>

namespace plr {

/// Thread-safe memo table with an optional LRU bound (capacity 0 = unbounded).
///
/// Values are computed outside the lock; when two callers race on the same
/// key both compute, and the first insert wins. Callers must only cache pure
/// results, so the duplicate computation is harmless.
template <typename Key, typename Value, typename Hash = std::hash<Key>>
class MemoCache {
 public:
  explicit MemoCache(std::size_t capacity = 0) : capacity_(capacity) {}

  MemoCache(const MemoCache&) = delete;
  MemoCache& operator=(const MemoCache&) = delete;

  std::optional<Value> find(const Key& key) {
    std::lock_guard lock(mutex_);
    auto it = map_.find(key);
    if (it == map_.end()) {
      misses_.fetch_add(1, std::memory_order_relaxed);
      return std::nullopt;
    }
    touch(it);
    hits_.fetch_add(1, std::memory_order_relaxed);
    return it->second.value;
  }

  void insert(const Key& key, Value value) {
    std::lock_guard lock(mutex_);
    if (map_.contains(key)) return;
    if (capacity_ != 0) {
      while (map_.size() >= capacity_ && !order_.empty()) {
        map_.erase(order_.back());
        order_.pop_back();
      }
      order_.push_front(key);
      map_.emplace(key, Entry{std::move(value), order_.begin()});
    } else {
      map_.emplace(key, Entry{std::move(value), {}});
    }
  }

  /// Returns the cached value or computes and stores it; `hit` reports which.
  template <typename Compute>
  Value get_or_compute(const Key& key, Compute&& compute, bool& hit) {
    if (auto cached = find(key)) {
      hit = true;
      return *std::move(cached);
    }
    hit = false;
    Value value = compute();
    insert(key, value);
    return value;
  }

  void clear() {
    std::lock_guard lock(mutex_);
    map_.clear();
    order_.clear();
  }

  std::size_t size() const {
    std::lock_guard lock(mutex_);
    return map_.size();
  }
  std::size_t capacity() const noexcept { return capacity_; }
  std::uint64_t hits() const noexcept { return hits_.load(std::memory_order_relaxed); }
  std::uint64_t misses() const noexcept { return misses_.load(std::memory_order_relaxed); }

 private:
  struct Entry {
    Value value;
    typename std::list<Key>::iterator position;
  };

  void touch(typename std::unordered_map<Key, Entry, Hash>::iterator it) {
    if (capacity_ != 0) order_.splice(order_.begin(), order_, it->second.position);
  }

  std::size_t capacity_;
  mutable std::mutex mutex_;
  std::unordered_map<Key, Entry, Hash> map_;
  std::list<Key> order_;
  std::atomic<std::uint64_t> hits_{0};
  std::atomic<std::uint64_t> misses_{0};
};

}  // namespace plr
