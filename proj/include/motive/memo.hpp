#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>

namespace motive {

/// Lookup-or-compute table safe under concurrent use. Entries are never erased,
/// so returned references stay valid for the table's lifetime. Two threads may
/// compute the same entry; the first insertion wins and both see it.
template <class Key, class Value>
class MemoTable {
 public:
  template <class Fn>
  const Value& get(const Key& key, Fn&& compute) const {
    {
      std::shared_lock lock(mutex_);
      auto it = table_.find(key);
      if (it != table_.end()) return *it->second;
    }
    auto fresh = std::make_unique<Value>(compute());
    std::unique_lock lock(mutex_);
    auto [it, inserted] = table_.try_emplace(key, std::move(fresh));
    return *it->second;
  }

 private:
  mutable std::shared_mutex mutex_;
  mutable std::map<Key, std::unique_ptr<Value>> table_;
};

}  // namespace motive
