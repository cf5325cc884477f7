#pragma once

#include <functional>
#include <map>
#include <mutex>
#include <shared_mutex>

namespace wildcurve {

// Shared memo table. Values are computed outside the lock; if two threads race
// on one key the first insertion wins, which is harmless since values are pure.
template <class K, class V>
class Memo {
public:
    template <class F>
    const V& get(const K& key, F&& make) {
        {
            std::shared_lock lk(mu_);
            auto it = map_.find(key);
            if (it != map_.end()) return it->second;
        }
        V v = make();
        std::unique_lock lk(mu_);
        return map_.emplace(key, std::move(v)).first->second;
    }

    void put(const K& key, V v) {
        std::unique_lock lk(mu_);
        map_.emplace(key, std::move(v));
    }

    template <class F>
    void for_each(F&& f) const {
        std::shared_lock lk(mu_);
        for (auto& [k, v] : map_) f(k, v);
    }

    size_t size() const {
        std::shared_lock lk(mu_);
        return map_.size();
    }

    void clear() {
        std::unique_lock lk(mu_);
        map_.clear();
    }

private:
    mutable std::shared_mutex mu_;
    std::map<K, V> map_;
};

}  // namespace wildcurve
