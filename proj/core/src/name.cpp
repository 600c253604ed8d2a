#include "cpc/name.hpp"

#include <algorithm>
#include <atomic>
#include <deque>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>

namespace cpc {

namespace {

struct Interner {
  std::shared_mutex mu;
  std::unordered_map<std::string, std::uint64_t> index;
  std::deque<std::string> texts;  // deque keeps references stable
};

Interner& interner() {
  static Interner in;
  return in;
}

std::atomic<std::uint64_t> fresh_counter{0};

}  // namespace

Name Name::surface(std::string_view text) {
  auto& in = interner();
  std::string key(text);
  {
    std::shared_lock lock(in.mu);
    auto it = in.index.find(key);
    if (it != in.index.end()) return Name(Origin::Surface, it->second);
  }
  std::unique_lock lock(in.mu);
  auto [it, inserted] = in.index.emplace(key, in.texts.size());
  if (inserted) in.texts.push_back(key);
  return Name(Origin::Surface, it->second);
}

Name Name::fresh() { return Name(Origin::Fresh, fresh_counter.fetch_add(1, std::memory_order_relaxed)); }

Name Name::canon(std::uint32_t index) { return Name(Origin::Canon, index); }

Name Name::slot(std::uint32_t index) { return Name(Origin::Slot, index); }

std::string Name::text() const {
  switch (origin()) {
    case Origin::Surface: {
      auto& in = interner();
      std::shared_lock lock(in.mu);
      return in.texts[payload()];
    }
    case Origin::Fresh:
      return "_f" + std::to_string(payload());
    case Origin::Canon:
      return "_" + std::to_string(payload());
    case Origin::Slot:
      return "__" + std::to_string(payload());
  }
  return "?";
}

NameSet set_union(const NameSet& a, const NameSet& b) {
  NameSet out = a;
  out.insert(b.begin(), b.end());
  return out;
}

NameSet set_minus(const NameSet& a, const NameSet& b) {
  NameSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
  return out;
}

bool intersects(const NameSet& a, const NameSet& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      return true;
    }
  }
  return false;
}

Name hash_name() {
  static const Name n = Name::surface("_hash");
  return n;
}

}  // namespace cpc
