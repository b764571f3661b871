#include "lratt/name.hpp"

#include <deque>
#include <mutex>
#include <unordered_map>

namespace lratt {
namespace {

struct Interner {
  std::mutex mu;
  std::deque<std::string> names{""};
  std::unordered_map<std::string_view, std::uint32_t> ids{{names.front(), 0}};
  std::uint64_t fresh_counter = 0;

  std::uint32_t intern(std::string_view text) {
    std::lock_guard lock(mu);
    if (auto it = ids.find(text); it != ids.end()) return it->second;
    names.emplace_back(text);
    auto id = static_cast<std::uint32_t>(names.size() - 1);
    ids.emplace(names.back(), id);
    return id;
  }

  const std::string& lookup(std::uint32_t id) {
    std::lock_guard lock(mu);
    return names[id];
  }
};

Interner& interner() {
  static Interner instance;
  return instance;
}

}  // namespace

Name::Name(std::string_view text) : id_(interner().intern(text)) {}

const std::string& Name::str() const { return interner().lookup(id_); }

Name Name::fresh(Name base) {
  auto& in = interner();
  std::string stem = base.str();
  // Strip a previous freshening suffix so names do not grow without bound.
  if (auto pos = stem.find('#'); pos != std::string::npos) stem.resize(pos);
  for (;;) {
    std::uint64_t n;
    {
      std::lock_guard lock(in.mu);
      n = ++in.fresh_counter;
    }
    std::string candidate = stem + "#" + std::to_string(n);
    {
      std::lock_guard lock(in.mu);
      if (in.ids.count(candidate)) continue;
    }
    return Name(candidate);
  }
}

}  // namespace lratt
