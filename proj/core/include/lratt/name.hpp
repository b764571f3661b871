#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace lratt {

/// Interned identifier. Comparison is by interning order, which is stable for
/// the lifetime of the process.
class Name {
 public:
  Name() = default;
  explicit Name(std::string_view text);

  const std::string& str() const;
  std::uint32_t id() const { return id_; }
  bool empty() const { return id_ == 0; }

  friend bool operator==(Name a, Name b) { return a.id_ == b.id_; }
  friend auto operator<=>(Name a, Name b) { return a.id_ <=> b.id_; }

  /// A name derived from `base` that has never been handed out before.
  static Name fresh(Name base);

 private:
  std::uint32_t id_ = 0;
};

}  // namespace lratt

template <>
struct std::hash<lratt::Name> {
  std::size_t operator()(lratt::Name n) const noexcept { return n.id(); }
};
