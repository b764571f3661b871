#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "lratt/term.hpp"

namespace lratt {

/// Raised when reading a location that is not bound in the heap.
class DanglingLocation : public std::runtime_error {
 public:
  explicit DanglingLocation(const Location& l)
      : std::runtime_error("dangling location " + printLocation(l)), location(l) {}
  Location location;
};

/// Raised by alloc/write on the null store.
class NullStoreAccess : public std::runtime_error {
 public:
  NullStoreAccess() : std::runtime_error("null store cannot be allocated into") {}
};

/// A namespace together with a finite map from locations in that namespace to terms.
class Heap {
 public:
  Heap() = default;
  explicit Heap(std::uint64_t ns) : ns_(ns) {}

  std::uint64_t ns() const { return ns_; }
  std::size_t size() const { return bindings_.size(); }
  bool empty() const { return bindings_.empty(); }
  bool contains(const Location& l) const { return bindings_.count(l) != 0; }
  const std::map<Location, TermPtr>& bindings() const { return bindings_; }

  /// Least unused index in this heap's namespace.
  Location alloc() const;

  /// Binds (or rebinds) `l`. Throws std::invalid_argument if `l` is in another namespace.
  void write(const Location& l, TermPtr t);

  /// Throws DanglingLocation on a miss.
  const TermPtr& read(const Location& l) const;

  /// Copies every binding of `other` into this heap regardless of namespace.
  /// Only used when garbage collection is switched off for leak experiments.
  void absorb(const Heap& other);

  friend bool operator==(const Heap& a, const Heap& b);

 private:
  std::uint64_t ns_ = 0;
  std::map<Location, TermPtr> bindings_;
};

/// Pointwise extension: same namespace and every binding of `a` is in `b`.
bool heapExtends(const Heap& a, const Heap& b);

/// Null store, a single (later) heap, or a now-heap ticked with a later heap.
class Store {
 public:
  enum class Kind : std::uint8_t { Null, Single, Ticked };

  Store() = default;
  static Store null() { return Store(); }
  static Store single(Heap h);
  static Store ticked(Heap now, Heap later);

  Kind kind() const { return kind_; }
  bool isNull() const { return kind_ == Kind::Null; }

  /// The heap furthest to the right. Precondition: not null.
  Heap& rightmost();
  const Heap& rightmost() const;

  /// Precondition: ticked.
  Heap& now();
  const Heap& now() const;
  Heap& later() { return rightmost(); }
  const Heap& later() const { return rightmost(); }

  /// Releases the heaps held by the store, leaving it null.
  Heap takeNow();
  Heap takeRightmost();

  friend bool operator==(const Store& a, const Store& b);

 private:
  Kind kind_ = Kind::Null;
  Heap now_;
  Heap later_;
};

/// Fresh location in the rightmost heap. Throws NullStoreAccess on the null store.
Location alloc(const Store& s);

/// Extends the rightmost heap. Throws NullStoreAccess on the null store.
Store storeWrite(Store s, const Location& l, TermPtr t);

/// Throws DanglingLocation on a miss.
TermPtr storeRead(const Heap& h, const Location& l);

/// gc(null) = null, gc(h) = h, gc(now ✓ later) = later.
Store gcStore(const Store& s);

/// Reflexive-transitive closure of pointwise extension and later-heap promotion.
bool storeExtends(const Store& a, const Store& b);

/// Allocator of namespaces (generations). Each call to fresh() returns a new one.
class NamespaceSupply {
 public:
  explicit NamespaceSupply(std::uint64_t next = 0) : next_(next) {}
  std::uint64_t fresh() { return next_++; }
  std::uint64_t peek() const { return next_; }

  friend bool operator==(const NamespaceSupply&, const NamespaceSupply&) = default;

 private:
  std::uint64_t next_;
};

std::string printHeap(const Heap& h);
std::string printStore(const Store& s);

}  // namespace lratt
