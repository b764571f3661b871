#include "lratt/store.hpp"

namespace lratt {

Location Heap::alloc() const {
  std::uint64_t next = 0;
  for (auto it = bindings_.lower_bound(Location{ns_, 0});
       it != bindings_.end() && it->first.ns == ns_; ++it) {
    if (it->first.index != next) break;
    ++next;
  }
  return Location{ns_, next};
}

void Heap::write(const Location& l, TermPtr t) {
  if (l.ns != ns_)
    throw std::invalid_argument("location " + printLocation(l) + " outside heap namespace " +
                                std::to_string(ns_));
  bindings_[l] = std::move(t);
}

const TermPtr& Heap::read(const Location& l) const {
  auto it = bindings_.find(l);
  if (it == bindings_.end()) throw DanglingLocation(l);
  return it->second;
}

void Heap::absorb(const Heap& other) {
  for (const auto& [l, t] : other.bindings_) bindings_.emplace(l, t);
}

bool operator==(const Heap& a, const Heap& b) {
  if (a.ns_ != b.ns_ || a.bindings_.size() != b.bindings_.size()) return false;
  auto ib = b.bindings_.begin();
  for (const auto& [l, t] : a.bindings_) {
    if (l != ib->first || !alphaEqual(t, ib->second)) return false;
    ++ib;
  }
  return true;
}

bool heapExtends(const Heap& a, const Heap& b) {
  if (a.ns() != b.ns()) return false;
  for (const auto& [l, t] : a.bindings()) {
    auto it = b.bindings().find(l);
    if (it == b.bindings().end() || !alphaEqual(t, it->second)) return false;
  }
  return true;
}

Store Store::single(Heap h) {
  Store s;
  s.kind_ = Kind::Single;
  s.later_ = std::move(h);
  return s;
}

Store Store::ticked(Heap now, Heap later) {
  if (now.ns() == later.ns())
    throw std::invalid_argument("ticked store requires distinct namespaces");
  Store s;
  s.kind_ = Kind::Ticked;
  s.now_ = std::move(now);
  s.later_ = std::move(later);
  return s;
}

Heap& Store::rightmost() {
  if (kind_ == Kind::Null) throw NullStoreAccess();
  return later_;
}
const Heap& Store::rightmost() const {
  if (kind_ == Kind::Null) throw NullStoreAccess();
  return later_;
}
Heap& Store::now() {
  if (kind_ != Kind::Ticked) throw std::logic_error("store has no now-heap");
  return now_;
}
const Heap& Store::now() const {
  if (kind_ != Kind::Ticked) throw std::logic_error("store has no now-heap");
  return now_;
}

Heap Store::takeNow() {
  Heap h = std::move(now());
  *this = Store();
  return h;
}

Heap Store::takeRightmost() {
  Heap h = std::move(rightmost());
  *this = Store();
  return h;
}

bool operator==(const Store& a, const Store& b) {
  if (a.kind_ != b.kind_) return false;
  switch (a.kind_) {
    case Store::Kind::Null:
      return true;
    case Store::Kind::Single:
      return a.later_ == b.later_;
    case Store::Kind::Ticked:
      return a.now_ == b.now_ && a.later_ == b.later_;
  }
  return false;
}

Location alloc(const Store& s) { return s.rightmost().alloc(); }

Store storeWrite(Store s, const Location& l, TermPtr t) {
  s.rightmost().write(l, std::move(t));
  return s;
}

TermPtr storeRead(const Heap& h, const Location& l) { return h.read(l); }

Store gcStore(const Store& s) {
  switch (s.kind()) {
    case Store::Kind::Null:
    case Store::Kind::Single:
      return s;
    case Store::Kind::Ticked:
      return Store::single(s.later());
  }
  return s;
}

bool storeExtends(const Store& a, const Store& b) {
  using K = Store::Kind;
  switch (a.kind()) {
    case K::Null:
      return b.kind() == K::Null;
    case K::Single:
      // Promotion places a single heap in the later position.
      return b.kind() != K::Null && heapExtends(a.later(), b.later());
    case K::Ticked:
      return b.kind() == K::Ticked && heapExtends(a.now(), b.now()) &&
             heapExtends(a.later(), b.later());
  }
  return false;
}

std::string printHeap(const Heap& h) {
  std::string out = "{ns " + std::to_string(h.ns()) + ":";
  bool first = true;
  for (const auto& [l, t] : h.bindings()) {
    out += first ? " " : ", ";
    first = false;
    out += printLocation(l) + " -> " + printTerm(t);
  }
  out += "}";
  return out;
}

std::string printStore(const Store& s) {
  switch (s.kind()) {
    case Store::Kind::Null:
      return "null";
    case Store::Kind::Single:
      return printHeap(s.later());
    case Store::Kind::Ticked:
      return printHeap(s.now()) + " tick " + printHeap(s.later());
  }
  return {};
}

}  // namespace lratt
