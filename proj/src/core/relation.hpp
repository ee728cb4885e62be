#ifndef WMM_CORE_RELATION_HPP_
#define WMM_CORE_RELATION_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "core/litmus.hpp"

namespace wmm::rel {

using litmus::Value;
using EventId = std::uint32_t;

// Thread index of initialisation events.
inline constexpr int kInitThread = -1;

enum class EventKind : std::uint8_t { Init, Read, Write, Fence };

enum EventTag : std::uint8_t {
  kTagRelease = 1u << 0,
  kTagAcquire = 1u << 1,
  kTagRmw = 1u << 2,
};

struct Event {
  EventId id = 0;
  int thread = kInitThread;  // index into the graph's thread table
  EventKind kind = EventKind::Fence;
  int loc = -1;  // index into the graph's location table; -1 for fences
  Value value = 0;
  std::uint8_t tags = 0;

  bool is_init() const { return kind == EventKind::Init; }
  bool is_read() const { return kind == EventKind::Read; }
  bool is_write() const { return kind == EventKind::Write; }
  bool is_mem_access() const { return kind != EventKind::Fence; }
  bool has_tag(EventTag t) const { return (tags & t) != 0; }
};

class CarrierMismatch : public std::logic_error {
 public:
  CarrierMismatch() : std::logic_error("relations have different carriers") {}
};

// Subset of one graph's event ids, as a bitset.
class EventSet {
 public:
  EventSet() = default;
  explicit EventSet(std::uint32_t carrier) : n_(carrier), bits_(blocks(carrier)) {}

  std::uint32_t carrier() const { return n_; }

  void insert(EventId e) {
    check(e);
    bits_[e >> 6] |= 1ull << (e & 63);
  }

  bool contains(EventId e) const {
    return e < n_ && (bits_[e >> 6] >> (e & 63)) & 1;
  }

  std::size_t size() const;
  std::vector<EventId> elements() const;

  static EventSet full(std::uint32_t carrier);

  bool operator==(const EventSet&) const = default;

 private:
  static std::size_t blocks(std::uint32_t n) { return (n + 63) / 64; }
  void check(EventId e) const {
    if (e >= n_) throw std::out_of_range("event id outside carrier");
  }

  std::uint32_t n_ = 0;
  std::vector<std::uint64_t> bits_;
};

// Finite binary relation over the dense event ids of one graph, stored as a
// bit matrix.
class Relation {
 public:
  Relation() = default;
  explicit Relation(std::uint32_t carrier);

  std::uint32_t carrier() const { return n_; }

  void insert(EventId a, EventId b);
  bool contains(EventId a, EventId b) const;
  std::size_t size() const;
  bool is_empty() const;

  // Ordered (row-major) pair listing.
  std::vector<std::pair<EventId, EventId>> pairs() const;

  Relation operator|(const Relation& rhs) const;
  Relation operator&(const Relation& rhs) const;
  Relation operator-(const Relation& rhs) const;  // set difference
  Relation compose(const Relation& rhs) const;
  Relation inverse() const;
  Relation transitive_closure() const;
  Relation reflexive_transitive_closure() const;

  bool operator==(const Relation&) const = default;

  static Relation identity(std::uint32_t carrier);
  static Relation identity_on(const EventSet& s);

 private:
  void check_carrier(const Relation& rhs) const {
    if (n_ != rhs.n_) throw CarrierMismatch();
  }

  std::uint32_t n_ = 0;
  std::size_t row_blocks_ = 0;
  std::vector<std::uint64_t> bits_;  // n_ rows of row_blocks_ blocks

  friend Relation restrict(const EventSet&, const Relation&, const EventSet&);
  friend class RelationRows;
};

// Pairs of r whose source lies in s1 and target in s2.
Relation restrict(const EventSet& s1, const Relation& r, const EventSet& s2);

struct AcyclicResult {
  bool acyclic = false;
  // One topological order when acyclic.
  std::vector<EventId> topo_order;
  // One directed cycle otherwise, rotated so its smallest event id comes
  // last (the rotation the worked examples use).
  std::vector<EventId> cycle;
};

// The axiom predicates. `exclude` removes every pair touching one of its
// events before checking; the axiomatic engine passes the initialisation
// events here.
AcyclicResult acyclic(const Relation& r, const EventSet* exclude = nullptr);
bool empty(const Relation& r, const EventSet* exclude = nullptr);
bool irreflexive(const Relation& r, const EventSet* exclude = nullptr);

// Witness helpers for the non-acyclic predicates: first offending pair in
// row-major order, if any.
bool first_pair(const Relation& r, const EventSet* exclude, EventId* a,
                EventId* b);
bool first_reflexive(const Relation& r, const EventSet* exclude, EventId* a);

}  // namespace wmm::rel

#endif  // WMM_CORE_RELATION_HPP_
