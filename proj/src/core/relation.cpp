#include "core/relation.hpp"

#include <algorithm>
#include <bit>
#include <queue>

namespace wmm::rel {

std::size_t EventSet::size() const {
  std::size_t count = 0;
  for (auto b : bits_) count += std::popcount(b);
  return count;
}

std::vector<EventId> EventSet::elements() const {
  std::vector<EventId> out;
  for (EventId e = 0; e < n_; ++e)
    if (contains(e)) out.push_back(e);
  return out;
}

EventSet EventSet::full(std::uint32_t carrier) {
  EventSet s(carrier);
  for (EventId e = 0; e < carrier; ++e) s.insert(e);
  return s;
}

Relation::Relation(std::uint32_t carrier)
    : n_(carrier), row_blocks_((carrier + 63) / 64), bits_(n_ * row_blocks_) {}

void Relation::insert(EventId a, EventId b) {
  if (a >= n_ || b >= n_) throw std::out_of_range("pair outside carrier");
  bits_[a * row_blocks_ + (b >> 6)] |= 1ull << (b & 63);
}

bool Relation::contains(EventId a, EventId b) const {
  if (a >= n_ || b >= n_) return false;
  return (bits_[a * row_blocks_ + (b >> 6)] >> (b & 63)) & 1;
}

std::size_t Relation::size() const {
  std::size_t count = 0;
  for (auto b : bits_) count += std::popcount(b);
  return count;
}

bool Relation::is_empty() const {
  for (auto b : bits_)
    if (b) return false;
  return true;
}

std::vector<std::pair<EventId, EventId>> Relation::pairs() const {
  std::vector<std::pair<EventId, EventId>> out;
  for (EventId a = 0; a < n_; ++a)
    for (EventId b = 0; b < n_; ++b)
      if (contains(a, b)) out.emplace_back(a, b);
  return out;
}

Relation Relation::operator|(const Relation& rhs) const {
  check_carrier(rhs);
  Relation out = *this;
  for (std::size_t i = 0; i < bits_.size(); ++i) out.bits_[i] |= rhs.bits_[i];
  return out;
}

Relation Relation::operator&(const Relation& rhs) const {
  check_carrier(rhs);
  Relation out = *this;
  for (std::size_t i = 0; i < bits_.size(); ++i) out.bits_[i] &= rhs.bits_[i];
  return out;
}

Relation Relation::operator-(const Relation& rhs) const {
  check_carrier(rhs);
  Relation out = *this;
  for (std::size_t i = 0; i < bits_.size(); ++i) out.bits_[i] &= ~rhs.bits_[i];
  return out;
}

Relation Relation::compose(const Relation& rhs) const {
  check_carrier(rhs);
  Relation out(n_);
  for (EventId a = 0; a < n_; ++a) {
    const std::uint64_t* row_a = &bits_[a * row_blocks_];
    std::uint64_t* row_out = &out.bits_[a * row_blocks_];
    for (EventId b = 0; b < n_; ++b) {
      if ((row_a[b >> 6] >> (b & 63)) & 1) {
        const std::uint64_t* row_b = &rhs.bits_[b * row_blocks_];
        for (std::size_t i = 0; i < row_blocks_; ++i) row_out[i] |= row_b[i];
      }
    }
  }
  return out;
}

Relation Relation::inverse() const {
  Relation out(n_);
  for (EventId a = 0; a < n_; ++a)
    for (EventId b = 0; b < n_; ++b)
      if (contains(a, b)) out.insert(b, a);
  return out;
}

Relation Relation::transitive_closure() const {
  // Warshall, one row union per reachable midpoint.
  Relation out = *this;
  for (EventId k = 0; k < n_; ++k) {
    const std::uint64_t* row_k = &out.bits_[k * row_blocks_];
    std::vector<std::uint64_t> row_k_copy(row_k, row_k + row_blocks_);
    for (EventId a = 0; a < n_; ++a) {
      if (out.contains(a, k)) {
        std::uint64_t* row_a = &out.bits_[a * row_blocks_];
        for (std::size_t i = 0; i < row_blocks_; ++i)
          row_a[i] |= row_k_copy[i];
      }
    }
  }
  return out;
}

Relation Relation::reflexive_transitive_closure() const {
  return transitive_closure() | identity(n_);
}

Relation Relation::identity(std::uint32_t carrier) {
  Relation out(carrier);
  for (EventId e = 0; e < carrier; ++e) out.insert(e, e);
  return out;
}

Relation Relation::identity_on(const EventSet& s) {
  Relation out(s.carrier());
  for (EventId e = 0; e < s.carrier(); ++e)
    if (s.contains(e)) out.insert(e, e);
  return out;
}

Relation restrict(const EventSet& s1, const Relation& r, const EventSet& s2) {
  if (s1.carrier() != r.carrier() || s2.carrier() != r.carrier())
    throw CarrierMismatch();
  Relation out(r.carrier());
  for (EventId a = 0; a < r.carrier(); ++a) {
    if (!s1.contains(a)) continue;
    for (EventId b = 0; b < r.carrier(); ++b)
      if (s2.contains(b) && r.contains(a, b)) out.insert(a, b);
  }
  return out;
}

namespace {

// Effective edge test under the optional init-pair exclusion.
bool edge(const Relation& r, const EventSet* ex, EventId a, EventId b) {
  if (ex && (ex->contains(a) || ex->contains(b))) return false;
  return r.contains(a, b);
}

}  // namespace

AcyclicResult acyclic(const Relation& r, const EventSet* exclude) {
  const std::uint32_t n = r.carrier();
  AcyclicResult result;

  std::vector<std::uint32_t> in_deg(n, 0);
  for (EventId a = 0; a < n; ++a)
    for (EventId b = 0; b < n; ++b)
      if (edge(r, exclude, a, b)) ++in_deg[b];

  // Kahn with a min-heap: the returned topological order is the
  // lexicographically smallest one.
  std::priority_queue<EventId, std::vector<EventId>, std::greater<>> ready;
  for (EventId e = 0; e < n; ++e)
    if (in_deg[e] == 0) ready.push(e);
  std::vector<EventId> topo;
  topo.reserve(n);
  while (!ready.empty()) {
    EventId e = ready.top();
    ready.pop();
    topo.push_back(e);
    for (EventId b = 0; b < n; ++b)
      if (edge(r, exclude, e, b) && --in_deg[b] == 0) ready.push(b);
  }

  if (topo.size() == n) {
    result.acyclic = true;
    result.topo_order = std::move(topo);
    return result;
  }

  // Strip sources and sinks until only nodes on or between cycles remain,
  // then walk smallest successors until a node repeats.
  std::vector<bool> alive(n, true);
  bool changed = true;
  while (changed) {
    changed = false;
    for (EventId e = 0; e < n; ++e) {
      if (!alive[e]) continue;
      bool has_in = false, has_out = false;
      for (EventId o = 0; o < n; ++o) {
        if (alive[o] && edge(r, exclude, o, e)) has_in = true;
        if (alive[o] && edge(r, exclude, e, o)) has_out = true;
      }
      if (!has_in || !has_out) {
        alive[e] = false;
        changed = true;
      }
    }
  }

  EventId start = 0;
  while (!alive[start]) ++start;
  std::vector<EventId> path;
  std::vector<int> pos_in_path(n, -1);
  EventId cur = start;
  while (pos_in_path[cur] < 0) {
    pos_in_path[cur] = static_cast<int>(path.size());
    path.push_back(cur);
    for (EventId next = 0; next < n; ++next) {
      if (alive[next] && edge(r, exclude, cur, next)) {
        cur = next;
        break;
      }
    }
  }
  std::vector<EventId> cycle(path.begin() + pos_in_path[cur], path.end());

  // Canonical rotation: smallest id last, as in the worked examples.
  auto min_it = std::min_element(cycle.begin(), cycle.end());
  std::rotate(cycle.begin(), min_it + 1 == cycle.end() ? cycle.begin()
                                                       : min_it + 1,
              cycle.end());
  result.cycle = std::move(cycle);
  return result;
}

bool empty(const Relation& r, const EventSet* exclude) {
  EventId a, b;
  return !first_pair(r, exclude, &a, &b);
}

bool irreflexive(const Relation& r, const EventSet* exclude) {
  EventId a;
  return !first_reflexive(r, exclude, &a);
}

bool first_pair(const Relation& r, const EventSet* exclude, EventId* a,
                EventId* b) {
  for (EventId x = 0; x < r.carrier(); ++x)
    for (EventId y = 0; y < r.carrier(); ++y)
      if (edge(r, exclude, x, y)) {
        *a = x;
        *b = y;
        return true;
      }
  return false;
}

bool first_reflexive(const Relation& r, const EventSet* exclude, EventId* a) {
  for (EventId x = 0; x < r.carrier(); ++x)
    if (edge(r, exclude, x, x)) {
      *a = x;
      return true;
    }
  return false;
}

}  // namespace wmm::rel
