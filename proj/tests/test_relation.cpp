#include <doctest.h>

#include <algorithm>
#include <random>

#include "core/relation.hpp"

using namespace wmm::rel;

namespace {

Relation from_pairs(std::uint32_t carrier,
                    const std::vector<std::pair<EventId, EventId>>& pairs) {
  Relation r(carrier);
  for (auto [a, b] : pairs) r.insert(a, b);
  return r;
}

Relation random_relation(std::mt19937& rng, std::uint32_t carrier,
                         double density) {
  Relation r(carrier);
  std::bernoulli_distribution coin(density);
  for (EventId a = 0; a < carrier; ++a)
    for (EventId b = 0; b < carrier; ++b)
      if (coin(rng)) r.insert(a, b);
  return r;
}

// Brute-force oracle: a relation is acyclic iff some permutation of the
// carrier respects every pair.
bool acyclic_by_permutations(const Relation& r) {
  std::vector<EventId> perm(r.carrier());
  for (EventId e = 0; e < r.carrier(); ++e) perm[e] = e;
  do {
    std::vector<std::size_t> pos(r.carrier());
    for (std::size_t i = 0; i < perm.size(); ++i) pos[perm[i]] = i;
    bool ok = true;
    for (auto [a, b] : r.pairs())
      if (pos[a] >= pos[b]) {
        ok = false;
        break;
      }
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return r.carrier() == 0;
}

// Naive pairwise-join closure, independent of the Warshall implementation.
Relation closure_by_joining(const Relation& r) {
  Relation out = r;
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto [a, b] : out.pairs())
      for (auto [c, d] : out.pairs())
        if (b == c && !out.contains(a, d)) {
          out.insert(a, d);
          changed = true;
        }
  }
  return out;
}

}  // namespace

TEST_CASE("compose basics") {
  Relation r1 = from_pairs(4, {{1, 2}});
  Relation r2 = from_pairs(4, {{2, 3}});
  CHECK(r1.compose(r2) == from_pairs(4, {{1, 3}}));

  Relation id = Relation::identity(4);
  CHECK(r1.compose(id) == r1);
  CHECK(id.compose(r1) == r1);

  CHECK_THROWS_AS(r1.compose(Relation(5)), CarrierMismatch);
}

TEST_CASE("union, intersection, difference, inverse") {
  Relation r = from_pairs(3, {{0, 1}, {1, 2}});
  CHECK(r.inverse() == from_pairs(3, {{1, 0}, {2, 1}}));
  CHECK((r | Relation(3)) == r);
  CHECK((r & r) == r);
  CHECK((r - r).is_empty());
  CHECK(from_pairs(3, {{1, 2}}).inverse() == from_pairs(3, {{2, 1}}));
}

TEST_CASE("transitive closure") {
  Relation r = from_pairs(4, {{1, 2}, {2, 3}});
  Relation c = r.transitive_closure();
  CHECK(c == from_pairs(4, {{1, 2}, {2, 3}, {1, 3}}));
  CHECK(c.transitive_closure() == c);  // idempotence on a transitive input
  CHECK(r.reflexive_transitive_closure() == (c | Relation::identity(4)));
}

TEST_CASE("restrict") {
  Relation r = from_pairs(4, {{0, 1}, {1, 2}, {2, 3}});
  EventSet all = EventSet::full(4);
  CHECK(restrict(all, r, all) == r);

  EventSet even(4), odd(4);
  even.insert(0);
  even.insert(2);
  odd.insert(1);
  odd.insert(3);
  CHECK(restrict(even, r, odd) == from_pairs(4, {{0, 1}, {2, 3}}));
  CHECK(Relation::identity_on(even) == from_pairs(4, {{0, 0}, {2, 2}}));
}

TEST_CASE("acyclic with witnesses") {
  SUBCASE("two-cycle") {
    AcyclicResult res = acyclic(from_pairs(3, {{1, 2}, {2, 1}}));
    CHECK(!res.acyclic);
    // The cycle visits exactly 1 and 2.
    std::vector<EventId> sorted = res.cycle;
    std::sort(sorted.begin(), sorted.end());
    CHECK(sorted == std::vector<EventId>{1, 2});
  }
  SUBCASE("empty relation is acyclic with a full topological order") {
    AcyclicResult res = acyclic(Relation(3));
    CHECK(res.acyclic);
    CHECK(res.topo_order == std::vector<EventId>{0, 1, 2});
  }
  SUBCASE("topological order respects edges") {
    AcyclicResult res = acyclic(from_pairs(4, {{2, 0}, {0, 3}, {3, 1}}));
    REQUIRE(res.acyclic);
    std::vector<std::size_t> pos(4);
    for (std::size_t i = 0; i < res.topo_order.size(); ++i)
      pos[res.topo_order[i]] = i;
    CHECK(pos[2] < pos[0]);
    CHECK(pos[0] < pos[3]);
    CHECK(pos[3] < pos[1]);
  }
  SUBCASE("canonical rotation puts the smallest event last") {
    // 2 -> 3 -> 4 -> 5 -> 2 plus a distracting tail 0 -> 2.
    Relation r = from_pairs(6, {{0, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 2}});
    AcyclicResult res = acyclic(r);
    REQUIRE(!res.acyclic);
    CHECK(res.cycle == std::vector<EventId>{3, 4, 5, 2});
  }
}

TEST_CASE("empty and irreflexive") {
  CHECK(empty(Relation(4)));
  CHECK(!empty(from_pairs(4, {{1, 1}})));
  CHECK(irreflexive(Relation(4)));
  CHECK(!irreflexive(from_pairs(4, {{1, 1}})));
  CHECK(irreflexive(from_pairs(4, {{1, 2}})));
}

TEST_CASE("init-exclusion removes pairs touching excluded events") {
  Relation r = from_pairs(4, {{0, 1}, {1, 0}, {2, 3}});
  EventSet init(4);
  init.insert(0);
  CHECK(!acyclic(r).acyclic);
  CHECK(acyclic(r, &init).acyclic);
  CHECK(!empty(r, &init));
  EventSet both(4);
  both.insert(0);
  both.insert(2);
  both.insert(3);
  CHECK(empty(from_pairs(4, {{0, 2}, {3, 0}}), &both));
}

TEST_CASE("algebra laws on random relations") {
  std::mt19937 rng(20240601);
  std::uniform_int_distribution<std::uint32_t> size_dist(1, 10);
  for (int iter = 0; iter < 1000; ++iter) {
    std::uint32_t n = size_dist(rng);
    Relation a = random_relation(rng, n, 0.25);
    Relation b = random_relation(rng, n, 0.25);
    Relation c = random_relation(rng, n, 0.25);

    CHECK(a.compose(b).compose(c) == a.compose(b.compose(c)));
    CHECK((a | b) == (b | a));
    CHECK((a & b) == (b & a));
    CHECK(a.inverse().inverse() == a);
    Relation plus = a.transitive_closure();
    CHECK(plus.transitive_closure() == plus);
    CHECK(plus == closure_by_joining(a));

    EventSet s1 = EventSet::full(n);
    EventSet s2(n);
    for (EventId e = 0; e < n; e += 2) s2.insert(e);
    CHECK(restrict(s2, a | b, s1) ==
          (restrict(s2, a, s1) | restrict(s2, b, s1)));
  }
}

TEST_CASE("acyclic agrees with the permutation oracle up to carrier 7") {
  std::mt19937 rng(987654);
  std::uniform_int_distribution<std::uint32_t> size_dist(1, 7);
  std::uniform_real_distribution<double> dens(0.05, 0.5);
  for (int iter = 0; iter < 1000; ++iter) {
    std::uint32_t n = size_dist(rng);
    Relation r = random_relation(rng, n, dens(rng));
    AcyclicResult res = acyclic(r);
    CHECK(res.acyclic == acyclic_by_permutations(r));
    if (res.acyclic) {
      std::vector<std::size_t> pos(n);
      for (std::size_t i = 0; i < res.topo_order.size(); ++i)
        pos[res.topo_order[i]] = i;
      for (auto [a, b] : r.pairs()) CHECK(pos[a] < pos[b]);
    } else {
      // The witness really is a cycle of r.
      REQUIRE(!res.cycle.empty());
      for (std::size_t i = 0; i < res.cycle.size(); ++i)
        CHECK(r.contains(res.cycle[i],
                         res.cycle[(i + 1) % res.cycle.size()]));
    }
  }
}
