#include <doctest.h>

#include "core/model.hpp"
#include "support/graph_builder.hpp"

using namespace wmm;
using namespace wmm::ax;
using wmm::rel::EventId;
using wmm::test_support::GraphBuilder;

namespace {

ExecutionGraph sb_forbidden() {
  GraphBuilder b({"x", "y"});
  int a = b.thread("a"), t2 = b.thread("b");
  b.write(a, "x", 1);
  EventId a2 = b.read(a, "y", 0);
  b.write(t2, "y", 1);
  EventId b2 = b.read(t2, "x", 0);
  b.rf(1, a2).rf(0, b2);
  return b.build();
}

ExecutionGraph sb_fences_forbidden() {
  GraphBuilder b({"x", "y"});
  int a = b.thread("a"), t2 = b.thread("b");
  b.write(a, "x", 1);
  b.fence(a);
  EventId a2 = b.read(a, "y", 0);
  b.write(t2, "y", 1);
  b.fence(t2);
  EventId b2 = b.read(t2, "x", 0);
  b.rf(1, a2).rf(0, b2);
  return b.build();
}

}  // namespace

TEST_CASE("the two-axiom TSO rendering parses as written") {
  ModelSpec spec = parse_model(R"(model TSO
let ppo = RR | RW | WW
acyclic poloc | co | rf | fr as coherence
acyclic ppo | fencerel | co | rfe | fr as ppo
)");
  CHECK(spec.name == "TSO");
  CHECK(spec.bindings.size() == 1);
  CHECK(spec.bindings[0].first == "ppo");
  REQUIRE(spec.axioms.size() == 2);
  CHECK(spec.axioms[0].label == "coherence");
  CHECK(spec.axioms[1].label == "ppo");
  CHECK(spec.axioms[1].kind == AxiomKind::Acyclic);
}

TEST_CASE("a one-line SC model parses to a single axiom") {
  ModelSpec spec = parse_model("model SC acyclic (po | co | rf | fr) as sc");
  REQUIRE(spec.axioms.size() == 1);
  CHECK(spec.axioms[0].label == "sc");
  CHECK(spec.bindings.empty());
}

TEST_CASE("set restriction expressions evaluate") {
  ModelSpec spec =
      parse_model("model RRfence acyclic [R];fencerel;[R] as t");
  ExecutionGraph g = sb_fences_forbidden();
  rel::Relation r = eval_rel_expr(g, spec.axioms[0].expr, {});
  CHECK(r.is_empty());  // fences sit between a write and a read here

  ModelSpec wr = parse_model("model WRfence acyclic [W];fencerel;[R] as t");
  rel::Relation r2 = eval_rel_expr(g, wr.axioms[0].expr, {});
  CHECK(r2.contains(2, 4));  // a1 over the fence to a2
  CHECK(r2.contains(5, 7));
  CHECK(r2.size() == 2);
}

TEST_CASE("postfix operators and difference parse and evaluate") {
  ModelSpec spec = parse_model(R"(model OPS
let r = (rf ; rf^-1)^+ \ (po & loc)
irreflexive r as selfjoin
)");
  ExecutionGraph g = sb_forbidden();
  // rf;rf^-1 relates writes whose values reach a common read; here both
  // reads read from init, so r holds init self-pairs only and the axiom
  // passes precisely because init pairs are excluded.
  rel::Relation r = eval_rel_expr(g, spec.bindings[0].second, {});
  CHECK(r.contains(0, 0));
  CHECK(r.contains(1, 1));
  CHECK(check_model(g, spec).passed);

  ModelSpec star = parse_model("model S acyclic rf^* as t");
  rel::Relation rf_star = eval_rel_expr(g, star.axioms[0].expr, {});
  CHECK(rf_star.contains(2, 2));  // reflexive closure includes identity
  CHECK(rf_star.contains(1, 3));
}

TEST_CASE("parse errors and unknown identifiers are rejected") {
  CHECK_THROWS_AS(parse_model("model X acyclic mystery as a"),
                  UnknownIdentifier);
  CHECK_THROWS_AS(parse_model("model X acyclic po"), ModelSyntaxError);
  CHECK_THROWS_AS(parse_model("acyclic po as a"), ModelSyntaxError);
  CHECK_THROWS_AS(parse_model("model X let po = rf acyclic po as a"),
                  ModelSyntaxError);
  CHECK_THROWS_AS(parse_model("model X"), ModelSyntaxError);
  CHECK_THROWS_AS(parse_model("model X acyclic [Q] as a"), UnknownIdentifier);
}

TEST_CASE("SC rejects the forbidden SB execution with the documented cycle") {
  ExecutionGraph g = sb_forbidden();
  CheckResult res = check_model(g, builtin_sc());
  CHECK(!res.passed);
  CHECK(res.failing_axiom == "sc");
  // a2 -> b1 -> b2 -> a1, smallest event closing the loop.
  CHECK(res.witness == std::vector<EventId>{3, 4, 5, 2});
}

TEST_CASE("TSO admits the forbidden-under-SC SB execution") {
  ExecutionGraph g = sb_forbidden();
  CheckResult res = check_model(g, builtin_tso());
  CHECK(res.passed);
}

TEST_CASE("TSO rejects fenced SB on the ppo axiom with a fence/fr cycle") {
  ExecutionGraph g = sb_fences_forbidden();
  CheckResult res = check_model(g, builtin_tso());
  CHECK(!res.passed);
  CHECK(res.failing_axiom == "ppo");
  // a2 -> b1 -> b2 -> a1 again, now via fence and fr edges.
  CHECK(res.witness == std::vector<EventId>{4, 5, 7, 2});
}

TEST_CASE("the SC axiom accepts the reachable SB execution under exclusion") {
  GraphBuilder b({"x", "y"});
  int a = b.thread("a"), t2 = b.thread("b");
  b.write(a, "x", 1);
  EventId a2 = b.read(a, "y", 1);
  b.write(t2, "y", 1);
  EventId b2 = b.read(t2, "x", 0);
  b.rf(4, a2).rf(0, b2);
  ExecutionGraph g = b.build();
  CHECK(check_model(g, builtin_sc()).passed);

  rel::Relation sc_rel = g.po | g.co | g.rf | derive(g, "fr");
  rel::EventSet init = g.init_events();
  CHECK(rel::acyclic(sc_rel, &init).acyclic);
}

TEST_CASE("builtin lookup and aliases") {
  CHECK(builtin_model("SC") == &builtin_sc());
  CHECK(builtin_model("TSO") == &builtin_tso());
  CHECK(builtin_model("ARM") == &builtin_armish());
  CHECK(builtin_model("RISCV") == &builtin_armish());
  CHECK(builtin_model("POWER") == nullptr);
  CHECK(builtin_sc().axioms.size() == 2);   // sc + atomicity
  CHECK(builtin_tso().axioms.size() == 3);  // coherence + ppo + atomicity
  CHECK(builtin_armish().axioms.size() == 3);
}
