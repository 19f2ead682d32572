#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "twb/finring_category.hpp"

using namespace twb;

namespace {
const FinRing& cat() {
  static FinRing c;
  return c;
}
constexpr Elem kBudget = 1'000'000;
}  // namespace

TEST_CASE("limit of a single-node diagram is the node with identity leg") {
  auto r4 = zmod(4);
  Diagram<RingPtr, RingMor> d;
  d.add_node(r4);
  d.hint = ShapeHint::single_node;
  auto out = cat().realize_limit(d, kBudget);
  REQUIRE(out.limit.has_value());
  CHECK(out.limit->apex->size() == 4);
  CHECK(mor_eq(ring_compose(out.limit->legs[0], ring_identity(r4)), out.limit->legs[0], 100)
            .is_equal());
  // and the node itself with identity leg is a limit cone
  Cone<RingPtr, RingMor> cone{r4, {ring_identity(r4)}};
  auto verdict = cat().is_limit(d, cone, kBudget);
  CHECK(verdict.status == Status::pass);
}

TEST_CASE("wide pullback of the dual-number projection has |R|^(k+1) elements") {
  auto r2 = zmod(2);
  auto t = cat().tangent(r2);
  auto p = cat().proj(r2);
  for (unsigned k = 1; k <= 3; ++k) {
    Diagram<RingPtr, RingMor> d;
    for (unsigned i = 0; i < k; ++i) d.add_node(t);
    auto base = d.add_node(r2);
    for (unsigned i = 0; i < k; ++i) d.add_edge(i, base, p, "q");
    d.hint = ShapeHint::wide_cospan;
    auto out = cat().realize_limit(d, kBudget);
    REQUIRE(out.limit.has_value());
    CHECK(out.limit->apex->size() == checked_pow_size(2, k + 1));
  }
}

TEST_CASE("double pullback carrier agrees with an independent brute-force oracle") {
  // q : Z/2[X]/(X^3) -> Z/2 evaluation at 0, z the constant inclusion.
  auto r2 = zmod(2);
  auto e = std::static_pointer_cast<const TruncPolyRing>(trunc_poly(r2, 3));
  auto q = trunc_eval0(e);
  auto z = trunc_include(e);
  auto te = std::static_pointer_cast<const DualRing>(cat().tangent(e));
  auto tm = std::static_pointer_cast<const DualRing>(cat().tangent(r2));
  auto tq = cat().tangent_mor(q);
  auto zm = cat().zero(r2);
  auto pe = cat().proj(e);

  // Oracle: directly enumerate (m, t, m') in M x TE x M with 0(m) = T(q)(t)
  // and p(t) = z(m').
  std::set<std::vector<Elem>> oracle;
  for (Elem m = 0; m < r2->size(); ++m)
    for (Elem t = 0; t < te->size(); ++t)
      for (Elem m2 = 0; m2 < r2->size(); ++m2)
        if (zm.fn(m) == tq.fn(t) && pe.fn(t) == z.fn(m2))
          oracle.insert({m, zm.fn(m), t, z.fn(m2), m2});
  CHECK(oracle.size() == 8);  // frozen from the oracle: |M| * |ker q| = 2 * 4

  Diagram<RingPtr, RingMor> d;
  auto nM = d.add_node(r2);
  auto nTM = d.add_node(tm);
  auto nTE = d.add_node(te);
  auto nE = d.add_node(e);
  auto nM2 = d.add_node(r2);
  d.add_edge(nM, nTM, zm, "0_M");
  d.add_edge(nTE, nTM, tq, "T(q)");
  d.add_edge(nTE, nE, pe, "p_E");
  d.add_edge(nM2, nE, z, "z");
  d.hint = ShapeHint::zigzag;

  auto out = cat().realize_limit(d, kBudget);
  REQUIRE(out.limit.has_value());
  auto apex = std::static_pointer_cast<const LimitRing>(out.limit->apex);
  CHECK(apex->size() == 8);
  std::set<std::vector<Elem>> got;
  for (Elem i = 0; i < apex->size(); ++i) got.insert(apex->tuple(i));
  CHECK(got == oracle);
}

TEST_CASE("the k=0 key diagram has apex M via <1,z,1>") {
  auto r2 = zmod(2);
  auto e = std::static_pointer_cast<const TruncPolyRing>(trunc_poly(r2, 3));
  auto q = trunc_eval0(e);
  auto z = trunc_include(e);

  Diagram<RingPtr, RingMor> d;
  auto n0 = d.add_node(r2);
  auto n1 = d.add_node(r2);
  auto n2 = d.add_node(e);
  auto n3 = d.add_node(e);
  auto n4 = d.add_node(r2);
  d.add_edge(n0, n1, ring_identity(r2), "1_M");
  d.add_edge(n2, n1, q, "q");
  d.add_edge(n2, n3, ring_identity(e), "1_E");
  d.add_edge(n4, n3, z, "z");

  Cone<RingPtr, RingMor> cone{r2, {ring_identity(r2), ring_identity(r2), z, z,
                                   ring_identity(r2)}};
  auto verdict = cat().is_limit(d, cone, kBudget);
  CHECK(verdict.status == Status::pass);
}

TEST_CASE("is_limit rejects a non-universal cone with a witness") {
  auto r2 = zmod(2);
  Diagram<RingPtr, RingMor> d;
  d.add_node(r2);
  // apex T(Z/2) with leg p: commutes (no edges) but is not a bijection
  Cone<RingPtr, RingMor> cone{cat().tangent(r2), {cat().proj(r2)}};
  auto verdict = cat().is_limit(d, cone, kBudget);
  CHECK(verdict.status == Status::fail);
  CHECK(verdict.detail.find("not injective") != std::string::npos);
}

TEST_CASE("is_limit raises a precondition error on a non-commuting cone") {
  auto r2 = zmod(2);
  auto t = cat().tangent(r2);
  Diagram<RingPtr, RingMor> d;
  auto a = d.add_node(t);
  auto b = d.add_node(r2);
  d.add_edge(a, b, cat().proj(r2), "p");
  // legs: identity to t, but the wrong map to the base
  RingMor wrong{t, r2, [](Elem) { return Elem(1); }, "const1"};
  Cone<RingPtr, RingMor> cone{t, {ring_identity(t), wrong}};
  CHECK_THROWS_AS(cat().is_limit(d, cone, kBudget), Error);
}

TEST_CASE("universality of a computed limit against a hom-enumeration oracle") {
  // For the V_0 diagram with apex isomorphic to M: every commuting cone from a
  // test object factors through the computed limit by exactly one ring hom.
  auto r2 = zmod(2);
  auto e = std::static_pointer_cast<const TruncPolyRing>(trunc_poly(r2, 2));
  auto q = trunc_eval0(e);
  auto z = trunc_include(e);

  Diagram<RingPtr, RingMor> d;
  d.add_node(r2);
  d.add_node(e);
  d.add_edge(1, 0, q, "q");
  auto out = cat().realize_limit(d, kBudget);
  REQUIRE(out.limit.has_value());
  const auto& rl = *out.limit;

  // cone from X = Z/2: legs (1, z)
  std::vector<RingMor> cone_legs = {ring_identity(r2), z};
  // brute-force all functions X -> apex, count ring homs commuting with legs
  const Elem n = rl.apex->size();
  int factorizations = 0;
  std::vector<Elem> table(r2->size());
  for (Elem t0 = 0; t0 < n; ++t0)
    for (Elem t1 = 0; t1 < n; ++t1) {
      table = {t0, t1};
      auto h = mor_from_table(r2, rl.apex, table);
      if (!is_ring_hom(h, 1000).is_equal()) continue;
      bool commutes = true;
      for (std::size_t i = 0; i < rl.legs.size(); ++i)
        commutes = commutes &&
                   mor_eq(ring_compose(h, rl.legs[i]), cone_legs[i], 1000).is_equal();
      if (commutes) ++factorizations;
    }
  CHECK(factorizations == 1);
}

TEST_CASE("tangent realization mediates componentwise") {
  auto r2 = zmod(2);
  Diagram<RingPtr, RingMor> d;
  d.add_node(r2);
  d.add_node(r2);  // discrete two-node diagram: limit = product
  auto out = cat().realize_limit(d, kBudget);
  REQUIRE(out.limit.has_value());
  CHECK(out.limit->apex->size() == 4);

  auto trl = cat().tangent_realization(*out.limit);
  CHECK(trl.apex->size() == 16);
  // mediate T(legs of the base cone) through the tangent cone: identity
  auto med = trl.mediate({cat().tangent_mor(out.limit->legs[0]),
                          cat().tangent_mor(out.limit->legs[1])},
                         kBudget);
  REQUIRE(med.mor.has_value());
  CHECK(mor_eq(*med.mor, ring_identity(trl.apex), 1000).is_equal());
}
