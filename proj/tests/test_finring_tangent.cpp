#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "support/mutated_instance.hpp"
#include "twb/finring_category.hpp"
#include "twb/tangent_checks.hpp"

using namespace twb;

namespace {
const FinRing& cat() {
  static FinRing c;
  return c;
}
Bounds small_bounds() { return Bounds{2, 2, 200'000}; }
}  // namespace

TEST_CASE("dual-number structure maps satisfy the displayed equations") {
  auto r2 = zmod(2);
  auto t = std::static_pointer_cast<const DualRing>(cat().tangent(r2));

  // l on Z/2 sends 1+1eps to 1 + 1 eps eps' inside T^2; check both composites
  // of the lift-over-projection law on all 4 elements by direct evaluation.
  auto l = cat().lift(r2);
  auto tp = cat().tangent_mor(cat().proj(r2));
  auto p0 = ring_compose(cat().proj(r2), cat().zero(r2));
  for (Elem x = 0; x < t->size(); ++x) CHECK(tp.fn(l.fn(x)) == p0.fn(x));

  // the lift formula itself: (a,b) -> ((a,0),(0,b))
  auto tt = std::static_pointer_cast<const DualRing>(cat().tangent(t));
  CHECK(l.fn(t->encode(1, 1)) == tt->encode(t->encode(1, 0), t->encode(0, 1)));
}

TEST_CASE("tangent axiom suite passes on small rings") {
  std::vector<RingPtr> objs = {zmod(2), zmod(3), zmod(4)};
  auto r4 = objs[2];
  RingMor mod2{r4, objs[0], [](Elem x) { return x % 2; }, "mod2"};
  auto rep = check_tangent_axioms(cat(), objs, {mod2}, 2, small_bounds());
  CAPTURE(rep.to_json().dump(2));
  CHECK(rep.ok());
  CHECK(rep.count(Status::fail) == 0);
}

TEST_CASE("tangent axiom suite passes on the truncated polynomial ring") {
  auto e = trunc_poly(zmod(2), 3);
  auto rep = check_tangent_axioms(cat(), {e}, {}, 1, small_bounds());
  CHECK(rep.ok());
}

TEST_CASE("deliberately replacing l by 0T(0)-style map is caught by lift-proj only") {
  // Replace the lift on Z/4 by x -> 0_{TM}(T(0)(...)): concretely the map
  // (a,b) -> ((a,b),(0,0)) = 0_{TM}; then 0 l = 0 T(0) still holds but
  // l T(p) = p 0 fails.
  auto r4 = zmod(4);
  auto t = std::static_pointer_cast<const DualRing>(cat().tangent(r4));
  auto tt = std::static_pointer_cast<const DualRing>(cat().tangent(cat().tangent(r4)));

  struct LiftSwapped : testing::MutatedFinRing {
    Mor lift(const Obj& r) const {
      if (r->id() == at->id()) return inner->tangent_mor(inner->zero(r));  // T(0_M)
      return inner->lift(r);
    }
    EqOutcome lift_additivity(const Obj& x, Elem budget) const {
      return lift_additivity_check(*this, x, budget);
    }
  };
  LiftSwapped mut;
  mut.inner = &cat();
  mut.at = r4;

  auto rep = check_tangent_axioms(mut, {r4}, {}, 1, small_bounds());
  CHECK_FALSE(rep.ok());
  bool lift_zero_ok = false, lift_proj_failed = false;
  for (const auto& it : rep.items) {
    if (it.name.find("lift-zero") != std::string::npos) lift_zero_ok = it.status == Status::pass;
    if (it.name.find("lift-proj") != std::string::npos)
      lift_proj_failed = it.status == Status::fail;
  }
  CHECK(lift_zero_ok);
  CHECK(lift_proj_failed);
  (void)t;
  (void)tt;
}

TEST_CASE("any single-entry mutation of p, 0, +, l on Z/4 fails the suite") {
  auto r4 = zmod(4);
  std::mt19937 rng(20240811);
  auto t = cat().tangent(r4);
  auto t2 = cat().fibre_power(r4, 2).obj;
  auto tt = cat().tangent(t);

  struct Case {
    testing::Family fam;
    Elem dom_size, cod_size;
  };
  const std::vector<Case> cases = {
      {testing::Family::proj, t->size(), r4->size()},
      {testing::Family::zero, r4->size(), t->size()},
      {testing::Family::add, t2->size(), t->size()},
      {testing::Family::lift, t->size(), tt->size()},
  };

  int failures_detected = 0, total = 0;
  for (const auto& c : cases) {
    for (int rep_i = 0; rep_i < 4; ++rep_i) {
      testing::MutatedFinRing mut;
      mut.inner = &cat();
      mut.family = c.fam;
      mut.at = r4;
      mut.index = rng() % c.dom_size;
      // pick a genuinely different image
      Elem orig;
      switch (c.fam) {
        case testing::Family::proj: orig = cat().proj(r4).fn(mut.index); break;
        case testing::Family::zero: orig = cat().zero(r4).fn(mut.index); break;
        case testing::Family::add: orig = cat().add(r4).fn(mut.index); break;
        default: orig = cat().lift(r4).fn(mut.index); break;
      }
      mut.value = (orig + 1 + rng() % (c.cod_size - 1)) % c.cod_size;
      if (mut.value == orig) mut.value = (orig + 1) % c.cod_size;

      auto rep = check_tangent_axioms(mut, {r4}, {}, 1, small_bounds());
      ++total;
      if (!rep.ok()) ++failures_detected;
      INFO("family " << testing::family_name(c.fam) << " index " << mut.index << " value "
                     << mut.value);
      CHECK_FALSE(rep.ok());
    }
  }
  CHECK(failures_detected == total);
}

TEST_CASE("fibre powers: carrier sizes and conventions") {
  auto r2 = zmod(2);
  CHECK(cat().fibre_power(r2, 0).obj->id() == r2->id());
  CHECK(cat().fibre_power(r2, 1).obj->id() == cat().tangent(r2)->id());
  // |T_k M| = |M| * |fibre|^k with |fibre| = |TM|/|M|
  for (unsigned k = 0; k <= 3; ++k) {
    auto p = cat().fibre_power(r2, k);
    CHECK(p.obj->size() == 2ull << k);  // 2 * 2^k
  }
  auto r3 = zmod(3);
  CHECK(cat().fibre_power(r3, 2).obj->size() == 27);

  // p_1 = p and 0_1 = 0
  CHECK(mor_eq(cat().fibre_power(r2, 1).proj_k, cat().proj(r2), 100).is_equal());
  CHECK(mor_eq(cat().fibre_power(r2, 1).zero_k, cat().zero(r2), 100).is_equal());
}

TEST_CASE("composition is associative and unital on sampled triples") {
  auto r4 = zmod(4);
  auto r2 = zmod(2);
  RingMor mod2{r4, r2, [](Elem x) { return x % 2; }, "mod2"};
  auto incl = cat().zero(r2);           // Z/2 -> T(Z/2)
  auto pr = cat().proj(r2);             // T(Z/2) -> Z/2
  auto f = mod2, g = incl, h = pr;
  auto lhs = ring_compose(ring_compose(f, g), h);
  auto rhs = ring_compose(f, ring_compose(g, h));
  CHECK(mor_eq(lhs, rhs, 100).is_equal());
  CHECK(mor_eq(ring_compose(ring_identity(r4), f), f, 100).is_equal());
  CHECK(mor_eq(ring_compose(f, ring_identity(r2)), f, 100).is_equal());
}
