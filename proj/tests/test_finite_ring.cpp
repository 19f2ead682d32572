#include <catch2/catch_amalgamated.hpp>

#include "twb/finite_module.hpp"
#include "twb/finite_ring.hpp"

using namespace twb;

TEST_CASE("zmod carriers and tables") {
  auto r2 = zmod(2);
  CHECK(r2->size() == 2);
  CHECK(r2->add(1, 1) == 0);
  CHECK(r2->mul(1, 1) == 1);

  auto r6 = zmod(6);
  CHECK(r6->mul(2, 3) == 0);
  CHECK(r6->neg(2) == 4);
  CHECK(r6->elem(5) == "5");
}

TEST_CASE("make_table_ring rejects broken tables naming the law") {
  // Z/2 with a twisted addition: 1+1 = 1 breaks additive inverses.
  std::vector<Elem> add = {0, 1, 1, 1};
  std::vector<Elem> mul = {0, 0, 0, 1};
  std::vector<Elem> neg = {0, 1};
  try {
    make_table_ring("bad", 2, add, mul, neg, 0, 1);
    FAIL("expected a construction error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::input);
    CHECK(std::string(e.what()).find("additive") != std::string::npos);
  }
}

TEST_CASE("trunc_poly ring: X^3 = 0 and carrier size") {
  auto r2 = zmod(2);
  auto e = std::static_pointer_cast<const TruncPolyRing>(trunc_poly(r2, 3));
  CHECK(e->size() == 8);  // coefficient tuples over Z/2, length 3
  // X has digits (0,1,0) -> index 2; X*X = X^2 (index 4); X*X*X reduces to 0.
  const Elem X = e->encode({0, 1, 0});
  CHECK(e->mul(X, X) == e->encode({0, 0, 1}));
  CHECK(e->mul(e->mul(X, X), X) == e->zero());
  CHECK(e->elem(X) == "X");
  CHECK(e->elem(e->add(e->one(), X)) == "1+X");
  validate_ring(*e);
}

TEST_CASE("dual numbers multiply with eps^2 = 0") {
  auto r4 = zmod(4);
  DualRing t(r4);
  CHECK(t.size() == 16);
  // (1 + 2e)(2 + 3e) = 2 + (3 + 4)e = 2 + 3e
  CHECK(t.mul(t.encode(1, 2), t.encode(2, 3)) == t.encode(2, 3));
  // (0 + 1e)(0 + 1e) = 0
  CHECK(t.mul(t.encode(0, 1), t.encode(0, 1)) == t.zero());
  validate_ring(t);
}

TEST_CASE("fibre power ring: pairwise-zero tangent directions") {
  auto r2 = zmod(2);
  FibreRing f(r2, 2);
  CHECK(f.size() == 8);
  const Elem x = f.encode(1, {1, 0});  // 1 + e1
  const Elem y = f.encode(1, {0, 1});  // 1 + e2
  // (1+e1)(1+e2) = 1 + e1 + e2 (cross term e1 e2 = 0)
  CHECK(f.mul(x, y) == f.encode(1, {1, 1}));
  validate_ring(f);
}

TEST_CASE("product ring is componentwise") {
  auto p = ring_product(zmod(2), zmod(3));
  CHECK(p->size() == 6);
  validate_ring(*p);
}

TEST_CASE("square-zero carrier over a kernel module") {
  auto r2 = zmod(2);
  auto e = std::static_pointer_cast<const TruncPolyRing>(trunc_poly(r2, 3));
  auto q = trunc_eval0(e);
  auto z = trunc_include(e);
  auto m = kernel_module(q, z);
  CHECK(m->size() == 4);  // {0, X, X^2, X+X^2}
  // X acts on the kernel through inclusion: X * X = X^2, X * X^2 = 0.
  auto sq = square_zero_carrier(r2, m);
  CHECK(sq->size() == 8);
  validate_ring(*sq);

  // free module of rank one reproduces dual numbers up to tables
  auto fr = free_module(r2);
  auto t = square_zero_carrier(r2, fr);
  CHECK(t->size() == 4);
  validate_ring(*t);
}

TEST_CASE("kernel_module rejects a non-section") {
  auto r2 = zmod(2);
  auto e = std::static_pointer_cast<const TruncPolyRing>(trunc_poly(r2, 2));
  auto q = trunc_eval0(e);
  // "section" that is actually the zero-ish constant map at 1: z;q != 1
  RingMor bad{r2, e, [e](Elem) { return e->one(); }, "bad"};
  CHECK_THROWS_AS(kernel_module(q, bad), Error);
}

TEST_CASE("module validation catches invalid scalar restriction") {
  // Z/3 is not a Z/4-module: (1+1+1+1)m = m would force m = 0.
  CHECK_THROWS_AS(zmod_module(zmod(4), 3), Error);
  CHECK_NOTHROW(zmod_module(zmod(4), 2));
}

TEST_CASE("morphism equality is extensional with witnesses") {
  auto r2 = zmod(2);
  auto idm = ring_identity(r2);
  RingMor swap{r2, r2, [](Elem x) { return x ^ 1; }, "swap"};
  auto out = mor_eq(idm, swap, 100);
  CHECK(out.status == Status::fail);
  CHECK(out.witness.find("at 0") != std::string::npos);
  CHECK(mor_eq(idm, ring_identity(r2), 100).is_equal());
}

TEST_CASE("is_ring_hom validates homomorphism laws") {
  auto r4 = zmod(4);
  auto r2 = zmod(2);
  RingMor mod2{r4, r2, [](Elem x) { return x % 2; }, "mod2"};
  CHECK(is_ring_hom(mod2, 1000).is_equal());
  RingMor broken{r4, r2, [](Elem x) { return x == 3 ? 0u : x % 2; }, "broken"};
  CHECK(is_ring_hom(broken, 1000).status == Status::fail);
}
