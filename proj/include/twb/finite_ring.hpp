#pragma once

// Finite commutative rings with identity, represented by an indexed carrier
// {0..size-1} and operation callbacks. Structured carriers (dual numbers,
// fibre powers, truncated polynomials, products, limit subobjects) implement
// the operations arithmetically instead of storing size^2 tables, so tangent
// powers of small rings stay cheap to evaluate pointwise.

#include <atomic>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "twb/report.hpp"

namespace twb {

using Elem = std::uint64_t;

inline Elem checked_mul_size(Elem a, Elem b) {
  if (a != 0 && b > (~Elem(0)) / 4 / a)
    throw Error(ErrorKind::resource, "carrier size overflows the index space");
  return a * b;
}

inline Elem checked_pow_size(Elem base, unsigned exp) {
  Elem r = 1;
  for (unsigned i = 0; i < exp; ++i) r = checked_mul_size(r, base);
  return r;
}

class RingBase;
using RingPtr = std::shared_ptr<const RingBase>;

inline std::uint32_t next_object_id() {
  static std::atomic<std::uint32_t> counter{1};
  return counter.fetch_add(1);
}

/// Immutable finite commutative ring with identity. Equality of ring objects
/// is identity of construction (the `id`); isomorphism is a separate search.
class RingBase {
 public:
  RingBase(std::string name, Elem size)
      : id_(next_object_id()), name_(std::move(name)), size_(size) {
    require(size >= 1, ErrorKind::input, "ring carrier must be nonempty");
  }
  virtual ~RingBase() = default;

  std::uint32_t id() const { return id_; }
  const std::string& name() const { return name_; }
  Elem size() const { return size_; }

  virtual Elem add(Elem a, Elem b) const = 0;
  virtual Elem mul(Elem a, Elem b) const = 0;
  virtual Elem neg(Elem a) const = 0;
  virtual Elem zero() const = 0;
  virtual Elem one() const = 0;
  virtual std::string elem(Elem a) const {
    return "e" + std::to_string(a);
  }

  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }

 private:
  std::uint32_t id_;
  std::string name_;
  Elem size_;
};

namespace detail {
inline std::string paren(const std::string& s) {
  return s.find_first_of("+-") == std::string::npos ? s : "(" + s + ")";
}
}  // namespace detail

/// Ring given by explicit operation tables. The validating factory below is
/// the only public way to build one.
class TableRing final : public RingBase {
 public:
  TableRing(std::string name, Elem n, std::vector<Elem> add, std::vector<Elem> mul,
            std::vector<Elem> neg, Elem zero, Elem one, std::vector<std::string> names)
      : RingBase(std::move(name), n),
        add_(std::move(add)),
        mul_(std::move(mul)),
        neg_(std::move(neg)),
        zero_(zero),
        one_(one),
        names_(std::move(names)) {}

  Elem add(Elem a, Elem b) const override { return add_[a * size() + b]; }
  Elem mul(Elem a, Elem b) const override { return mul_[a * size() + b]; }
  Elem neg(Elem a) const override { return neg_[a]; }
  Elem zero() const override { return zero_; }
  Elem one() const override { return one_; }
  std::string elem(Elem a) const override {
    return a < names_.size() ? names_[a] : RingBase::elem(a);
  }

 private:
  std::vector<Elem> add_, mul_, neg_;
  Elem zero_, one_;
  std::vector<std::string> names_;
};

/// Exhaustive commutative-ring-axiom check; throws an input error naming the
/// violated law and a witness. O(size^3), intended for explicitly constructed
/// carriers.
inline void validate_ring(const RingBase& r, Elem budget = 512) {
  const Elem n = r.size();
  require(n <= budget, ErrorKind::resource,
          "ring validation budget exceeded for " + r.name());
  auto w1 = [&](const char* law, Elem a) {
    throw Error(ErrorKind::input, r.name() + ": " + law + " fails at " + r.elem(a));
  };
  auto w2 = [&](const char* law, Elem a, Elem b) {
    throw Error(ErrorKind::input,
                r.name() + ": " + law + " fails at (" + r.elem(a) + ", " + r.elem(b) + ")");
  };
  for (Elem a = 0; a < n; ++a) {
    if (r.add(a, r.zero()) != a) w1("additive identity", a);
    if (r.add(a, r.neg(a)) != r.zero()) w1("additive inverse", a);
    if (r.mul(a, r.one()) != a) w1("multiplicative identity", a);
    for (Elem b = 0; b < n; ++b) {
      if (r.add(a, b) != r.add(b, a)) w2("additive commutativity", a, b);
      if (r.mul(a, b) != r.mul(b, a)) w2("multiplicative commutativity", a, b);
      if (r.add(a, b) >= n) w2("additive closure", a, b);
      if (r.mul(a, b) >= n) w2("multiplicative closure", a, b);
      for (Elem c = 0; c < n; ++c) {
        if (r.add(r.add(a, b), c) != r.add(a, r.add(b, c))) w2("additive associativity", a, b);
        if (r.mul(r.mul(a, b), c) != r.mul(a, r.mul(b, c)))
          w2("multiplicative associativity", a, b);
        if (r.mul(a, r.add(b, c)) != r.add(r.mul(a, b), r.mul(a, c)))
          w2("distributivity", a, b);
      }
    }
  }
}

inline RingPtr make_table_ring(std::string name, Elem n, std::vector<Elem> add,
                               std::vector<Elem> mul, std::vector<Elem> neg, Elem zero,
                               Elem one, std::vector<std::string> names = {}) {
  require(add.size() == n * n && mul.size() == n * n && neg.size() == n, ErrorKind::input,
          "operation table sizes do not match the carrier");
  for (Elem v : add) require(v < n, ErrorKind::input, "add table value out of range");
  for (Elem v : mul) require(v < n, ErrorKind::input, "mul table value out of range");
  for (Elem v : neg) require(v < n, ErrorKind::input, "neg table value out of range");
  auto ring = std::make_shared<TableRing>(std::move(name), n, std::move(add), std::move(mul),
                                          std::move(neg), zero, one, std::move(names));
  validate_ring(*ring);
  return ring;
}

/// Z/n.
inline RingPtr zmod(Elem n) {
  require(n >= 1, ErrorKind::input, "zmod modulus must be >= 1");
  std::vector<Elem> add(n * n), mul(n * n), neg(n);
  std::vector<std::string> names(n);
  for (Elem a = 0; a < n; ++a) {
    neg[a] = (n - a) % n;
    names[a] = std::to_string(a);
    for (Elem b = 0; b < n; ++b) {
      add[a * n + b] = (a + b) % n;
      mul[a * n + b] = (a * b) % n;
    }
  }
  return make_table_ring("Z/" + std::to_string(n), n, std::move(add), std::move(mul),
                         std::move(neg), 0, n == 1 ? 0 : 1, std::move(names));
}

/// Dual numbers R[e], e^2 = 0. Element (a, b) means a + b e, index a*|R| + b.
class DualRing final : public RingBase {
 public:
  explicit DualRing(RingPtr base)
      : RingBase("T(" + base->name() + ")", checked_mul_size(base->size(), base->size())),
        base_(std::move(base)) {}

  const RingPtr& base() const { return base_; }
  Elem n() const { return base_->size(); }

  Elem encode(Elem a, Elem b) const { return a * n() + b; }
  Elem base_part(Elem x) const { return x / n(); }
  Elem eps_part(Elem x) const { return x % n(); }

  Elem add(Elem x, Elem y) const override {
    return encode(base_->add(base_part(x), base_part(y)), base_->add(eps_part(x), eps_part(y)));
  }
  Elem mul(Elem x, Elem y) const override {
    const Elem a = base_part(x), b = eps_part(x), c = base_part(y), d = eps_part(y);
    return encode(base_->mul(a, c), base_->add(base_->mul(a, d), base_->mul(b, c)));
  }
  Elem neg(Elem x) const override {
    return encode(base_->neg(base_part(x)), base_->neg(eps_part(x)));
  }
  Elem zero() const override { return encode(base_->zero(), base_->zero()); }
  Elem one() const override { return encode(base_->one(), base_->zero()); }
  std::string elem(Elem x) const override {
    return detail::paren(base_->elem(base_part(x))) + "+" +
           detail::paren(base_->elem(eps_part(x))) + "eps";
  }

 private:
  RingPtr base_;
};

/// k-fold fibre power T_k(R) of the tangent projection: elements
/// (a; b_1..b_k) = a + b_1 e_1 + .. + b_k e_k with e_i e_j = 0.
/// Index is mixed-radix with a most significant.
class FibreRing final : public RingBase {
 public:
  FibreRing(RingPtr base, unsigned k)
      : RingBase("T_" + std::to_string(k) + "(" + base->name() + ")",
                 checked_pow_size(base->size(), k + 1)),
        base_(std::move(base)),
        k_(k) {}

  unsigned k() const { return k_; }
  const RingPtr& base() const { return base_; }

  Elem encode(Elem a, const std::vector<Elem>& bs) const {
    Elem x = a;
    for (unsigned i = 0; i < k_; ++i) x = x * base_->size() + bs[i];
    return x;
  }
  Elem base_part(Elem x) const {
    for (unsigned i = 0; i < k_; ++i) x /= base_->size();
    return x;
  }
  Elem tangent_part(Elem x, unsigned i) const {
    for (unsigned j = k_; j > i + 1; --j) x /= base_->size();
    return x % base_->size();
  }

  Elem add(Elem x, Elem y) const override {
    std::vector<Elem> bs(k_);
    for (unsigned i = 0; i < k_; ++i)
      bs[i] = base_->add(tangent_part(x, i), tangent_part(y, i));
    return encode(base_->add(base_part(x), base_part(y)), bs);
  }
  Elem mul(Elem x, Elem y) const override {
    const Elem a = base_part(x), c = base_part(y);
    std::vector<Elem> bs(k_);
    for (unsigned i = 0; i < k_; ++i)
      bs[i] = base_->add(base_->mul(a, tangent_part(y, i)), base_->mul(c, tangent_part(x, i)));
    return encode(base_->mul(a, c), bs);
  }
  Elem neg(Elem x) const override {
    std::vector<Elem> bs(k_);
    for (unsigned i = 0; i < k_; ++i) bs[i] = base_->neg(tangent_part(x, i));
    return encode(base_->neg(base_part(x)), bs);
  }
  Elem zero() const override { return encode(base_->zero(), std::vector<Elem>(k_, base_->zero())); }
  Elem one() const override { return encode(base_->one(), std::vector<Elem>(k_, base_->zero())); }
  std::string elem(Elem x) const override {
    std::string s = detail::paren(base_->elem(base_part(x)));
    for (unsigned i = 0; i < k_; ++i)
      s += "+" + detail::paren(base_->elem(tangent_part(x, i))) + "eps" + std::to_string(i + 1);
    return s;
  }

 private:
  RingPtr base_;
  unsigned k_;
};

/// R[X]/(X^k): k coefficient digits, constant term least significant.
class TruncPolyRing final : public RingBase {
 public:
  TruncPolyRing(RingPtr base, unsigned k)
      : RingBase(base->name() + "[X]/(X^" + std::to_string(k) + ")",
                 checked_pow_size(base->size(), k)),
        base_(std::move(base)),
        k_(k) {
    require(k >= 1, ErrorKind::input, "truncation exponent must be >= 1");
  }

  unsigned k() const { return k_; }
  const RingPtr& base() const { return base_; }

  std::vector<Elem> digits(Elem x) const {
    std::vector<Elem> c(k_);
    for (unsigned i = 0; i < k_; ++i) {
      c[i] = x % base_->size();
      x /= base_->size();
    }
    return c;
  }
  Elem encode(const std::vector<Elem>& c) const {
    Elem x = 0;
    for (unsigned i = k_; i-- > 0;) x = x * base_->size() + c[i];
    return x;
  }
  Elem coeff(Elem x, unsigned i) const {
    for (unsigned j = 0; j < i; ++j) x /= base_->size();
    return x % base_->size();
  }

  Elem add(Elem x, Elem y) const override {
    std::vector<Elem> c(k_);
    for (unsigned i = 0; i < k_; ++i) c[i] = base_->add(coeff(x, i), coeff(y, i));
    return encode(c);
  }
  Elem mul(Elem x, Elem y) const override {
    std::vector<Elem> c(k_, base_->zero());
    for (unsigned i = 0; i < k_; ++i)
      for (unsigned j = 0; i + j < k_; ++j)
        c[i + j] = base_->add(c[i + j], base_->mul(coeff(x, i), coeff(y, j)));
    return encode(c);
  }
  Elem neg(Elem x) const override {
    std::vector<Elem> c(k_);
    for (unsigned i = 0; i < k_; ++i) c[i] = base_->neg(coeff(x, i));
    return encode(c);
  }
  Elem zero() const override { return 0; }
  Elem one() const override {
    std::vector<Elem> c(k_, base_->zero());
    c[0] = base_->one();
    return encode(c);
  }
  std::string elem(Elem x) const override {
    std::string s;
    for (unsigned i = 0; i < k_; ++i) {
      Elem ci = coeff(x, i);
      if (ci == base_->zero() && !(i == 0 && x == 0 && k_ == 1)) continue;
      if (!s.empty()) s += "+";
      if (i == 0) {
        s += base_->elem(ci);
      } else {
        if (ci != base_->one()) s += detail::paren(base_->elem(ci)) + "*";
        s += i == 1 ? "X" : "X^" + std::to_string(i);
      }
    }
    return s.empty() ? base_->elem(base_->zero()) : s;
  }

 private:
  RingPtr base_;
  unsigned k_;
};

/// Direct product A x B with componentwise operations.
class ProductRing final : public RingBase {
 public:
  ProductRing(RingPtr a, RingPtr b)
      : RingBase("(" + a->name() + ")x(" + b->name() + ")",
                 checked_mul_size(a->size(), b->size())),
        a_(std::move(a)),
        b_(std::move(b)) {}

  Elem encode(Elem x, Elem y) const { return x * b_->size() + y; }
  Elem first(Elem v) const { return v / b_->size(); }
  Elem second(Elem v) const { return v % b_->size(); }

  Elem add(Elem x, Elem y) const override {
    return encode(a_->add(first(x), first(y)), b_->add(second(x), second(y)));
  }
  Elem mul(Elem x, Elem y) const override {
    return encode(a_->mul(first(x), first(y)), b_->mul(second(x), second(y)));
  }
  Elem neg(Elem x) const override { return encode(a_->neg(first(x)), b_->neg(second(x))); }
  Elem zero() const override { return encode(a_->zero(), b_->zero()); }
  Elem one() const override { return encode(a_->one(), b_->one()); }
  std::string elem(Elem x) const override {
    return "(" + a_->elem(first(x)) + "," + b_->elem(second(x)) + ")";
  }

 private:
  RingPtr a_, b_;
};

/// Subring of an implicit product of node rings, carved out as the set of
/// edge-compatible tuples of a diagram. Carrier order is lexicographic in the
/// node order, which keeps reports and golden files stable.
class LimitRing final : public RingBase {
 public:
  LimitRing(std::string name, std::vector<RingPtr> nodes, std::vector<std::vector<Elem>> elems)
      : RingBase(std::move(name), elems.size()),
        nodes_(std::move(nodes)),
        elems_(std::move(elems)) {
    for (Elem i = 0; i < elems_.size(); ++i) index_[elems_[i]] = i;
  }

  const std::vector<RingPtr>& nodes() const { return nodes_; }
  const std::vector<Elem>& tuple(Elem x) const { return elems_[x]; }
  std::optional<Elem> index_of(const std::vector<Elem>& t) const {
    auto it = index_.find(t);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  Elem add(Elem x, Elem y) const override { return apply2(x, y, /*mul=*/false); }
  Elem mul(Elem x, Elem y) const override { return apply2(x, y, /*mul=*/true); }
  Elem neg(Elem x) const override {
    std::vector<Elem> t(nodes_.size());
    for (std::size_t i = 0; i < nodes_.size(); ++i) t[i] = nodes_[i]->neg(elems_[x][i]);
    return lookup(t);
  }
  Elem zero() const override {
    std::vector<Elem> t(nodes_.size());
    for (std::size_t i = 0; i < nodes_.size(); ++i) t[i] = nodes_[i]->zero();
    return lookup(t);
  }
  Elem one() const override {
    std::vector<Elem> t(nodes_.size());
    for (std::size_t i = 0; i < nodes_.size(); ++i) t[i] = nodes_[i]->one();
    return lookup(t);
  }
  std::string elem(Elem x) const override {
    std::string s = "<";
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      if (i) s += ",";
      s += nodes_[i]->elem(elems_[x][i]);
    }
    return s + ">";
  }

 private:
  Elem apply2(Elem x, Elem y, bool mul) const {
    std::vector<Elem> t(nodes_.size());
    for (std::size_t i = 0; i < nodes_.size(); ++i)
      t[i] = mul ? nodes_[i]->mul(elems_[x][i], elems_[y][i])
                 : nodes_[i]->add(elems_[x][i], elems_[y][i]);
    return lookup(t);
  }
  Elem lookup(const std::vector<Elem>& t) const {
    auto it = index_.find(t);
    // Compatible tuples of ring homomorphism constraints are closed under the
    // componentwise operations; a miss means a broken instance.
    require(it != index_.end(), ErrorKind::internal,
            name() + ": limit carrier is not closed under induced operations");
    return it->second;
  }

  std::vector<RingPtr> nodes_;
  std::vector<std::vector<Elem>> elems_;
  std::map<std::vector<Elem>, Elem> index_;
};

// ---------------------------------------------------------------------------
// Morphisms

/// Total map between ring carriers. Extensional data; whether it is a ring
/// homomorphism is a checkable property (`is_ring_hom`), not an invariant of
/// the type, because axiom checkers must be able to carry broken candidates.
struct RingMor {
  RingPtr dom, cod;
  std::function<Elem(Elem)> fn;
  std::string label;

  Elem operator()(Elem x) const { return fn(x); }
};

inline RingMor ring_identity(const RingPtr& r) {
  return {r, r, [](Elem x) { return x; }, "1_{" + r->name() + "}"};
}

inline RingMor mor_from_table(RingPtr dom, RingPtr cod, std::vector<Elem> table,
                              std::string label = {}) {
  require(table.size() == dom->size(), ErrorKind::input,
          "morphism table size does not match the domain carrier");
  for (Elem v : table)
    require(v < cod->size(), ErrorKind::input, "morphism table value out of range");
  auto shared = std::make_shared<std::vector<Elem>>(std::move(table));
  return {std::move(dom), std::move(cod),
          [shared](Elem x) { return (*shared)[x]; }, std::move(label)};
}

/// Diagrammatic composition: f followed by g.
inline RingMor ring_compose(const RingMor& f, const RingMor& g) {
  require(f.cod->id() == g.dom->id(), ErrorKind::precondition,
          "compose: codomain " + f.cod->name() + " != domain " + g.dom->name());
  auto ff = f.fn;
  auto gg = g.fn;
  return {f.dom, g.cod, [ff, gg](Elem x) { return gg(ff(x)); },
          f.label.empty() || g.label.empty() ? std::string{} : f.label + ";" + g.label};
}

inline std::vector<Elem> tabulate(const RingMor& m) {
  std::vector<Elem> t(m.dom->size());
  for (Elem x = 0; x < m.dom->size(); ++x) t[x] = m.fn(x);
  return t;
}

/// Extensional equality of two parallel morphisms, element by element.
inline EqOutcome mor_eq(const RingMor& f, const RingMor& g, Elem budget) {
  if (f.dom->id() != g.dom->id() || f.cod->id() != g.cod->id())
    return EqOutcome::differ("endpoint objects differ: " + f.dom->name() + "->" +
                             f.cod->name() + " vs " + g.dom->name() + "->" + g.cod->name());
  if (f.dom->size() > budget)
    return EqOutcome::skip("domain " + f.dom->name() + " (" +
                           std::to_string(f.dom->size()) + " elements) exceeds budget " +
                           std::to_string(budget));
  for (Elem x = 0; x < f.dom->size(); ++x) {
    Elem a = f.fn(x), b = g.fn(x);
    if (a != b)
      return EqOutcome::differ("at " + f.dom->elem(x) + ": " + f.cod->elem(a) +
                               " != " + f.cod->elem(b));
  }
  return EqOutcome::equal();
}

/// Checks 0,1,+,* preservation exhaustively.
inline EqOutcome is_ring_hom(const RingMor& m, Elem budget) {
  const RingBase& A = *m.dom;
  const RingBase& B = *m.cod;
  if (A.size() > budget || checked_mul_size(A.size(), A.size()) > budget)
    return EqOutcome::skip("homomorphism check exceeds budget on " + A.name());
  if (m.fn(A.zero()) != B.zero()) return EqOutcome::differ("does not preserve 0");
  if (m.fn(A.one()) != B.one()) return EqOutcome::differ("does not preserve 1");
  for (Elem a = 0; a < A.size(); ++a)
    for (Elem b = 0; b < A.size(); ++b) {
      if (m.fn(A.add(a, b)) != B.add(m.fn(a), m.fn(b)))
        return EqOutcome::differ("does not preserve + at (" + A.elem(a) + "," + A.elem(b) + ")");
      if (m.fn(A.mul(a, b)) != B.mul(m.fn(a), m.fn(b)))
        return EqOutcome::differ("does not preserve * at (" + A.elem(a) + "," + A.elem(b) + ")");
    }
  return EqOutcome::equal();
}

// Ring constructor expressions ("provenance") used by scenario files live in
// the cli layer; these helpers realize them.

inline RingPtr trunc_poly(RingPtr base, unsigned k) {
  return std::make_shared<TruncPolyRing>(std::move(base), k);
}
inline RingPtr ring_product(RingPtr a, RingPtr b) {
  return std::make_shared<ProductRing>(std::move(a), std::move(b));
}

/// Evaluation at X = 0: the canonical retraction R[X]/(X^k) -> R.
inline RingMor trunc_eval0(const std::shared_ptr<const TruncPolyRing>& e) {
  return {e, e->base(), [e](Elem x) { return e->coeff(x, 0); }, "ev0"};
}
/// Constant-polynomial inclusion R -> R[X]/(X^k).
inline RingMor trunc_include(const std::shared_ptr<const TruncPolyRing>& e) {
  return {e->base(), e,
          [e](Elem a) {
            std::vector<Elem> c(e->k(), e->base()->zero());
            c[0] = a;
            return e->encode(c);
          },
          "const"};
}

}  // namespace twb
