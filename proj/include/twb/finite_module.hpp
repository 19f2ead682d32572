#pragma once

// Finite modules over the finite rings, square-zero extension carriers, and
// kernel modules of augmented rings.

#include <algorithm>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "twb/finite_ring.hpp"

namespace twb {

/// Finite R-module with explicit addition and action tables.
class Module {
 public:
  Module(RingPtr ring, std::string name, Elem size, std::vector<Elem> add,
         std::vector<Elem> act, Elem zero, std::vector<std::string> names = {})
      : ring_(std::move(ring)),
        name_(std::move(name)),
        size_(size),
        add_(std::move(add)),
        act_(std::move(act)),
        zero_(zero),
        names_(std::move(names)) {
    require(add_.size() == size_ * size_, ErrorKind::input, "module add table size mismatch");
    require(act_.size() == ring_->size() * size_, ErrorKind::input,
            "module action table size mismatch");
  }

  const RingPtr& ring() const { return ring_; }
  const std::string& name() const { return name_; }
  Elem size() const { return size_; }
  Elem add(Elem a, Elem b) const { return add_[a * size_ + b]; }
  Elem act(Elem r, Elem m) const { return act_[r * size_ + m]; }
  Elem zero() const { return zero_; }
  Elem neg(Elem a) const { return act(ring_->neg(ring_->one()), a); }
  std::string elem(Elem a) const {
    return a < names_.size() ? names_[a] : "m" + std::to_string(a);
  }

 private:
  RingPtr ring_;
  std::string name_;
  Elem size_;
  std::vector<Elem> add_, act_;
  Elem zero_;
  std::vector<std::string> names_;
};

using ModulePtr = std::shared_ptr<const Module>;

/// Exhaustive abelian-group + unital/associative/distributive action check.
inline void validate_module(const Module& m, Elem budget = 256) {
  const Elem n = m.size();
  const RingBase& R = *m.ring();
  require(n <= budget && R.size() <= budget * budget, ErrorKind::resource,
          "module validation budget exceeded for " + m.name());
  auto fail = [&](const std::string& law) {
    throw Error(ErrorKind::input, m.name() + ": " + law);
  };
  for (Elem a = 0; a < n; ++a) {
    if (m.add(a, m.zero()) != a) fail("additive identity fails at " + m.elem(a));
    if (m.act(R.one(), a) != a) fail("unital action fails at " + m.elem(a));
    bool has_inverse = false;
    for (Elem b = 0; b < n; ++b) has_inverse |= m.add(a, b) == m.zero();
    if (!has_inverse) fail("no additive inverse for " + m.elem(a));
    for (Elem b = 0; b < n; ++b) {
      if (m.add(a, b) != m.add(b, a)) fail("additive commutativity");
      if (m.add(a, b) >= n) fail("additive closure");
      for (Elem c = 0; c < n; ++c)
        if (m.add(m.add(a, b), c) != m.add(a, m.add(b, c))) fail("additive associativity");
    }
  }
  for (Elem r = 0; r < R.size(); ++r)
    for (Elem a = 0; a < n; ++a) {
      if (m.act(r, a) >= n) fail("action closure");
      for (Elem s = 0; s < R.size(); ++s) {
        if (m.act(R.mul(r, s), a) != m.act(r, m.act(s, a))) fail("action associativity");
        if (m.act(R.add(r, s), a) != m.add(m.act(r, a), m.act(s, a)))
          fail("distributivity over ring addition");
      }
      for (Elem b = 0; b < n; ++b)
        if (m.act(r, m.add(a, b)) != m.add(m.act(r, a), m.act(r, b)))
          fail("distributivity over module addition");
    }
}

inline ModulePtr make_module(RingPtr ring, std::string name, Elem size, std::vector<Elem> add,
                             std::vector<Elem> act, Elem zero,
                             std::vector<std::string> names = {}) {
  auto m = std::make_shared<Module>(std::move(ring), std::move(name), size, std::move(add),
                                    std::move(act), zero, std::move(names));
  validate_module(*m);
  return m;
}

inline ModulePtr zero_module(RingPtr ring) {
  const Elem rn = ring->size();
  return make_module(std::move(ring), "0", 1, {0}, std::vector<Elem>(rn, 0), 0, {"0"});
}

/// R as a module over itself.
inline ModulePtr free_module(RingPtr ring) {
  const RingBase& R = *ring;
  const Elem n = R.size();
  std::vector<Elem> add(n * n), act(n * n);
  std::vector<std::string> names(n);
  for (Elem a = 0; a < n; ++a) {
    names[a] = R.elem(a);
    for (Elem b = 0; b < n; ++b) {
      add[a * n + b] = R.add(a, b);
      act[a * n + b] = R.mul(a, b);
    }
  }
  return make_module(ring, ring->name(), n, std::move(add), std::move(act), R.zero(),
                     std::move(names));
}

/// Z/d as a module over Z/n (valid when d | n; validation rejects otherwise).
inline ModulePtr zmod_module(RingPtr zmod_ring, Elem d) {
  const Elem n = zmod_ring->size();
  std::vector<Elem> add(d * d), act(n * d);
  std::vector<std::string> names(d);
  for (Elem a = 0; a < d; ++a) {
    names[a] = std::to_string(a);
    for (Elem b = 0; b < d; ++b) add[a * d + b] = (a + b) % d;
  }
  for (Elem r = 0; r < n; ++r)
    for (Elem a = 0; a < d; ++a) act[r * d + a] = (r * a) % d;
  return make_module(std::move(zmod_ring), "Z/" + std::to_string(d), d, std::move(add),
                     std::move(act), 0, std::move(names));
}

inline ModulePtr product_module(const ModulePtr& m1, const ModulePtr& m2) {
  require(m1->ring()->id() == m2->ring()->id(), ErrorKind::input,
          "product modules must share the base ring");
  const Elem n1 = m1->size(), n2 = m2->size(), n = n1 * n2;
  auto enc = [n2](Elem a, Elem b) { return a * n2 + b; };
  std::vector<Elem> add(n * n), act(m1->ring()->size() * n);
  std::vector<std::string> names(n);
  for (Elem a = 0; a < n; ++a) {
    const Elem a1 = a / n2, a2 = a % n2;
    names[a] = "(" + m1->elem(a1) + "," + m2->elem(a2) + ")";
    for (Elem b = 0; b < n; ++b)
      add[a * n + b] = enc(m1->add(a1, b / n2), m2->add(a2, b % n2));
    for (Elem r = 0; r < m1->ring()->size(); ++r)
      act[r * n + a] = enc(m1->act(r, a1), m2->act(r, a2));
  }
  return make_module(m1->ring(), "(" + m1->name() + ")x(" + m2->name() + ")", n, std::move(add),
                     std::move(act), enc(m1->zero(), m2->zero()), std::move(names));
}

/// ker(q) as a module over R = cod(q), acting through the section z.
/// Section law zq = 1 is a precondition.
inline ModulePtr kernel_module(const RingMor& q, const RingMor& z, Elem budget = 1'000'000) {
  require(z.dom->id() == q.cod->id() && z.cod->id() == q.dom->id(), ErrorKind::input,
          "kernel_module: z must be a section candidate for q");
  auto zq = ring_compose(z, q);
  auto sect = mor_eq(zq, ring_identity(q.cod), budget);
  require(sect.is_equal(), ErrorKind::section, "zq != 1: " + sect.witness);

  const RingBase& E = *q.dom;
  const RingPtr R = q.cod;
  require(E.size() <= budget, ErrorKind::resource, "kernel extraction exceeds budget");
  std::vector<Elem> carrier;  // ascending E-indices: canonical order
  for (Elem e = 0; e < E.size(); ++e)
    if (q.fn(e) == R->zero()) carrier.push_back(e);

  const Elem n = carrier.size();
  std::vector<Elem> pos(E.size(), ~Elem(0));
  for (Elem i = 0; i < n; ++i) pos[carrier[i]] = i;
  auto find = [&](Elem e) {
    require(e < E.size() && pos[e] != ~Elem(0), ErrorKind::internal,
            "kernel is not closed under the induced operations");
    return pos[e];
  };

  std::vector<Elem> add(n * n), act(R->size() * n);
  std::vector<std::string> names(n);
  for (Elem i = 0; i < n; ++i) {
    names[i] = E.elem(carrier[i]);
    for (Elem j = 0; j < n; ++j) add[i * n + j] = find(E.add(carrier[i], carrier[j]));
  }
  for (Elem r = 0; r < R->size(); ++r)
    for (Elem i = 0; i < n; ++i) act[r * n + i] = find(E.mul(z.fn(r), carrier[i]));
  return make_module(R, "ker(" + (q.label.empty() ? q.dom->name() + "->" + q.cod->name() : q.label) + ")",
                     n, std::move(add), std::move(act), find(E.zero()), std::move(names));
}

/// Square-zero extension R (+) M eps: (r,m)(r',m') = (rr', r m' + r' m).
class SquareZeroRing final : public RingBase {
 public:
  SquareZeroRing(RingPtr r, ModulePtr m)
      : RingBase(r->name() + "(+)" + m->name() + "eps", checked_mul_size(r->size(), m->size())),
        r_(std::move(r)),
        m_(std::move(m)) {
    require(m_->ring()->id() == r_->id(), ErrorKind::input,
            "square-zero extension needs a module over the same ring");
  }

  const RingPtr& scalars() const { return r_; }
  const ModulePtr& module() const { return m_; }
  Elem encode(Elem r, Elem m) const { return r * m_->size() + m; }
  Elem r_part(Elem x) const { return x / m_->size(); }
  Elem m_part(Elem x) const { return x % m_->size(); }

  Elem add(Elem x, Elem y) const override {
    return encode(r_->add(r_part(x), r_part(y)), m_->add(m_part(x), m_part(y)));
  }
  Elem mul(Elem x, Elem y) const override {
    const Elem a = r_part(x), m = m_part(x), b = r_part(y), n = m_part(y);
    return encode(r_->mul(a, b), m_->add(m_->act(a, n), m_->act(b, m)));
  }
  Elem neg(Elem x) const override {
    return encode(r_->neg(r_part(x)), m_->neg(m_part(x)));
  }
  Elem zero() const override { return encode(r_->zero(), m_->zero()); }
  Elem one() const override { return encode(r_->one(), m_->zero()); }
  std::string elem(Elem x) const override {
    return detail::paren(r_->elem(r_part(x))) + "+" + detail::paren(m_->elem(m_part(x))) + "eps";
  }

 private:
  RingPtr r_;
  ModulePtr m_;
};

inline std::shared_ptr<const SquareZeroRing> square_zero_carrier(RingPtr r, ModulePtr m) {
  return std::make_shared<SquareZeroRing>(std::move(r), std::move(m));
}

}  // namespace twb
