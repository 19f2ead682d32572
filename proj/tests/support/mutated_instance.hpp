#pragma once

// Test-only instance wrapper: behaves like the wrapped finite-ring instance
// except that one structure family (p, 0, + or l) has a single table entry
// rewired at one object. Used for mutation-sensitivity testing.

#include "twb/finring_category.hpp"

namespace twb::testing {

enum class Family { proj, zero, add, lift };

inline const char* family_name(Family f) {
  switch (f) {
    case Family::proj: return "p";
    case Family::zero: return "0";
    case Family::add: return "+";
    case Family::lift: return "l";
  }
  return "?";
}

struct MutatedFinRing {
  using Obj = FinRing::Obj;
  using Mor = FinRing::Mor;

  const FinRing* inner = nullptr;
  Family family = Family::proj;
  Obj at;
  Elem index = 0;  // domain element whose image is rewired
  Elem value = 0;  // new image

  static bool obj_eq(const Obj& a, const Obj& b) { return FinRing::obj_eq(a, b); }
  static std::string obj_name(const Obj& o) { return FinRing::obj_name(o); }
  static std::optional<Elem> carrier(const Obj& o) { return FinRing::carrier(o); }
  static Mor identity(const Obj& o) { return FinRing::identity(o); }
  static Mor compose(const Mor& f, const Mor& g) { return FinRing::compose(f, g); }
  static Obj dom(const Mor& f) { return f.dom; }
  static Obj cod(const Mor& f) { return f.cod; }
  static EqOutcome eq(const Mor& f, const Mor& g, Elem budget) { return mor_eq(f, g, budget); }

  Obj tangent(const Obj& r) const { return inner->tangent(r); }
  Mor tangent_mor(const Mor& f) const { return inner->tangent_mor(f); }
  Obj tangent_n(const Obj& r, int n) const { return inner->tangent_n(r, n); }
  Mor tangent_mor_n(const Mor& f, int n) const { return inner->tangent_mor_n(f, n); }
  FinRing::Power fibre_power(const Obj& r, unsigned k) const { return inner->fibre_power(r, k); }
  Mor flip(const Obj& r) const { return inner->flip(r); }
  static constexpr bool has_flip = true;

  Mor proj(const Obj& r) const { return maybe(Family::proj, r, inner->proj(r)); }
  Mor zero(const Obj& r) const { return maybe(Family::zero, r, inner->zero(r)); }
  Mor add(const Obj& r) const { return maybe(Family::add, r, inner->add(r)); }
  Mor lift(const Obj& r) const { return maybe(Family::lift, r, inner->lift(r)); }

  EqOutcome lift_additivity(const Obj& x, Elem budget) const {
    return lift_additivity_check(*this, x, budget);
  }

 private:
  Mor maybe(Family f, const Obj& r, Mor m) const {
    if (f != family || r->id() != at->id()) return m;
    auto fn = m.fn;
    const Elem i = index, v = value;
    return {m.dom, m.cod, [fn, i, v](Elem x) { return x == i ? v : fn(x); },
            m.label + "~mut"};
  }
};

}  // namespace twb::testing
