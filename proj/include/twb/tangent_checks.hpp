#pragma once

// Instance-agnostic tangent-structure verification. The core suite contains
// exactly the displayed structural equations, naturality of p/0/l, additive
// bundle laws for the fibrewise addition, and functor laws. Instances that
// expose a flip involution additionally register an extended suite (flip and
// lift compatibility laws); those run only when present.

#include <string>
#include <vector>

#include "twb/anchors.hpp"
#include "twb/diagram.hpp"
#include "twb/report.hpp"

namespace twb {

/// Additive-bundle laws for (p_X, 0_X, +_X): unit, commutativity,
/// associativity and projection compatibility, all fibrewise and exact.
template <class C>
void check_additive_bundle(const C& cat, const typename C::Obj& x, const Bounds& bounds,
                           Report& rep, const std::string& tag) {
  using Mor = typename C::Mor;
  const Elem budget = bounds.max_carrier;
  auto tx = cat.tangent(x);
  auto p2 = cat.fibre_power(x, 2);
  auto addm = cat.add(x);

  auto pair2 = [&](const Mor& a, const Mor& b) { return p2.mediate({a, b}, budget); };

  // unit: <0 p, 1> + = 1 and <1, 0 p> + = 1
  auto zp = cat.compose(cat.proj(x), cat.zero(x));
  for (int side = 0; side < 2; ++side) {
    auto name = tag + (side == 0 ? "/additive-unit-left" : "/additive-unit-right");
    auto mr = side == 0 ? pair2(zp, cat.identity(tx)) : pair2(cat.identity(tx), zp);
    if (!mr.mor) {
      detail::mediate_item(rep, name, anchors::additive_bundle, mr);
      continue;
    }
    detail::eq_item(rep, name, anchors::additive_bundle,
                    cat.eq(cat.compose(*mr.mor, addm), cat.identity(tx), budget));
  }

  // commutativity: swap then add
  auto swap = pair2(p2.components[1], p2.components[0]);
  if (!swap.mor) {
    detail::mediate_item(rep, tag + "/additive-comm", anchors::additive_bundle, swap);
  } else {
    detail::eq_item(rep, tag + "/additive-comm", anchors::additive_bundle,
                    cat.eq(cat.compose(*swap.mor, addm), addm, budget));
  }

  // associativity on the triple fibre power
  auto p3 = cat.fibre_power(x, 3);
  auto s12 = pair2(p3.components[0], p3.components[1]);
  auto s23 = pair2(p3.components[1], p3.components[2]);
  if (!s12.mor || !s23.mor) {
    detail::mediate_item(rep, tag + "/additive-assoc", anchors::additive_bundle,
                         s12.mor ? s23 : s12);
  } else {
    auto left_in = pair2(cat.compose(*s12.mor, addm), p3.components[2]);
    auto right_in = pair2(p3.components[0], cat.compose(*s23.mor, addm));
    if (!left_in.mor || !right_in.mor) {
      detail::mediate_item(rep, tag + "/additive-assoc", anchors::additive_bundle,
                           left_in.mor ? right_in : left_in);
    } else {
      detail::eq_item(rep, tag + "/additive-assoc", anchors::additive_bundle,
                      cat.eq(cat.compose(*left_in.mor, addm), cat.compose(*right_in.mor, addm),
                             budget));
    }
  }

  // compatibility over the base: +;p = p_2
  detail::eq_item(rep, tag + "/additive-proj-compat", anchors::additive_bundle,
                  cat.eq(cat.compose(addm, cat.proj(x)), p2.proj_k, budget));
}

/// Extended suite registered by instances exposing a flip involution.
template <class C>
void check_extended_suite(const C& cat, const typename C::Obj& x, const Bounds& bounds,
                          Report& rep, const std::string& tag) {
  const Elem budget = bounds.max_carrier;
  auto tx = cat.tangent(x);
  auto ttx = cat.tangent(tx);
  auto c = cat.flip(x);
  auto l = cat.lift(x);

  detail::eq_item(rep, tag + "/flip-involution", anchors::extended_suite,
                  cat.eq(cat.compose(c, c), cat.identity(ttx), budget));
  detail::eq_item(rep, tag + "/lift-flip", anchors::extended_suite,
                  cat.eq(cat.compose(l, c), l, budget));
  detail::eq_item(rep, tag + "/lift-coassoc", anchors::extended_suite,
                  cat.eq(cat.compose(l, cat.tangent_mor(l)),
                         cat.compose(l, cat.lift(tx)), budget));

  // lift additivity: +_X ; l_X agrees with the pairwise lift followed by T(+_X).
  auto out = cat.lift_additivity(x, budget);
  switch (out.status) {
    case Status::pass:
      rep.add(tag + "/lift-additive", Status::pass, Mode::exact, anchors::extended_suite);
      break;
    case Status::fail:
      rep.add(tag + "/lift-additive", Status::fail, Mode::exact, anchors::extended_suite,
              out.witness);
      break;
    default:
      rep.add(tag + "/lift-additive", Status::skipped, Mode::exact, anchors::extended_suite,
              out.witness);
  }
}

/// Full tangent-axiom report over the given objects and sample morphisms.
/// Equations are instantiated at X = T^j(M) for j < N.
template <class C>
Report check_tangent_axioms(const C& cat, const std::vector<typename C::Obj>& objects,
                            const std::vector<typename C::Mor>& morphisms, int N,
                            const Bounds& bounds) {
  require(N >= 1, ErrorKind::input, "tangent power bound N must be >= 1");
  const Elem budget = bounds.max_carrier;
  Report rep;
  rep.title = "tangent axioms (N=" + std::to_string(N) + ")";

  for (const auto& m : objects) {
    auto x = m;
    for (int level = 0; level < N; ++level, x = cat.tangent(x)) {
      const std::string tag = "level" + std::to_string(level) + "[" + cat.obj_name(m) + "]";
      auto tx = cat.tangent(x);

      detail::eq_item(rep, tag + "/section-retract", anchors::zero_section,
                      cat.eq(cat.compose(cat.zero(x), cat.proj(x)), cat.identity(x), budget));
      detail::eq_item(rep, tag + "/lift-zero", anchors::lift_zero,
                      cat.eq(cat.compose(cat.zero(x), cat.lift(x)),
                             cat.compose(cat.zero(x), cat.tangent_mor(cat.zero(x))), budget));
      detail::eq_item(rep, tag + "/lift-proj", anchors::lift_proj,
                      cat.eq(cat.compose(cat.lift(x), cat.tangent_mor(cat.proj(x))),
                             cat.compose(cat.proj(x), cat.zero(x)), budget));

      check_additive_bundle(cat, x, bounds, rep, tag);

      // functor unit law at this level
      detail::eq_item(rep, tag + "/functor-id", anchors::functoriality,
                      cat.eq(cat.tangent_mor(cat.identity(x)), cat.identity(tx), budget));

      if constexpr (requires { cat.flip(x); }) {
        check_extended_suite(cat, x, bounds, rep, tag);
      }
    }
  }

  for (std::size_t i = 0; i < morphisms.size(); ++i) {
    auto f = morphisms[i];
    for (int level = 0; level < N; ++level, f = cat.tangent_mor(f)) {
      const std::string tag =
          "level" + std::to_string(level) + "[mor" + std::to_string(i) + "]";
      auto a = cat.dom(f);
      auto b = cat.cod(f);
      auto tf = cat.tangent_mor(f);
      detail::eq_item(rep, tag + "/naturality-p", anchors::naturality,
                      cat.eq(cat.compose(tf, cat.proj(b)), cat.compose(cat.proj(a), f), budget));
      detail::eq_item(rep, tag + "/naturality-0", anchors::naturality,
                      cat.eq(cat.compose(f, cat.zero(b)), cat.compose(cat.zero(a), tf), budget));
      detail::eq_item(rep, tag + "/naturality-l", anchors::naturality,
                      cat.eq(cat.compose(tf, cat.lift(b)),
                             cat.compose(cat.lift(a), cat.tangent_mor(tf)), budget));
    }
  }

  // functor composition law on the sampled composable pairs
  for (std::size_t i = 0; i < morphisms.size(); ++i)
    for (std::size_t j = 0; j < morphisms.size(); ++j) {
      const auto& f = morphisms[i];
      const auto& g = morphisms[j];
      if (!C::obj_eq(cat.cod(f), cat.dom(g))) continue;
      detail::eq_item(rep,
                      "functor-compose[mor" + std::to_string(i) + ";mor" + std::to_string(j) + "]",
                      anchors::functoriality,
                      cat.eq(cat.tangent_mor(cat.compose(f, g)),
                             cat.compose(cat.tangent_mor(f), cat.tangent_mor(g)), budget));
    }

  return rep;
}

}  // namespace twb
