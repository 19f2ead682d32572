#pragma once

// Differential bundles over an instance category: the bundle record with its
// cached wide-pullback realizations, the trivial and tangent bundles, linear
// maps, and the axiom checker (additive laws, lift laws, universality of the
// vertical lift and T^n-stability of the wide pullbacks).

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "twb/anchors.hpp"
#include "twb/diagram.hpp"
#include "twb/finring_category.hpp"
#include "twb/report.hpp"

namespace twb {

/// Whether the instance's morphisms evaluate on carrier points (finite
/// instances do; the symbolic polynomial instance does not).
template <class C>
concept PointEval = requires(const typename C::Mor& m, Elem e) {
  { m.fn(e) } -> std::convertible_to<Elem>;
};

/// The wide cospan whose limit is the k-fold fibre product of q over its
/// codomain: nodes [E x k, M], one q-edge per copy. k = 0 degenerates to the
/// single node [M].
template <class C>
Diagram<typename C::Obj, typename C::Mor> wide_cospan(const C&, const typename C::Mor& q,
                                                      unsigned k) {
  Diagram<typename C::Obj, typename C::Mor> d;
  for (unsigned i = 0; i < k; ++i) d.add_node(q.dom);
  auto base = d.add_node(q.cod);
  for (unsigned i = 0; i < k; ++i) d.add_edge(i, base, q, "q");
  d.hint = k == 0 ? ShapeHint::single_node : ShapeHint::wide_cospan;
  return d;
}

/// Apply the tangent functor to a diagram.
template <class C>
Diagram<typename C::Obj, typename C::Mor> tangent_diagram(
    const C& cat, const Diagram<typename C::Obj, typename C::Mor>& d) {
  Diagram<typename C::Obj, typename C::Mor> out;
  out.hint = d.hint;
  for (const auto& n : d.nodes) out.add_node(cat.tangent(n));
  for (const auto& e : d.edges)
    out.add_edge(e.src, e.dst, cat.tangent_mor(e.mor),
                 e.label.empty() ? e.label : "T(" + e.label + ")");
  return out;
}

template <class C>
struct DiffBundle {
  using Obj = typename C::Obj;
  using Mor = typename C::Mor;
  using Lim = RealizedLimit<Obj, Mor>;

  Obj total, base;
  Mor q;       // E -> M
  Mor z;       // M -> E
  Mor sigma;   // E_2 -> E
  Mor lambda;  // E -> TE
  std::string name;

  /// Wide-pullback realizations E_k, cached per k. The provider fixes which
  /// concrete limit cone realizes E_k (fibre powers for tangent bundles, the
  /// double pullbacks for constructed bundles, compatible tuples otherwise);
  /// E_1 is always the total object itself and E_0 the base.
  struct PowerCache {
    std::function<RealizeOutcome<Obj, Mor>(unsigned, Elem)> provider;
    std::mutex mu;
    std::map<unsigned, Lim> cache;
  };
  std::shared_ptr<PowerCache> powers = std::make_shared<PowerCache>();

  RealizeOutcome<Obj, Mor> power(unsigned k, Elem budget) const {
    {
      std::lock_guard<std::mutex> lock(powers->mu);
      auto it = powers->cache.find(k);
      if (it != powers->cache.end()) return RealizeOutcome<Obj, Mor>::ok(it->second);
    }
    auto out = powers->provider(k, budget);
    if (out.limit) {
      std::lock_guard<std::mutex> lock(powers->mu);
      powers->cache.emplace(k, *out.limit);
    }
    return out;
  }
};

/// A candidate linear map of bundles: g on totals over f on bases.
template <class C>
struct LinearMap {
  typename C::Mor total;  // g : E -> E'
  typename C::Mor base;   // f : M -> M'
  std::string name;
};

namespace detail {

/// E_0 = M and E_1 = E with their canonical cones; used by every provider.
template <class C>
RealizeOutcome<typename C::Obj, typename C::Mor> low_power(const C& cat,
                                                           const typename C::Mor& q,
                                                           const typename C::Mor& z,
                                                           unsigned k, Elem budget) {
  using Lim = RealizedLimit<typename C::Obj, typename C::Mor>;
  using Out = RealizeOutcome<typename C::Obj, typename C::Mor>;
  (void)z;
  Lim rl;
  rl.diagram = wide_cospan(cat, q, k);
  if (k == 0) {
    rl.apex = q.cod;
    rl.legs = {cat.identity(q.cod)};
    rl.mediate = [](const std::vector<typename C::Mor>& legs, Elem) {
      return MediateResult<typename C::Mor>::ok(legs[0]);
    };
    rl.mediate_point = [](const std::vector<Elem>& vs) -> std::optional<Elem> {
      return vs.size() == 1 ? std::optional<Elem>(vs[0]) : std::nullopt;
    };
    return Out::ok(std::move(rl));
  }
  // k == 1
  rl.apex = q.dom;
  rl.legs = {cat.identity(q.dom), q};
  rl.mediate = [&cat, q](const std::vector<typename C::Mor>& legs,
                         Elem b) -> MediateResult<typename C::Mor> {
    if (legs.size() != 2) return MediateResult<typename C::Mor>::fail("expected two legs");
    auto chk = cat.eq(cat.compose(legs[0], q), legs[1], b);
    if (chk.status == Status::skipped)
      return MediateResult<typename C::Mor>::skip(chk.witness);
    if (!chk.is_equal())
      return MediateResult<typename C::Mor>::fail("cone does not commute over q: " + chk.witness);
    return MediateResult<typename C::Mor>::ok(legs[0]);
  };
  if constexpr (PointEval<C>) {
    auto qfn = q.fn;
    rl.mediate_point = [qfn](const std::vector<Elem>& vs) -> std::optional<Elem> {
      if (vs.size() != 2 || qfn(vs[0]) != vs[1]) return std::nullopt;
      return vs[0];
    };
  }
  (void)budget;
  return Out::ok(std::move(rl));
}

}  // namespace detail

/// Trivial bundle cM = (1, 1, 1, 0_M): wide pullbacks of the identity are M
/// itself, realized with identity legs.
template <class C>
DiffBundle<C> trivial_bundle(const C& cat, const typename C::Obj& m) {
  using Mor = typename C::Mor;
  DiffBundle<C> b;
  b.total = m;
  b.base = m;
  b.q = cat.identity(m);
  b.z = cat.identity(m);
  b.sigma = cat.identity(m);  // E_2 is realized as M itself
  b.lambda = cat.zero(m);
  b.name = "triv(" + cat.obj_name(m) + ")";
  auto q = b.q;
  b.powers->provider = [&cat, q, m](unsigned k, Elem budget)
      -> RealizeOutcome<typename C::Obj, Mor> {
    using Lim = RealizedLimit<typename C::Obj, Mor>;
    if (k <= 1) return detail::low_power(cat, q, q, k, budget);
    Lim rl;
    rl.diagram = wide_cospan(cat, q, k);
    rl.apex = m;
    for (unsigned i = 0; i <= k; ++i) rl.legs.push_back(cat.identity(m));
    rl.mediate = [&cat, k](const std::vector<Mor>& legs, Elem b) -> MediateResult<Mor> {
      if (legs.size() != k + 1) return MediateResult<Mor>::fail("wrong number of legs");
      for (std::size_t i = 1; i < legs.size(); ++i) {
        auto chk = cat.eq(legs[0], legs[i], b);
        if (chk.status == Status::skipped) return MediateResult<Mor>::skip(chk.witness);
        if (!chk.is_equal())
          return MediateResult<Mor>::fail("cone legs over the identity differ: " + chk.witness);
      }
      return MediateResult<Mor>::ok(legs[0]);
    };
    rl.mediate_point = [](const std::vector<Elem>& vs) -> std::optional<Elem> {
      for (std::size_t i = 1; i < vs.size(); ++i)
        if (vs[i] != vs[0]) return std::nullopt;
      return vs.empty() ? std::nullopt : std::optional<Elem>(vs[0]);
    };
    return RealizeOutcome<typename C::Obj, Mor>::ok(std::move(rl));
  };
  return b;
}

/// Tangent bundle TE = (p_E, 0_E, +_E, l_E) with E_k realized by the fibre
/// powers T_k E.
template <class C>
DiffBundle<C> tangent_bundle(const C& cat, const typename C::Obj& e) {
  using Mor = typename C::Mor;
  DiffBundle<C> b;
  b.total = cat.tangent(e);
  b.base = e;
  b.q = cat.proj(e);
  b.z = cat.zero(e);
  b.sigma = cat.add(e);
  b.lambda = cat.lift(e);
  b.name = "tan(" + cat.obj_name(e) + ")";
  auto q = b.q;
  b.powers->provider = [&cat, q, e](unsigned k, Elem budget)
      -> RealizeOutcome<typename C::Obj, Mor> {
    using Lim = RealizedLimit<typename C::Obj, Mor>;
    if (k <= 1) return detail::low_power(cat, q, q, k, budget);
    auto fp = cat.fibre_power(e, k);
    Lim rl;
    rl.diagram = wide_cospan(cat, q, k);
    rl.apex = fp.obj;
    rl.legs = fp.components;
    rl.legs.push_back(fp.proj_k);
    rl.mediate = [&cat, fp, k](const std::vector<Mor>& legs, Elem b) -> MediateResult<Mor> {
      if (legs.size() != k + 1) return MediateResult<Mor>::fail("wrong number of legs");
      std::vector<Mor> tangent_legs(legs.begin(), legs.end() - 1);
      auto med = fp.mediate(tangent_legs, b);
      if (!med.mor) return med;
      auto chk = cat.eq(cat.compose(*med.mor, fp.proj_k), legs.back(), b);
      if (chk.status == Status::skipped) return MediateResult<Mor>::skip(chk.witness);
      if (!chk.is_equal())
        return MediateResult<Mor>::fail("base leg inconsistent: " + chk.witness);
      return med;
    };
    if constexpr (PointEval<C>) {
      if (fp.mediate_point) {
        auto fmp = fp.mediate_point;
        auto pfn = q.fn;
        rl.mediate_point = [fmp, pfn, k](const std::vector<Elem>& vs) -> std::optional<Elem> {
          if (vs.size() != k + 1) return std::nullopt;
          std::vector<Elem> tangent_pts(vs.begin(), vs.end() - 1);
          if (pfn(vs[0]) != vs.back()) return std::nullopt;
          return fmp(tangent_pts);
        };
      }
    }
    return RealizeOutcome<typename C::Obj, Mor>::ok(std::move(rl));
  };
  return b;
}

// ---------------------------------------------------------------------------
// Linear maps

/// Checks the linear-map laws for (g, f) from b to b2: the projection and
/// zero-section squares of a bundle map, the vertical-lift square, and as a
/// separately reported consistency probe the derived addition square.
template <class C>
Report verify_linear(const C& cat, const LinearMap<C>& m, const DiffBundle<C>& b,
                     const DiffBundle<C>& b2, const Bounds& bounds) {
  using Mor = typename C::Mor;
  const Elem budget = bounds.max_carrier;
  Report rep;
  rep.title = "linear map " + (m.name.empty() ? b.name + " -> " + b2.name : m.name);

  if (!C::obj_eq(cat.dom(m.total), b.total) || !C::obj_eq(cat.cod(m.total), b2.total) ||
      !C::obj_eq(cat.dom(m.base), b.base) || !C::obj_eq(cat.cod(m.base), b2.base)) {
    rep.add("endpoints", Status::fail, Mode::structural, anchors::linear_map,
            "morphism endpoints do not match the bundles");
    return rep;
  }
  rep.add("endpoints", Status::pass, Mode::structural, anchors::linear_map);

  detail::eq_item(rep, "proj-square", anchors::linear_map,
                  cat.eq(cat.compose(m.total, b2.q), cat.compose(b.q, m.base), budget));
  detail::eq_item(rep, "zero-square", anchors::linear_derived,
                  cat.eq(cat.compose(b.z, m.total), cat.compose(m.base, b2.z), budget));
  detail::eq_item(rep, "lift-square", anchors::linear_map,
                  cat.eq(cat.compose(m.total, b2.lambda),
                         cat.compose(b.lambda, cat.tangent_mor(m.total)), budget));

  // derived: (g x g) sigma' = sigma g, reported as a consistency probe
  auto p2 = b.power(2, budget);
  auto p2b = b2.power(2, budget);
  if (!p2.limit || !p2b.limit) {
    rep.add("derived/addition-square", Status::skipped, Mode::exact, anchors::linear_derived,
            p2.limit ? p2b.problem : p2.problem);
    return rep;
  }
  const auto& e2 = *p2.limit;
  std::vector<Mor> legs;
  legs.push_back(cat.compose(e2.legs[0], m.total));
  legs.push_back(cat.compose(e2.legs[1], m.total));
  legs.push_back(cat.compose(e2.legs[2], m.base));
  auto gg = p2b.limit->mediate(legs, budget);
  if (!gg.mor) {
    rep.add("derived/addition-square", gg.skipped ? Status::skipped : Status::fail, Mode::exact,
            anchors::linear_derived, gg.problem);
    return rep;
  }
  detail::eq_item(rep, "derived/addition-square", anchors::linear_derived,
                  cat.eq(cat.compose(*gg.mor, b2.sigma), cat.compose(b.sigma, m.total), budget));
  return rep;
}

// ---------------------------------------------------------------------------
// mu and lambda_k

/// mu = <pi_1 l, pi_2 0_E> T(sigma) : E_2 -> TE, the comparison map of the
/// vertical-lift universality square. Checked postcondition: mu p_E = pi_2.
template <class C>
std::pair<typename C::Mor, Report> mu_map(const C& cat, const DiffBundle<C>& b,
                                          const Bounds& bounds) {
  using Mor = typename C::Mor;
  const Elem budget = bounds.max_carrier;
  Report rep;
  rep.title = "mu for " + b.name;

  auto p2 = b.power(2, budget);
  require(p2.limit.has_value(), ErrorKind::resource, "E_2 unavailable: " + p2.problem);
  const auto& e2 = *p2.limit;
  auto t_e2 = cat.tangent_realization(e2);

  std::vector<Mor> legs;
  legs.push_back(cat.compose(e2.legs[0], b.lambda));
  legs.push_back(cat.compose(e2.legs[1], cat.zero(b.total)));
  legs.push_back(cat.compose(e2.legs[2], cat.zero(b.base)));
  auto med = t_e2.mediate(legs, budget);
  require(med.mor.has_value(), med.skipped ? ErrorKind::resource : ErrorKind::internal,
          "mu pairing failed: " + med.problem);
  auto mu = cat.compose(*med.mor, cat.tangent_mor(b.sigma));
  mu.label = "mu";

  detail::eq_item(rep, "mu-proj-is-pi2", anchors::mu_second_projection,
                  cat.eq(cat.compose(mu, cat.proj(b.total)), e2.legs[1], budget));
  return {mu, rep};
}

/// lambda_k : E_k -> T_k E induced by lambda and z; lambda_0 = z, lambda_1 = lambda.
template <class C>
typename C::Mor lambda_k_map(const C& cat, const DiffBundle<C>& b, unsigned k,
                             const Bounds& bounds) {
  using Mor = typename C::Mor;
  if (k == 0) return b.z;
  if (k == 1) return b.lambda;
  const Elem budget = bounds.max_carrier;
  auto pk = b.power(k, bounds.max_carrier);
  require(pk.limit.has_value(), ErrorKind::resource, "E_k unavailable: " + pk.problem);
  auto fp = cat.fibre_power(b.total, k);
  std::vector<Mor> legs;
  for (unsigned i = 0; i < k; ++i)
    legs.push_back(cat.compose(pk.limit->legs[i], b.lambda));
  auto med = fp.mediate(legs, budget);
  require(med.mor.has_value(), med.skipped ? ErrorKind::resource : ErrorKind::unsupported,
          "lambda_k mediation failed: " + med.problem);
  auto out = *med.mor;
  out.label = "lambda_" + std::to_string(k);
  return out;
}

// ---------------------------------------------------------------------------
// check_bundle

/// Full differential-bundle verification at bounds (K, N): section law,
/// fibrewise additive laws for (q, z, sigma), the lift squares, lift
/// coherence, universality of the vertical lift (mu square is a pullback,
/// stable under T^n), and existence/T^n-stability of the wide pullbacks E_k.
template <class C>
Report check_bundle(const C& cat, const DiffBundle<C>& b, const Bounds& bounds) {
  using Mor = typename C::Mor;
  using DCone = Cone<typename C::Obj, Mor>;
  const Elem budget = bounds.max_carrier;
  Report rep;
  rep.title = "check_bundle " + b.name + " (K=" + std::to_string(bounds.K) +
              ", N=" + std::to_string(bounds.N) + ")";

  // (i) section
  detail::eq_item(rep, "section", anchors::bundle_section,
                  cat.eq(cat.compose(b.z, b.q), cat.identity(b.base), budget));

  // (ii) fibrewise additive laws for (q, z, sigma)
  auto p2 = b.power(2, budget);
  if (!p2.limit) {
    rep.add("additive", Status::skipped, Mode::exact, anchors::bundle_additive, p2.problem);
  } else {
    const auto& e2 = *p2.limit;
    auto pair_into_e2 = [&](const Mor& a, const Mor& c, const Mor& to_base) {
      return e2.mediate({a, c, to_base}, budget);
    };
    auto zq = cat.compose(b.q, b.z);
    auto ide = cat.identity(b.total);
    for (int side = 0; side < 2; ++side) {
      auto name = side == 0 ? "additive/unit-left" : "additive/unit-right";
      auto mr = side == 0 ? pair_into_e2(zq, ide, b.q) : pair_into_e2(ide, zq, b.q);
      if (!mr.mor) {
        detail::mediate_item(rep, name, anchors::bundle_additive, mr);
        continue;
      }
      detail::eq_item(rep, name, anchors::bundle_additive,
                      cat.eq(cat.compose(*mr.mor, b.sigma), ide, budget));
    }
    auto q2 = e2.legs[2];
    auto swapm = pair_into_e2(e2.legs[1], e2.legs[0], q2);
    if (!swapm.mor) {
      detail::mediate_item(rep, "additive/comm", anchors::bundle_additive, swapm);
    } else {
      detail::eq_item(rep, "additive/comm", anchors::bundle_additive,
                      cat.eq(cat.compose(*swapm.mor, b.sigma), b.sigma, budget));
    }
    detail::eq_item(rep, "additive/proj-compat", anchors::bundle_additive,
                    cat.eq(cat.compose(b.sigma, b.q), q2, budget));

    auto p3 = b.power(3, budget);
    if (!p3.limit) {
      rep.add("additive/assoc", Status::skipped, Mode::exact, anchors::bundle_additive,
              p3.problem);
    } else {
      const auto& e3 = *p3.limit;
      auto q3 = e3.legs[3];
      auto s12 = pair_into_e2(e3.legs[0], e3.legs[1], q3);
      auto s23 = pair_into_e2(e3.legs[1], e3.legs[2], q3);
      if (!s12.mor || !s23.mor) {
        detail::mediate_item(rep, "additive/assoc", anchors::bundle_additive,
                             s12.mor ? s23 : s12);
      } else {
        auto left = pair_into_e2(cat.compose(*s12.mor, b.sigma), e3.legs[2], q3);
        auto right = pair_into_e2(e3.legs[0], cat.compose(*s23.mor, b.sigma), q3);
        if (!left.mor || !right.mor) {
          detail::mediate_item(rep, "additive/assoc", anchors::bundle_additive,
                               left.mor ? right : left);
        } else {
          detail::eq_item(rep, "additive/assoc", anchors::bundle_additive,
                          cat.eq(cat.compose(*left.mor, b.sigma),
                                 cat.compose(*right.mor, b.sigma), budget));
        }
      }
    }
  }

  // (iii) lift squares
  detail::eq_item(rep, "lift/over-projection", anchors::lambda_proj,
                  cat.eq(cat.compose(b.lambda, cat.proj(b.total)),
                         cat.compose(b.q, b.z), budget));
  detail::eq_item(rep, "lift/q-linear", anchors::lambda_linear,
                  cat.eq(cat.compose(b.lambda, cat.tangent_mor(b.q)),
                         cat.compose(b.q, cat.zero(b.base)), budget));

  // (iv) lift coherence
  detail::eq_item(rep, "lift/coherence", anchors::lambda_coherence,
                  cat.eq(cat.compose(b.lambda, cat.lift(b.total)),
                         cat.compose(b.lambda, cat.tangent_mor(b.lambda)), budget));

  // (v) universality of the vertical lift
  if (!p2.limit) {
    rep.add("universality", Status::skipped, Mode::exact, anchors::universality, p2.problem);
  } else {
    try {
      auto [mu, mu_rep] = mu_map(cat, b, bounds);
      rep.merge(mu_rep);
      Diagram<typename C::Obj, Mor> sq;
      auto n_m = sq.add_node(b.base);
      auto n_tm = sq.add_node(cat.tangent(b.base));
      auto n_te = sq.add_node(cat.tangent(b.total));
      sq.add_edge(n_m, n_tm, cat.zero(b.base), "0_M");
      sq.add_edge(n_te, n_tm, cat.tangent_mor(b.q), "T(q)");
      sq.hint = ShapeHint::wide_cospan;

      const auto& e2 = *p2.limit;
      DCone cone{e2.apex,
                 {e2.legs[2], cat.compose(e2.legs[2], cat.zero(b.base)), mu}};
      for (int n = 0; n <= bounds.N; ++n) {
        auto dn = sq;
        auto conen = cone;
        for (int i = 0; i < n; ++i) {
          dn = tangent_diagram(cat, dn);
          conen.apex = cat.tangent(conen.apex);
          for (auto& leg : conen.legs) leg = cat.tangent_mor(leg);
        }
        auto v = cat.is_limit(dn, conen, budget);
        rep.add("universality/pullback[n=" + std::to_string(n) + "]", v.status, v.mode,
                anchors::universality, v.detail);
      }
    } catch (const Error& err) {
      rep.add("universality", err.kind() == ErrorKind::resource ? Status::skipped : Status::fail,
              Mode::exact, anchors::universality, err.what());
    }
  }

  // (vi) wide pullbacks E_k exist and are T^n-stable
  for (int k = 0; k <= bounds.K; ++k) {
    auto pk = b.power(k, budget);
    if (!pk.limit) {
      rep.add("wide-pullback[k=" + std::to_string(k) + "]", Status::skipped, Mode::exact,
              anchors::wide_pullbacks, pk.problem);
      continue;
    }
    for (int n = 0; n <= bounds.N; ++n) {
      auto rl = *pk.limit;
      for (int i = 0; i < n; ++i) rl = cat.tangent_realization(rl);
      DCone cone{rl.apex, rl.legs};
      auto v = cat.is_limit(rl.diagram, cone, budget);
      rep.add("wide-pullback[k=" + std::to_string(k) + ",n=" + std::to_string(n) + "]",
              v.status, v.mode, anchors::wide_pullbacks, v.detail);
    }
  }

  return rep;
}

}  // namespace twb
