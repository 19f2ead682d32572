#pragma once

// The fully computable instance category: finite commutative rings, dual
// number tangent structure T(R) = R[eps], fibre powers, and limits computed
// as edge-compatible tuple subrings. Every universality question in this
// instance reduces to a finite bijection check because limits of
// equation-defined algebras are created on underlying carriers.

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "twb/diagram.hpp"
#include "twb/finite_module.hpp"
#include "twb/finite_ring.hpp"
#include "twb/report.hpp"

namespace twb {

class FinRing {
 public:
  using Obj = RingPtr;
  using Mor = RingMor;
  using Lim = RealizedLimit<Obj, Mor>;
  using Power = FibrePowerData<Obj, Mor>;

  static constexpr const char* instance_name = "finring";

  // -- category ------------------------------------------------------------

  static bool obj_eq(const Obj& a, const Obj& b) { return a->id() == b->id(); }
  static std::string obj_name(const Obj& o) { return o->name(); }
  static std::optional<Elem> carrier(const Obj& o) { return o->size(); }
  static Mor identity(const Obj& o) { return ring_identity(o); }
  static Mor compose(const Mor& f, const Mor& g) { return ring_compose(f, g); }
  static Obj dom(const Mor& f) { return f.dom; }
  static Obj cod(const Mor& f) { return f.cod; }
  static EqOutcome eq(const Mor& f, const Mor& g, Elem budget) { return mor_eq(f, g, budget); }

  // -- tangent structure ----------------------------------------------------

  Obj tangent(const Obj& r) const {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = tangent_cache_.find(r->id());
    if (it != tangent_cache_.end()) return it->second;
    auto t = std::make_shared<DualRing>(r);
    tangent_cache_.emplace(r->id(), t);
    return t;
  }

  Mor tangent_mor(const Mor& f) const {
    auto td = dual(tangent(f.dom));
    auto tc = dual(tangent(f.cod));
    auto g = f.fn;
    return {td, tc,
            [td, tc, g](Elem x) { return tc->encode(g(td->base_part(x)), g(td->eps_part(x))); },
            f.label.empty() ? std::string{} : "T(" + f.label + ")"};
  }

  Obj tangent_n(const Obj& r, int n) const {
    Obj o = r;
    for (int i = 0; i < n; ++i) o = tangent(o);
    return o;
  }
  Mor tangent_mor_n(const Mor& f, int n) const {
    Mor m = f;
    for (int i = 0; i < n; ++i) m = tangent_mor(m);
    return m;
  }

  /// p_M : TM -> M
  Mor proj(const Obj& r) const {
    auto t = dual(tangent(r));
    return {t, r, [t](Elem x) { return t->base_part(x); }, "p_{" + r->name() + "}"};
  }
  /// 0_M : M -> TM
  Mor zero(const Obj& r) const {
    auto t = dual(tangent(r));
    auto z = r->zero();
    return {r, t, [t, z](Elem a) { return t->encode(a, z); }, "0_{" + r->name() + "}"};
  }
  /// +_M : T_2 M -> TM, (a,b1,b2) -> (a, b1+b2)
  Mor add(const Obj& r) const {
    auto p2 = fibre_power(r, 2);
    auto f2 = std::static_pointer_cast<const FibreRing>(p2.obj);
    auto t = dual(tangent(r));
    auto base = r;
    return {p2.obj, t,
            [f2, t, base](Elem x) {
              return t->encode(f2->base_part(x),
                               base->add(f2->tangent_part(x, 0), f2->tangent_part(x, 1)));
            },
            "+_{" + r->name() + "}"};
  }
  /// ell_M : TM -> T^2 M, a + b eps -> a + b eps eps'
  Mor lift(const Obj& r) const {
    auto t = dual(tangent(r));
    auto tt = dual(tangent(tangent(r)));
    auto z = r->zero();
    return {t, tt,
            [t, tt, z](Elem x) {
              return tt->encode(t->encode(t->base_part(x), z), t->encode(z, t->eps_part(x)));
            },
            "l_{" + r->name() + "}"};
  }
  /// Flip c_M : T^2 M -> T^2 M, part of the instance-registered extended
  /// equation suite (not displayed structure; see check_tangent_axioms).
  Mor flip(const Obj& r) const {
    auto t = dual(tangent(r));
    auto tt = dual(tangent(tangent(r)));
    return {tt, tt,
            [t, tt](Elem x) {
              const Elem u = tt->base_part(x), v = tt->eps_part(x);
              return tt->encode(t->encode(t->base_part(u), t->base_part(v)),
                                t->encode(t->eps_part(u), t->eps_part(v)));
            },
            "c_{" + r->name() + "}"};
  }
  static constexpr bool has_flip = true;

  EqOutcome lift_additivity(const Obj& x, Elem budget) const;

  Power fibre_power(const Obj& r, unsigned k) const {
    if (k == 0) return {r, identity(r), identity(r), {}, nullptr, nullptr};
    if (k == 1) {
      Power p{tangent(r), proj(r), zero(r), {identity(tangent(r))}, nullptr, nullptr};
      p.mediate = [](const std::vector<Mor>& legs, Elem) -> MediateResult<Mor> {
        if (legs.size() != 1) return MediateResult<Mor>::fail("expected exactly one leg");
        return MediateResult<Mor>::ok(legs[0]);
      };
      p.mediate_point = [](const std::vector<Elem>& vs) -> std::optional<Elem> {
        if (vs.size() != 1) return std::nullopt;
        return vs[0];
      };
      return p;
    }
    std::shared_ptr<const FibreRing> fr;
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto key = std::make_pair(r->id(), k);
      auto it = fibre_cache_.find(key);
      if (it != fibre_cache_.end()) {
        fr = it->second;
      } else {
        fr = std::make_shared<FibreRing>(r, k);
        fibre_cache_.emplace(key, fr);
      }
    }
    auto t = dual(tangent(r));
    Power p;
    p.obj = fr;
    p.proj_k = {fr, r, [fr](Elem x) { return fr->base_part(x); },
                "p_" + std::to_string(k) + "_{" + r->name() + "}"};
    auto z = r->zero();
    p.zero_k = {r, fr,
                [fr, z, k](Elem a) { return fr->encode(a, std::vector<Elem>(k, z)); },
                "0_" + std::to_string(k) + "_{" + r->name() + "}"};
    for (unsigned i = 0; i < k; ++i)
      p.components.push_back({fr, t,
                              [fr, t, i](Elem x) {
                                return t->encode(fr->base_part(x), fr->tangent_part(x, i));
                              },
                              {}});
    p.mediate = [fr, t, k](const std::vector<Mor>& legs, Elem budget) -> MediateResult<Mor> {
      if (legs.size() != k) return MediateResult<Mor>::fail("wrong number of legs");
      for (const auto& l : legs)
        if (l.cod->id() != t->id())
          return MediateResult<Mor>::fail("leg codomain is not " + t->name());
      const Obj x = legs[0].dom;
      for (const auto& l : legs)
        if (l.dom->id() != x->id()) return MediateResult<Mor>::fail("legs have mixed domains");
      if (x->size() > budget)
        return MediateResult<Mor>::skip("mediating domain " + x->name() + " exceeds budget");
      std::vector<Elem> table(x->size());
      for (Elem e = 0; e < x->size(); ++e) {
        std::vector<Elem> bs(k);
        Elem base = 0;
        for (unsigned i = 0; i < k; ++i) {
          const Elem v = legs[i].fn(e);
          const Elem b = t->base_part(v);
          if (i == 0)
            base = b;
          else if (b != base)
            return MediateResult<Mor>::fail("legs do not agree over the base at " + x->elem(e));
          bs[i] = t->eps_part(v);
        }
        table[e] = fr->encode(base, bs);
      }
      return MediateResult<Mor>::ok(mor_from_table(x, fr, std::move(table)));
    };
    p.mediate_point = [fr, t, k](const std::vector<Elem>& vs) -> std::optional<Elem> {
      if (vs.size() != k) return std::nullopt;
      std::vector<Elem> bs(k);
      Elem base = 0;
      for (unsigned i = 0; i < k; ++i) {
        const Elem b = t->base_part(vs[i]);
        if (i == 0)
          base = b;
        else if (b != base)
          return std::nullopt;
        bs[i] = t->eps_part(vs[i]);
      }
      return fr->encode(base, bs);
    };
    return p;
  }

  // -- limits ----------------------------------------------------------------

  using Dia = Diagram<Obj, Mor>;
  using DCone = Cone<Obj, Mor>;

  /// Limit of a finite diagram: the subring of edge-compatible tuples, with
  /// legs the tuple projections and canonical lexicographic carrier order.
  RealizeOutcome<Obj, Mor> realize_limit(const Dia& d, Elem budget) const {
    require(!d.nodes.empty(), ErrorKind::precondition, "limit of an empty diagram");
    const std::size_t m = d.nodes.size();
    for (const auto& e : d.edges) {
      require(e.src < m && e.dst < m, ErrorKind::input, "edge endpoints out of range");
      require(e.mor.dom->id() == d.nodes[e.src]->id() && e.mor.cod->id() == d.nodes[e.dst]->id(),
              ErrorKind::input, "edge morphism endpoints do not match its nodes");
    }

    constexpr Elem UNSET = ~Elem(0);
    std::vector<std::vector<Elem>> frontier{std::vector<Elem>(m, UNSET)};
    std::vector<bool> visited(m, false);
    std::size_t visited_count = 0;

    auto check_edges_at = [&](std::vector<Elem>& t, std::size_t v) {
      for (const auto& e : d.edges) {
        if (e.src == v && t[e.dst] != UNSET && e.mor.fn(t[v]) != t[e.dst]) return false;
        if (e.dst == v && e.src != v && t[e.src] != UNSET && e.mor.fn(t[e.src]) != t[v])
          return false;
      }
      return true;
    };

    while (visited_count < m) {
      // next node: connected to the visited set if possible, else a fresh one
      std::size_t v = m;
      bool forward = false;
      std::size_t via_edge = 0;
      for (std::size_t e = 0; e < d.edges.size() && v == m; ++e) {
        const auto& ed = d.edges[e];
        if (visited[ed.src] && !visited[ed.dst]) v = ed.dst, forward = true, via_edge = e;
        else if (visited[ed.dst] && !visited[ed.src]) v = ed.src, forward = false, via_edge = e;
      }
      bool free_node = false;
      if (v == m) {
        for (std::size_t i = 0; i < m; ++i)
          if (!visited[i]) {
            v = i;
            free_node = true;
            break;
          }
      }

      std::vector<std::vector<Elem>> next;
      if (free_node) {
        const Elem n = d.nodes[v]->size();
        if (n > budget || checked_mul_size(std::max<Elem>(frontier.size(), 1), n) > budget)
          return RealizeOutcome<Obj, Mor>::skip("enumerating " + d.nodes[v]->name() +
                                                " exceeds budget");
        for (const auto& t : frontier)
          for (Elem x = 0; x < n; ++x) {
            auto t2 = t;
            t2[v] = x;
            if (check_edges_at(t2, v)) next.push_back(std::move(t2));
          }
      } else if (forward) {
        const auto& ed = d.edges[via_edge];
        for (const auto& t : frontier) {
          auto t2 = t;
          t2[v] = ed.mor.fn(t2[ed.src]);
          if (check_edges_at(t2, v)) next.push_back(std::move(t2));
        }
      } else {
        // entering v against edge v -> u: enumerate preimage buckets
        const auto& ed = d.edges[via_edge];
        const Elem n = d.nodes[v]->size();
        if (n > budget)
          return RealizeOutcome<Obj, Mor>::skip("bucketing " + d.nodes[v]->name() +
                                                " exceeds budget");
        std::map<Elem, std::vector<Elem>> bucket;
        for (Elem x = 0; x < n; ++x) bucket[ed.mor.fn(x)].push_back(x);
        for (const auto& t : frontier) {
          auto it = bucket.find(t[ed.dst]);
          if (it == bucket.end()) continue;
          for (Elem x : it->second) {
            auto t2 = t;
            t2[v] = x;
            if (check_edges_at(t2, v)) next.push_back(std::move(t2));
          }
          if (next.size() > budget)
            return RealizeOutcome<Obj, Mor>::skip("limit tuple count exceeds budget");
        }
      }
      if (next.size() > budget)
        return RealizeOutcome<Obj, Mor>::skip("limit tuple count exceeds budget");
      frontier = std::move(next);
      visited[v] = true;
      ++visited_count;
    }

    require(!frontier.empty(), ErrorKind::internal,
            "limit carrier is empty; diagram edges are not homomorphisms");
    std::sort(frontier.begin(), frontier.end());
    std::string name = "lim[";
    for (std::size_t i = 0; i < m; ++i) name += (i ? "," : "") + d.nodes[i]->name();
    name += "]";
    auto apex = std::make_shared<LimitRing>(name, std::vector<Obj>(d.nodes), std::move(frontier));

    Lim rl;
    rl.diagram = d;
    rl.apex = apex;
    rl.status = LimitStatus::verified;
    for (std::size_t i = 0; i < m; ++i)
      rl.legs.push_back({apex, d.nodes[i],
                         [apex, i](Elem x) { return apex->tuple(x)[i]; },
                         "pr" + std::to_string(i)});
    rl.mediate_point = [apex](const std::vector<Elem>& t) { return apex->index_of(t); };
    rl.mediate = [this, apex, nodes = d.nodes](const std::vector<Mor>& legs,
                                               Elem budget2) -> MediateResult<Mor> {
      return mediate_tuples(apex, nodes,
                            [apex](const std::vector<Elem>& t) { return apex->index_of(t); },
                            legs, budget2);
    };
    return RealizeOutcome<Obj, Mor>::ok(std::move(rl));
  }

  /// Is the given cone a limit of the diagram? Finite instance: the mediating
  /// map to the compatible-tuple limit must be a bijection (limits here are
  /// created on underlying carriers).
  LimitVerdict is_limit(const Dia& d, const DCone& cone, Elem budget) const {
    require(cone.legs.size() == d.nodes.size(), ErrorKind::precondition,
            "cone legs do not match diagram nodes");
    for (std::size_t i = 0; i < d.nodes.size(); ++i) {
      require(cone.legs[i].dom->id() == cone.apex->id() &&
                  cone.legs[i].cod->id() == d.nodes[i]->id(),
              ErrorKind::precondition, "cone leg endpoints mismatch");
    }
    for (const auto& e : d.edges) {
      auto lhs = compose(cone.legs[e.src], e.mor);
      auto chk = eq(lhs, cone.legs[e.dst], budget);
      if (chk.status == Status::skipped)
        return {Status::skipped, Mode::exact, "cone commutation: " + chk.witness};
      require(chk.is_equal(), ErrorKind::precondition,
              "cone does not commute with edge " + e.label + ": " + chk.witness);
    }

    auto out = realize_limit(d, budget);
    if (!out.limit) return {Status::skipped, Mode::exact, out.problem};
    const auto& rl = *out.limit;
    const Elem apex_size = cone.apex->size();
    if (apex_size > budget)
      return {Status::skipped, Mode::exact, "cone apex exceeds budget"};

    auto lim_ring = std::static_pointer_cast<const LimitRing>(rl.apex);
    std::vector<Elem> hit(lim_ring->size(), ~Elem(0));
    std::vector<Elem> t(d.nodes.size());
    for (Elem x = 0; x < apex_size; ++x) {
      for (std::size_t i = 0; i < d.nodes.size(); ++i) t[i] = cone.legs[i].fn(x);
      auto idx = lim_ring->index_of(t);
      require(idx.has_value(), ErrorKind::internal,
              "commuting cone produced an incompatible tuple");
      if (hit[*idx] != ~Elem(0))
        return {Status::fail, Mode::exact,
                "comparison map not injective: " + cone.apex->elem(hit[*idx]) + " and " +
                    cone.apex->elem(x) + " map to " + lim_ring->elem(*idx)};
      hit[*idx] = x;
    }
    for (Elem y = 0; y < lim_ring->size(); ++y)
      if (hit[y] == ~Elem(0))
        return {Status::fail, Mode::exact,
                "comparison map not surjective: " + lim_ring->elem(y) + " is not hit"};
    return {Status::pass, Mode::exact, {}};
  }

  /// Mediating morphism through a claimed limit cone, built pointwise.
  MediateResult<Mor> mediate(const Lim& rl, const std::vector<Mor>& legs, Elem budget) const {
    if (rl.mediate) return rl.mediate(legs, budget);
    return MediateResult<Mor>::fail("cone has no mediation machinery");
  }

  /// T-image of a realized limit: T applied to diagram, apex and legs, with
  /// pointwise mediation derived from the base cone (dual numbers split
  /// componentwise). A limit cone iff T preserves the base one, which is
  /// exactly what the preservation checks verify.
  Lim tangent_realization(const Lim& rl) const {
    Lim out;
    out.diagram.hint = rl.diagram.hint;
    for (const auto& n : rl.diagram.nodes) out.diagram.nodes.push_back(tangent(n));
    for (const auto& e : rl.diagram.edges)
      out.diagram.edges.push_back({e.src, e.dst, tangent_mor(e.mor),
                                   e.label.empty() ? e.label : "T(" + e.label + ")"});
    out.apex = tangent(rl.apex);
    out.status = LimitStatus::exists_unverified;
    for (const auto& l : rl.legs) out.legs.push_back(tangent_mor(l));

    auto apex_dual = dual(out.apex);
    std::vector<Elem> node_sizes;
    for (const auto& n : rl.diagram.nodes) node_sizes.push_back(n->size());
    auto base_mp = rl.mediate_point;
    out.mediate_point = [apex_dual, node_sizes, base_mp](const std::vector<Elem>& tvals)
        -> std::optional<Elem> {
      if (!base_mp) return std::nullopt;
      std::vector<Elem> as(tvals.size()), bs(tvals.size());
      for (std::size_t i = 0; i < tvals.size(); ++i) {
        as[i] = tvals[i] / node_sizes[i];
        bs[i] = tvals[i] % node_sizes[i];
      }
      auto u = base_mp(as);
      auto w = base_mp(bs);
      if (!u || !w) return std::nullopt;
      return apex_dual->encode(*u, *w);
    };
    out.mediate = [this, nodes = out.diagram.nodes, apex = out.apex,
                   mp = out.mediate_point](const std::vector<Mor>& legs,
                                           Elem budget) -> MediateResult<Mor> {
      return mediate_tuples(apex, nodes, mp, legs, budget);
    };
    return out;
  }

  Lim tangent_realization_n(const Lim& rl, int n) const {
    Lim out = rl;
    for (int i = 0; i < n; ++i) out = tangent_realization(out);
    return out;
  }

  // -- misc -------------------------------------------------------------------

  /// Carrier bijectivity of a morphism.
  EqOutcome is_bijective(const Mor& f, Elem budget) const {
    if (f.dom->size() != f.cod->size())
      return EqOutcome::differ("carrier sizes differ: " + std::to_string(f.dom->size()) +
                               " vs " + std::to_string(f.cod->size()));
    if (f.dom->size() > budget) return EqOutcome::skip("bijectivity check exceeds budget");
    std::vector<Elem> hit(f.cod->size(), ~Elem(0));
    for (Elem x = 0; x < f.dom->size(); ++x) {
      Elem y = f.fn(x);
      if (hit[y] != ~Elem(0))
        return EqOutcome::differ("not injective: " + f.dom->elem(hit[y]) + " and " +
                                 f.dom->elem(x) + " map to " + f.cod->elem(y));
      hit[y] = x;
    }
    return EqOutcome::equal();
  }

  /// Table inversion of a carrier bijection.
  MediateResult<Mor> invert(const Mor& f, Elem budget) const {
    if (f.dom->size() > budget)
      return MediateResult<Mor>::skip("inversion exceeds budget on " + f.dom->name());
    auto bij = is_bijective(f, budget);
    if (bij.status == Status::skipped) return MediateResult<Mor>::skip(bij.witness);
    if (!bij.is_equal()) return MediateResult<Mor>::fail("not invertible: " + bij.witness);
    std::vector<Elem> table(f.cod->size());
    for (Elem x = 0; x < f.dom->size(); ++x) table[f.fn(x)] = x;
    return MediateResult<Mor>::ok(
        mor_from_table(f.cod, f.dom, std::move(table),
                       f.label.empty() ? std::string{} : f.label + "^{-1}"));
  }

  static std::optional<Obj> terminal() { return std::nullopt; }
  static Mor terminal_mor(const Obj& o) {
    throw Error(ErrorKind::unsupported,
                "no terminal object registered in the finite-ring instance (asked for " +
                    o->name() + " -> 1)");
  }

 private:
  static std::shared_ptr<const DualRing> dual(const Obj& o) {
    auto d = std::dynamic_pointer_cast<const DualRing>(o);
    require(d != nullptr, ErrorKind::internal, "expected a dual-number carrier: " + o->name());
    return d;
  }

  MediateResult<Mor> mediate_tuples(
      const Obj& apex, const std::vector<Obj>& nodes,
      const std::function<std::optional<Elem>(const std::vector<Elem>&)>& lookup,
      const std::vector<Mor>& legs, Elem budget) const {
    if (legs.size() != nodes.size())
      return MediateResult<Mor>::fail("cone legs do not match diagram nodes");
    for (std::size_t i = 0; i < nodes.size(); ++i)
      if (legs[i].cod->id() != nodes[i]->id())
        return MediateResult<Mor>::fail("leg " + std::to_string(i) + " codomain mismatch");
    const Obj x = legs.empty() ? nullptr : legs[0].dom;
    for (const auto& l : legs)
      if (l.dom->id() != x->id()) return MediateResult<Mor>::fail("legs have mixed domains");
    if (x->size() > budget)
      return MediateResult<Mor>::skip("mediating domain " + x->name() + " exceeds budget");
    std::vector<Elem> table(x->size());
    std::vector<Elem> t(nodes.size());
    for (Elem e = 0; e < x->size(); ++e) {
      for (std::size_t i = 0; i < nodes.size(); ++i) t[i] = legs[i].fn(e);
      auto idx = lookup(t);
      if (!idx) {
        std::string tup;
        for (std::size_t i = 0; i < nodes.size(); ++i)
          tup += (i ? "," : "") + nodes[i]->elem(t[i]);
        return MediateResult<Mor>::fail("cone does not factor: at " + x->elem(e) +
                                        " the tuple <" + tup + "> is not in the limit");
      }
      table[e] = *idx;
    }
    return MediateResult<Mor>::ok(mor_from_table(x, apex, std::move(table)));
  }

  mutable std::mutex mu_;
  mutable std::map<std::uint32_t, Obj> tangent_cache_;
  mutable std::map<std::pair<std::uint32_t, unsigned>, std::shared_ptr<const FibreRing>>
      fibre_cache_;
};

/// Extended-suite law over any finring-like instance `cat` (including the
/// mutation wrappers used by tests): +_X ; l_X equals the pairwise lift
/// <i_1 l, i_2 l> mediated through T(T_2 X) followed by T(+_X), evaluated
/// pointwise over T_2 X. Carrier layouts come from the shared ring classes;
/// the maps come from `cat`.
template <class C>
EqOutcome lift_additivity_check(const C& cat, const RingPtr& x, Elem budget) {
  auto p2 = cat.fibre_power(x, 2);
  auto f2 = std::static_pointer_cast<const FibreRing>(p2.obj);
  auto tx = std::static_pointer_cast<const DualRing>(cat.tangent(x));
  auto ttx = std::static_pointer_cast<const DualRing>(cat.tangent(cat.tangent(x)));
  auto t_f2 = std::static_pointer_cast<const DualRing>(cat.tangent(p2.obj));
  if (f2->size() > budget)
    return EqOutcome::skip("lift additivity exceeds budget on " + f2->name());
  auto lhs = cat.compose(cat.add(x), cat.lift(x));
  auto t_add = cat.tangent_mor(cat.add(x));
  auto l = cat.lift(x);
  for (Elem v = 0; v < f2->size(); ++v) {
    // lifts of the two summands, split into base/eps parts over TX
    Elem h[2], a[2], b[2];
    for (unsigned i = 0; i < 2; ++i) {
      h[i] = l.fn(tx->encode(f2->base_part(v), f2->tangent_part(v, i)));
      a[i] = ttx->base_part(h[i]);
      b[i] = ttx->eps_part(h[i]);
    }
    if (tx->base_part(a[0]) != tx->base_part(a[1]) ||
        tx->base_part(b[0]) != tx->base_part(b[1]))
      return EqOutcome::differ("pairwise lifts do not share a base at " + f2->elem(v));
    const Elem u = f2->encode(tx->base_part(a[0]), {tx->eps_part(a[0]), tx->eps_part(a[1])});
    const Elem w = f2->encode(tx->base_part(b[0]), {tx->eps_part(b[0]), tx->eps_part(b[1])});
    const Elem rhs_v = t_add.fn(t_f2->encode(u, w));
    const Elem lhs_v = lhs.fn(v);
    if (lhs_v != rhs_v)
      return EqOutcome::differ("at " + f2->elem(v) + ": " + ttx->elem(lhs_v) + " != " +
                               ttx->elem(rhs_v));
  }
  return EqOutcome::equal();
}

inline EqOutcome FinRing::lift_additivity(const Obj& x, Elem budget) const {
  return lift_additivity_check(*this, x, budget);
}

}  // namespace twb
