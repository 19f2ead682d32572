#pragma once

// Finite diagrams, cones and realized limits, generic over an instance
// category's object/morphism types.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "twb/report.hpp"

namespace twb {

/// Structural hints set by the canonical diagram builders. Instances whose
/// limits are shape-registered (the polynomial one) key off these; the finite
/// instance computes any shape and ignores them.
enum class ShapeHint {
  generic,
  single_node,
  discrete,       // no edges: limit = product
  wide_cospan,    // k sources, one sink, one edge per source
  zigzag,         // alternating source/sink path (covers the double pullback)
};

template <class Obj, class Mor>
struct Diagram {
  struct Edge {
    std::size_t src = 0, dst = 0;
    Mor mor;           // src -> dst
    std::string label;
  };
  std::vector<Obj> nodes;
  std::vector<Edge> edges;
  ShapeHint hint = ShapeHint::generic;

  std::size_t add_node(Obj o) {
    nodes.push_back(std::move(o));
    return nodes.size() - 1;
  }
  void add_edge(std::size_t src, std::size_t dst, Mor m, std::string label = {}) {
    edges.push_back({src, dst, std::move(m), std::move(label)});
  }
};

/// A cone over a diagram: legs[i] : apex -> nodes[i].
template <class Obj, class Mor>
struct Cone {
  Obj apex;
  std::vector<Mor> legs;
};

/// Status of a computed limit.
enum class LimitStatus {
  verified,           // universal property certified
  exists_unverified,  // apex and legs produced, universality not certified
  unsupported,        // shape not computable in this instance
};

/// Outcome of asking "is this cone a limit of this diagram?".
struct LimitVerdict {
  Status status = Status::pass;  // pass / fail / skipped / probe_only
  Mode mode = Mode::exact;
  std::string detail;
};

/// Three-state result for mediating-morphism construction.
template <class Mor>
struct MediateResult {
  std::optional<Mor> mor;
  std::string problem;  // non-empty iff !mor: why (skip reason or witness)
  bool skipped = false; // true when failure is a budget/unsupported skip

  static MediateResult ok(Mor m) { return {std::move(m), {}, false}; }
  static MediateResult fail(std::string why) { return {std::nullopt, std::move(why), false}; }
  static MediateResult skip(std::string why) { return {std::nullopt, std::move(why), true}; }
};

namespace detail {

inline void eq_item(Report& rep, const std::string& name, const std::string& anchor,
                    const EqOutcome& out) {
  switch (out.status) {
    case Status::pass:
      rep.add(name, Status::pass, Mode::exact, anchor);
      break;
    case Status::fail:
      rep.add(name, Status::fail, Mode::exact, anchor, out.witness);
      break;
    default:
      rep.add(name, Status::skipped, Mode::exact, anchor, out.witness);
      break;
  }
}

template <class Mor>
inline void mediate_item(Report& rep, const std::string& name, const std::string& anchor,
                         const MediateResult<Mor>& mr) {
  rep.add(name, mr.skipped ? Status::skipped : Status::fail, Mode::exact, anchor, mr.problem);
}

}  // namespace detail

/// A limit cone together with the machinery the engine needs to use it:
/// a mediating-morphism constructor and (finite instances) a point-level
/// tuple lookup. `legs[i]` targets `diagram.nodes[i]`.
template <class Obj, class Mor>
struct RealizedLimit {
  Diagram<Obj, Mor> diagram;
  Obj apex;
  std::vector<Mor> legs;
  LimitStatus status = LimitStatus::verified;

  /// Build the mediating morphism from a commuting cone (legs aligned with
  /// diagram.nodes). Verifies commutation pointwise/symbolically.
  std::function<MediateResult<Mor>(const std::vector<Mor>&, std::uint64_t /*budget*/)> mediate;

  /// Finite instances: map a compatible value tuple to the apex element.
  /// Null for symbolic instances.
  std::function<std::optional<std::uint64_t>(const std::vector<std::uint64_t>&)> mediate_point;
};

/// Outcome of realizing a limit: either a cone with mediation machinery, or
/// the reason it was not produced.
template <class Obj, class Mor>
struct RealizeOutcome {
  std::optional<RealizedLimit<Obj, Mor>> limit;
  std::string problem;
  bool skipped = false;  // true: budget/unsupported; false: genuine failure

  static RealizeOutcome ok(RealizedLimit<Obj, Mor> rl) { return {std::move(rl), {}, false}; }
  static RealizeOutcome skip(std::string why) { return {std::nullopt, std::move(why), true}; }
};

/// k-fold fibre power of the tangent projection over an object, with the
/// structure the bundle engine consumes.
template <class Obj, class Mor>
struct FibrePowerData {
  Obj obj;                      // T_k M
  Mor proj_k;                   // T_k M -> M
  Mor zero_k;                   // M -> T_k M
  std::vector<Mor> components;  // i-th injection-opposite: T_k M -> T M
  std::function<MediateResult<Mor>(const std::vector<Mor>&, std::uint64_t)> mediate;
  /// Finite instances: combine k TM-points sharing a base into a T_k M point.
  std::function<std::optional<std::uint64_t>(const std::vector<std::uint64_t>&)> mediate_point;
};

}  // namespace twb
