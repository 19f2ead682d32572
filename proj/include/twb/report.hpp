#pragma once

// Verdict plumbing shared by every checker in the workbench: check items,
// reports, bounds/budgets and the error taxonomy used across instances.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace twb {

using json = nlohmann::ordered_json;

/// Outcome of a single law/obligation check.
enum class Status {
  pass,
  fail,
  skipped,     // not evaluated (budget or unsupported); reason recorded
  probe_only,  // necessary conditions held, universal property not certified
};

inline const char* to_string(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::skipped: return "skipped";
    case Status::probe_only: return "probe-only";
  }
  return "?";
}

/// How a verdict was established.
enum class Mode {
  exact,             // exhaustive/extensional evaluation
  registered_shape,  // universal property certified symbolically for a known shape
  probe,             // finite probe family only
  structural,        // identity-of-construction / bookkeeping check
};

inline const char* to_string(Mode m) {
  switch (m) {
    case Mode::exact: return "exact";
    case Mode::registered_shape: return "registered-shape";
    case Mode::probe: return "probe";
    case Mode::structural: return "structural";
  }
  return "?";
}

struct CheckItem {
  std::string name;     // hierarchical, e.g. "additive/assoc[T(Z/4)]"
  Status status = Status::pass;
  Mode mode = Mode::exact;
  std::string anchor;   // which law this discharges (see anchors.hpp)
  std::string detail;   // human-readable extra (witness, reason code, counts)

  json to_json() const {
    json j;
    j["name"] = name;
    j["status"] = to_string(status);
    j["mode"] = to_string(mode);
    if (!anchor.empty()) j["anchor"] = anchor;
    if (!detail.empty()) j["detail"] = detail;
    return j;
  }
};

/// Flat list of check items with an aggregate verdict.
/// A report passes iff no item failed; skipped items are surfaced, never hidden.
struct Report {
  std::string title;
  std::vector<CheckItem> items;

  CheckItem& add(std::string name, Status st, Mode mode = Mode::exact,
                 std::string anchor = {}, std::string detail = {}) {
    items.push_back({std::move(name), st, mode, std::move(anchor), std::move(detail)});
    return items.back();
  }
  void merge(const Report& other, const std::string& prefix = {}) {
    for (const auto& it : other.items) {
      CheckItem copy = it;
      if (!prefix.empty()) copy.name = prefix + "/" + copy.name;
      items.push_back(std::move(copy));
    }
  }

  bool ok() const {
    for (const auto& it : items)
      if (it.status == Status::fail) return false;
    return true;
  }
  std::size_t count(Status s) const {
    std::size_t n = 0;
    for (const auto& it : items)
      if (it.status == s) ++n;
    return n;
  }
  const CheckItem* first_failure() const {
    for (const auto& it : items)
      if (it.status == Status::fail) return &it;
    return nullptr;
  }

  json to_json() const {
    json j;
    j["title"] = title;
    j["status"] = ok() ? "pass" : "fail";
    j["checks"] = json::array();
    for (const auto& it : items) j["checks"].push_back(it.to_json());
    j["skipped"] = count(Status::skipped);
    j["probe_only"] = count(Status::probe_only);
    return j;
  }
};

/// Verification bounds: K bounds wide-pullback arity, N bounds tangent powers,
/// max_carrier bounds any carrier the engine is allowed to enumerate.
struct Bounds {
  int K = 2;
  int N = 2;
  std::uint64_t max_carrier = 1'000'000;

  json to_json() const {
    return json{{"K", K}, {"N", N}, {"max_carrier", max_carrier}};
  }
};

enum class ErrorKind {
  input,        // malformed scenario / unknown name / bad table
  precondition, // operation called with violated preconditions
  section,      // zq != 1
  hypothesis,   // limit-existence/preservation hypothesis failed
  corollary,    // classification-condition violation (non-invertible comparison)
  theorem,      // guaranteed isomorphism failed: instance bug
  resource,     // budget exceeded where a result (not a verdict) was required
  unsupported,  // limit shape or feature not available in the instance
  internal,     // broken invariant inside the engine
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::input: return "input";
    case ErrorKind::precondition: return "precondition";
    case ErrorKind::section: return "section";
    case ErrorKind::hypothesis: return "hypothesis";
    case ErrorKind::corollary: return "corollary";
    case ErrorKind::theorem: return "theorem";
    case ErrorKind::resource: return "resource";
    case ErrorKind::unsupported: return "unsupported";
    case ErrorKind::internal: return "internal";
  }
  return "?";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(std::string(to_string(kind)) + ": " + msg), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

inline void require(bool cond, ErrorKind kind, const std::string& msg) {
  if (!cond) throw Error(kind, msg);
}

/// Result of an extensional equality test between two morphisms.
struct EqOutcome {
  Status status = Status::pass;  // pass / fail / skipped
  std::string witness;           // failing input and both values, or skip reason

  static EqOutcome equal() { return {Status::pass, {}}; }
  static EqOutcome differ(std::string w) { return {Status::fail, std::move(w)}; }
  static EqOutcome skip(std::string why) { return {Status::skipped, std::move(why)}; }
  bool is_equal() const { return status == Status::pass; }
};

}  // namespace twb
