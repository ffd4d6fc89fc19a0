#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gitrees/reifier.hpp"
#include "gitrees/tree.hpp"

namespace gitrees {

inline constexpr std::size_t kDefaultFuel = 1'000'000;

/// One internal reduction step: strip a Tau, or reify a Vis node and strip
/// the Tick it produces. Values, errors and stuck effect nodes have no
/// successor.
std::optional<std::pair<ITree, GlobalState>> istep(const ITree& t,
                                                   const GlobalState& state,
                                                   const GlobalReifier& reifier);

enum class OutcomeKind { Value, Errored, OutOfFuel, Stuck };

std::string_view to_string(OutcomeKind k);

struct Outcome {
  OutcomeKind kind = OutcomeKind::Value;
  /// The value, the error tree, or the tree where reduction stopped.
  ITree last = ITree::nat(0);
  GlobalState state;
  std::size_t steps = 0;
  /// Set for Errored outcomes.
  std::optional<ErrorKind> error;
  /// Errored with an error kind in the allowed set.
  bool acceptable = false;

  bool is_value() const { return kind == OutcomeKind::Value; }
  /// Disallowed error or stuck.
  bool is_violation() const {
    return kind == OutcomeKind::Stuck ||
           (kind == OutcomeKind::Errored && !acceptable);
  }
};

struct TraceEntry {
  enum class Kind { Tau, Effect };

  std::size_t index = 0;
  Kind kind = Kind::Tau;
  std::optional<OpId> op;
  std::string state_summary;  // after the step
};

using Trace = std::vector<TraceEntry>;

struct RunOptions {
  std::size_t fuel = kDefaultFuel;
  std::set<ErrorKind> allowed_errors;
  bool record_trace = false;
};

struct RunResult {
  Outcome outcome;
  Trace trace;
};

/// Iterates istep at most `fuel` times and classifies where it stops.
RunResult run(const ITree& t, const GlobalState& state,
              const GlobalReifier& reifier, const RunOptions& options = {});

/// `#<idx> <TAU | EFF family.op> | state: <summary>`
std::string render_trace_entry(const TraceEntry& e,
                               const GlobalReifier& reifier);

}  // namespace gitrees
