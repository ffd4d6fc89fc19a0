#include "gitrees/engine.hpp"

#include <sstream>

namespace gitrees {

std::optional<std::pair<ITree, GlobalState>> istep(
    const ITree& t, const GlobalState& state, const GlobalReifier& reifier) {
  if (const auto* tau = t.get_if<TauHead>()) {
    return std::pair{tau->next.force(), state};
  }
  if (t.kind() != HeadKind::Vis) return std::nullopt;
  auto reified = reify(t, state, reifier);
  if (!reified) return std::nullopt;
  // A failed reification is Err(RunTime) in one step, with no Tick to strip.
  if (const auto* tau = reified->first.get_if<TauHead>()) {
    return std::pair{tau->next.force(), std::move(reified->second)};
  }
  return reified;
}

std::string_view to_string(OutcomeKind k) {
  switch (k) {
    case OutcomeKind::Value:
      return "Value";
    case OutcomeKind::Errored:
      return "Errored";
    case OutcomeKind::OutOfFuel:
      return "OutOfFuel";
    case OutcomeKind::Stuck:
      return "Stuck";
  }
  return "?";
}

RunResult run(const ITree& t, const GlobalState& state,
              const GlobalReifier& reifier, const RunOptions& options) {
  RunResult result;
  ITree current = t;
  GlobalState sigma = state;
  std::size_t steps = 0;

  auto finish = [&](OutcomeKind kind) {
    Outcome& o = result.outcome;
    o.kind = kind;
    o.last = current;
    o.state = sigma;
    o.steps = steps;
    if (const auto* e = current.get_if<ErrHead>()) {
      o.error = e->error;
      o.acceptable = options.allowed_errors.contains(e->error);
    }
    return result;
  };

  while (true) {
    switch (current.kind()) {
      case HeadKind::Nat:
      case HeadKind::Fun:
        return finish(OutcomeKind::Value);
      case HeadKind::Err:
        return finish(OutcomeKind::Errored);
      case HeadKind::Tau:
      case HeadKind::Vis:
        break;
    }
    if (steps >= options.fuel) return finish(OutcomeKind::OutOfFuel);

    const auto* vis = current.get_if<VisHead>();
    std::optional<OpId> op;
    if (vis) op = vis->op;
    auto next = istep(current, sigma, reifier);
    if (!next) return finish(OutcomeKind::Stuck);
    current = std::move(next->first);
    sigma = std::move(next->second);
    if (options.record_trace) {
      result.trace.push_back(
          TraceEntry{steps, vis ? TraceEntry::Kind::Effect : TraceEntry::Kind::Tau,
                     std::move(op), summarize(sigma, reifier)});
    }
    ++steps;
  }
}

std::string render_trace_entry(const TraceEntry& e,
                               const GlobalReifier& reifier) {
  std::ostringstream out;
  out << "#" << e.index << " ";
  if (e.kind == TraceEntry::Kind::Tau || !e.op) {
    out << "TAU";
  } else {
    std::string family = e.op->family < reifier.families()
                             ? reifier.family(e.op->family).signature.family
                             : std::to_string(e.op->family);
    out << "EFF " << family << "." << e.op->name;
  }
  out << " | state: " << e.state_summary;
  return out.str();
}

}  // namespace gitrees
