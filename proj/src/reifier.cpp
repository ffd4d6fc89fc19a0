#include "gitrees/reifier.hpp"

#include <sstream>
#include <stdexcept>

namespace gitrees {

Location HeapState::fresh() const {
  Natural candidate = 0;
  for (const auto& [loc, _] : cells) {
    if (loc.index != candidate) break;
    ++candidate;
  }
  return Location{candidate};
}

Reifier io_reifier(IoState initial) {
  auto step = [](std::string_view op, const Payload& input,
                 const LocalState& state) -> std::optional<StepResult> {
    const auto* tapes = std::get_if<IoState>(&state);
    if (!tapes) return std::nullopt;
    if (op == "input" && std::holds_alternative<UnitPayload>(input)) {
      if (tapes->input_tape.empty()) return std::nullopt;
      IoState next = *tapes;
      Natural head = next.input_tape.front();
      next.input_tape.erase(next.input_tape.begin());
      return StepResult{NumPayload{head}, std::move(next)};
    }
    if (op == "output") {
      const auto* n = std::get_if<NumPayload>(&input);
      if (!n) return std::nullopt;
      IoState next = *tapes;
      next.output_tape.insert(next.output_tape.begin(), n->value);
      return StepResult{UnitPayload{}, std::move(next)};
    }
    return std::nullopt;
  };
  return {io_signature(), std::move(initial), step};
}

Reifier store_reifier(HeapState initial) {
  auto step = [](std::string_view op, const Payload& input,
                 const LocalState& state) -> std::optional<StepResult> {
    const auto* heap = std::get_if<HeapState>(&state);
    if (!heap) return std::nullopt;
    if (op == "alloc") {
      const auto* t = std::get_if<TreePayload>(&input);
      if (!t) return std::nullopt;
      HeapState next = *heap;
      Location loc = heap->fresh();
      next.cells.emplace(loc, t->tree);
      return StepResult{LocPayload{loc}, std::move(next)};
    }
    if (op == "read") {
      const auto* l = std::get_if<LocPayload>(&input);
      if (!l) return std::nullopt;
      auto it = heap->cells.find(l->loc);
      if (it == heap->cells.end()) return std::nullopt;
      return StepResult{TreePayload{it->second}, *heap};
    }
    if (op == "write") {
      const auto* lt = std::get_if<LocTreePayload>(&input);
      if (!lt || !heap->cells.contains(lt->loc)) return std::nullopt;
      HeapState next = *heap;
      next.cells.insert_or_assign(lt->loc, lt->tree);
      return StepResult{UnitPayload{}, std::move(next)};
    }
    if (op == "dealloc") {
      const auto* l = std::get_if<LocPayload>(&input);
      if (!l || !heap->cells.contains(l->loc)) return std::nullopt;
      HeapState next = *heap;
      next.cells.erase(l->loc);
      return StepResult{UnitPayload{}, std::move(next)};
    }
    return std::nullopt;
  };
  return {store_signature(), std::move(initial), step};
}

GlobalReifier::GlobalReifier(std::vector<Reifier> reifiers)
    : reifiers_(std::move(reifiers)) {
  for (const Reifier& r : reifiers_) {
    for (const Signature& s : signature_) {
      if (s.family == r.signature.family) {
        throw ConfigError("duplicate effect family '" + s.family + "'");
      }
    }
    signature_.push_back(r.signature);
  }
}

GlobalState GlobalReifier::initial_state() const {
  GlobalState state;
  for (const Reifier& r : reifiers_) state.locals.push_back(r.initial);
  return state;
}

std::optional<GlobalStepResult> GlobalReifier::step(
    const OpId& op, const Payload& input, const GlobalState& state) const {
  if (op.family >= reifiers_.size() || op.family >= state.locals.size()) {
    return std::nullopt;
  }
  std::optional<StepResult> local =
      reifiers_[op.family].step(op.name, input, state.locals[op.family]);
  if (!local) return std::nullopt;
  GlobalState next = state;
  next.locals[op.family] = std::move(local->state);
  return GlobalStepResult{std::move(local->output), std::move(next)};
}

GlobalReifier combine_reifiers(std::vector<Reifier> reifiers) {
  return GlobalReifier(std::move(reifiers));
}

std::optional<std::pair<ITree, GlobalState>> reify(
    const ITree& vis, const GlobalState& state, const GlobalReifier& reifier) {
  const auto* node = vis.get_if<VisHead>();
  if (!node) throw std::invalid_argument("reify: not an effect node");
  std::optional<GlobalStepResult> r = reifier.step(node->op, node->input, state);
  if (!r) return std::pair{ITree::err(ErrorKind::RunTime), state};
  std::optional<Later<ITree>> rest = node->k(r->output);
  if (!rest) return std::nullopt;
  return std::pair{ITree::tau(*rest), std::move(r->state)};
}

std::string summarize(const GlobalState& state, const GlobalReifier& reifier) {
  std::ostringstream out;
  for (std::size_t i = 0; i < state.locals.size(); ++i) {
    if (i > 0) out << " ; ";
    if (i < reifier.families()) out << reifier.family(i).signature.family << " ";
    std::visit(
        [&](const auto& s) {
          using S = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<S, IoState>) {
            out << "in=" << s.input_tape.size()
                << " out=" << s.output_tape.size();
          } else {
            out << "dom={";
            bool first = true;
            for (const auto& [loc, _] : s.cells) {
              out << (first ? "" : ",") << loc.index;
              first = false;
            }
            out << "}";
          }
        },
        state.locals[i]);
  }
  return out.str();
}

}  // namespace gitrees
