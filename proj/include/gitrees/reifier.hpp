#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "gitrees/effects.hpp"
#include "gitrees/tree.hpp"

namespace gitrees {

/// Input and output tapes. The output tape grows at the front, so
/// output_tape[0] is the most recent write.
struct IoState {
  std::vector<Natural> input_tape;
  std::vector<Natural> output_tape;

  friend bool operator==(const IoState&, const IoState&) = default;
};

/// Finite partial map from locations to suspended trees.
struct HeapState {
  std::map<Location, Later<ITree>> cells;

  /// Least location not in the domain.
  Location fresh() const;

  friend bool operator==(const HeapState&, const HeapState&) = default;
};

/// Closed universe of local reifier states. New families extend this.
using LocalState = std::variant<IoState, HeapState>;

struct StepResult {
  Payload output;
  LocalState state;
};

/// Interpretation of one effect family. `step` is a pure partial function
/// of (op, input, state); it never sees the continuation.
struct Reifier {
  using Step = std::function<std::optional<StepResult>(
      std::string_view op, const Payload& input, const LocalState& state)>;

  Signature signature;
  LocalState initial;
  Step step;
};

Reifier io_reifier(IoState initial = {});
Reifier store_reifier(HeapState initial = {});

/// Product of the local states, one component per family, in family order.
struct GlobalState {
  std::vector<LocalState> locals;

  friend bool operator==(const GlobalState&, const GlobalState&) = default;
};

struct GlobalStepResult {
  Payload output;
  GlobalState state;
};

/// Sum of the families' signatures with the product of their states; an
/// op of family i only touches component i.
class GlobalReifier {
 public:
  explicit GlobalReifier(std::vector<Reifier> reifiers);

  const std::vector<Signature>& signature() const { return signature_; }
  std::size_t families() const { return reifiers_.size(); }
  const Reifier& family(std::size_t i) const { return reifiers_.at(i); }

  GlobalState initial_state() const;

  std::optional<GlobalStepResult> step(const OpId& op, const Payload& input,
                                       const GlobalState& state) const;

 private:
  std::vector<Reifier> reifiers_;
  std::vector<Signature> signature_;
};

GlobalReifier combine_reifiers(std::vector<Reifier> reifiers);

/// Interprets one Vis node against the global state.
///
/// On success with output y the result is (Tau(k y), state'); when the
/// reifier refuses, (Err(RunTime), state). Returns nullopt if the
/// continuation rejects the output's shape. Throws std::invalid_argument
/// when `vis` is not a Vis node.
std::optional<std::pair<ITree, GlobalState>> reify(const ITree& vis,
                                                   const GlobalState& state,
                                                   const GlobalReifier& reifier);

/// One-line state summary: tape lengths and heap domain.
std::string summarize(const GlobalState& state,
                      const GlobalReifier& reifier);

}  // namespace gitrees
