#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "gitrees/combinators.hpp"
#include "gitrees/effects.hpp"
#include "gitrees/engine.hpp"
#include "gitrees/reifier.hpp"

namespace gitrees::testing {

/// Small deterministic generator for hand-rolled property tests.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::size_t below(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_);
  }
  Natural nat(Natural max = 9) {
    return std::uniform_int_distribution<Natural>(0, max)(rng_);
  }
  bool coin() { return below(2) == 0; }
  std::vector<Natural> tape(std::size_t max_len = 4, Natural max = 9) {
    std::vector<Natural> t(below(max_len + 1));
    for (Natural& n : t) n = nat(max);
    return t;
  }

 private:
  std::mt19937_64 rng_;
};

/// Global configuration used by generated trees: family 0 = io, 1 = store.
struct World {
  GlobalReifier reifier{{io_reifier(), store_reifier()}};
  IoOps io = IoOps::embed(reifier.signature());
  StoreOps store = StoreOps::embed(reifier.signature());

  GlobalState state(IoState tapes = {}, HeapState heap = {}) const {
    return GlobalState{{std::move(tapes), std::move(heap)}};
  }
};

const World& world();

/// A random value: Nat, or Fun drawn from a small menu.
ITree random_value(Gen& g);

/// A random finite tree over the io and store families of world().
/// Heads are mixed: values, errors, ticks and effect nodes.
ITree random_tree(Gen& g, int depth);

/// A random heap whose cells hold values.
HeapState random_heap(Gen& g, std::size_t max_cells = 4);

struct NamedHom {
  std::string name;
  Hom hom;
};

/// A random homomorphism built from the library's combinators.
NamedHom random_hom(Gen& g);

/// Bounded structural equivalence. Values and heads must agree exactly;
/// functions, continuations and suspensions are compared by probing with
/// sample arguments up to `depth` layers.
bool equiv(const ITree& a, const ITree& b, int depth = 4);

/// What a run exposes to an outside observer.
struct Observation {
  OutcomeKind kind = OutcomeKind::Value;
  std::optional<Natural> nat;
  bool is_fun = false;
  std::optional<ErrorKind> error;
  std::vector<IoState> tapes;
  std::vector<std::vector<Natural>> heap_domains;

  friend bool operator==(const Observation&, const Observation&) = default;
};

Observation observe(const Outcome& o);
Observation observe(const ITree& t, const GlobalState& s,
                    const GlobalReifier& r, std::size_t fuel);
std::string to_string(const Observation& o);

/// Head accessors that tolerate the wrong head.
std::optional<Natural> as_nat(const ITree& t);
std::optional<ErrorKind> as_err(const ITree& t);

/// Independent meta-level factorial.
Natural factorial(Natural n);

/// Corpus access.
std::filesystem::path corpus_dir(const std::string& language);
std::vector<std::filesystem::path> corpus_files(const std::string& language);
std::string slurp(const std::filesystem::path& p);
/// Parses the `; tape: a,b,c` header line, if present.
std::vector<Natural> corpus_tape(const std::string& source);

}  // namespace gitrees::testing
