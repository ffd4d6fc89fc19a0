#include <doctest.h>

#include "gitrees/engine.hpp"
#include "support/support.hpp"

using namespace gitrees;
using namespace gitrees::testing;

TEST_CASE("istep strips a tick and reifies effects") {
  const World& w = world();
  auto s = istep(tick(ITree::nat(1)), w.state(), w.reifier);
  REQUIRE(s);
  CHECK(as_nat(s->first) == 1);

  auto e = istep(input_node(w.io), w.state({{8}, {}}), w.reifier);
  REQUIRE(e);
  CHECK(as_nat(e->first) == 8);
  CHECK(std::get<IoState>(e->second.locals[0]).input_tape.empty());

  CHECK_FALSE(istep(ITree::nat(0), w.state(), w.reifier).has_value());
  CHECK_FALSE(istep(ITree::err(ErrorKind::Lin), w.state(), w.reifier).has_value());

  auto f = istep(input_node(w.io), w.state(), w.reifier);
  REQUIRE(f);
  CHECK(as_err(f->first) == ErrorKind::RunTime);
}

TEST_CASE("outcome classification") {
  const World& w = world();
  RunOptions allow_lin;
  allow_lin.allowed_errors = {ErrorKind::Lin};
  Outcome lin = run(tick(ITree::err(ErrorKind::Lin)), w.state(), w.reifier, allow_lin).outcome;
  CHECK(lin.kind == OutcomeKind::Errored);
  CHECK(lin.acceptable);
  CHECK_FALSE(lin.is_violation());
  CHECK(lin.steps == 1);

  Outcome rt = run(ITree::err(ErrorKind::RunTime), w.state(), w.reifier, allow_lin).outcome;
  CHECK_FALSE(rt.acceptable);
  CHECK(rt.is_violation());

  RunOptions tiny;
  tiny.fuel = 2;
  Outcome oof = run(ticks(5, ITree::nat(0)), w.state(), w.reifier, tiny).outcome;
  CHECK(oof.kind == OutcomeKind::OutOfFuel);
  CHECK(oof.steps == 2);
  CHECK(oof.last.kind() == HeadKind::Tau);
}

TEST_CASE("trace lines") {
  const World& w = world();
  RunOptions o;
  o.record_trace = true;
  ITree prog = seq(output_node(w.io, 4), tick(ITree::nat(1)));
  RunResult r = run(prog, w.state(), w.reifier, o);
  REQUIRE(r.trace.size() == 2);
  CHECK(render_trace_entry(r.trace[0], w.reifier) == "#0 EFF io.output | state: io in=0 out=1 ; store dom={}");
  CHECK(render_trace_entry(r.trace[1], w.reifier) == "#1 TAU | state: io in=0 out=1 ; store dom={}");
  CHECK(run(prog, w.state(), w.reifier).trace.empty());
}

TEST_CASE("property: runs are deterministic") {
  Gen g(21);
  const World& w = world();
  for (int i = 0; i < 100; ++i) {
    ITree t = random_tree(g, 4);
    GlobalState s = w.state({g.tape(), {}}, random_heap(g));
    CHECK(observe(t, s, w.reifier, 1000) == observe(t, s, w.reifier, 1000));
  }
}

TEST_CASE("property: fuel composes") {
  Gen g(22);
  const World& w = world();
  for (int i = 0; i < 100; ++i) {
    ITree t = random_tree(g, 5);
    GlobalState s = w.state({g.tape(), {}}, random_heap(g));
    std::size_t n = g.below(4);
    std::size_t m = g.below(4);
    RunOptions first;
    first.fuel = n;
    Outcome partial = run(t, s, w.reifier, first).outcome;
    RunOptions both;
    both.fuel = n + m;
    Outcome full = run(t, s, w.reifier, both).outcome;
    Observation whole = observe(full);
    if (partial.kind != OutcomeKind::OutOfFuel) {
      CHECK(observe(partial) == whole);
      continue;
    }
    RunOptions rest;
    rest.fuel = m;
    Outcome resumed = run(partial.last, partial.state, w.reifier, rest).outcome;
    CHECK(observe(resumed) == whole);
    CHECK(partial.steps + resumed.steps == full.steps);
  }
}
