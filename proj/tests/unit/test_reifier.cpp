#include <doctest.h>

#include "gitrees/reifier.hpp"
#include "support/support.hpp"

using namespace gitrees;
using namespace gitrees::testing;

namespace {

HeapState heap_with(std::initializer_list<Natural> locs) {
  HeapState h;
  for (Natural l : locs) h.cells.emplace(Location{l}, Later<ITree>::next(ITree::nat(l)));
  return h;
}

}  // namespace

TEST_CASE("fresh location is the least absent one") {
  CHECK(heap_with({}).fresh() == Location{0});
  CHECK(heap_with({0, 1, 3}).fresh() == Location{2});
  CHECK(heap_with({1, 2}).fresh() == Location{0});
  CHECK(heap_with({0, 1, 2}).fresh() == Location{3});
}

TEST_CASE("io reifier") {
  Reifier r = io_reifier();
  auto popped = r.step("input", UnitPayload{}, IoState{{4, 5}, {}});
  REQUIRE(popped);
  CHECK(popped->output == Payload{NumPayload{4}});
  CHECK(std::get<IoState>(popped->state) == IoState{{5}, {}});
  CHECK_FALSE(r.step("input", UnitPayload{}, IoState{}).has_value());
  auto pushed = r.step("output", NumPayload{7}, IoState{{}, {1}});
  CHECK(std::get<IoState>(pushed->state).output_tape == std::vector<Natural>{7, 1});
  CHECK_FALSE(r.step("output", UnitPayload{}, IoState{}).has_value());
}

TEST_CASE("store reifier refuses absent locations") {
  Reifier r = store_reifier();
  HeapState h = heap_with({0});
  CHECK(r.step("read", LocPayload{Location{0}}, h).has_value());
  CHECK_FALSE(r.step("read", LocPayload{Location{1}}, h).has_value());
  CHECK_FALSE(r.step("dealloc", LocPayload{Location{1}}, h).has_value());
  CHECK_FALSE(
      r.step("write", LocTreePayload{Location{1}, Later<ITree>::next(ITree::nat(0))}, h)
          .has_value());
}

TEST_CASE("global reifier touches only the op's family") {
  const World& w = world();
  GlobalState s = w.state({{3}, {}}, heap_with({0}));
  auto r = w.reifier.step(w.io.input, UnitPayload{}, s);
  REQUIRE(r);
  CHECK(std::get<HeapState>(r->state.locals[1]) == std::get<HeapState>(s.locals[1]));
  auto d = w.reifier.step(w.store.dealloc, LocPayload{Location{0}}, s);
  REQUIRE(d);
  CHECK(std::get<IoState>(d->state.locals[0]) == std::get<IoState>(s.locals[0]));
  CHECK(std::get<HeapState>(d->state.locals[1]).cells.empty());
  CHECK_FALSE(w.reifier.step(OpId{7, "input"}, UnitPayload{}, s).has_value());
}

TEST_CASE("duplicate families are rejected") {
  CHECK_THROWS_AS(GlobalReifier({io_reifier(), io_reifier()}), ConfigError);
}

TEST_CASE("reify") {
  const World& w = world();
  CHECK_THROWS_AS(reify(ITree::nat(0), w.state(), w.reifier), std::invalid_argument);
  auto failed = reify(read_node(w.store, Location{3}), w.state(), w.reifier);
  REQUIRE(failed);
  CHECK(as_err(failed->first) == ErrorKind::RunTime);
  auto ok = reify(alloc_node(w.store, ITree::nat(5), [](Location l) { return ITree::nat(l.index); }),
                  w.state(), w.reifier);
  REQUIRE(ok);
  CHECK(ok->first.kind() == HeadKind::Tau);
  CHECK(std::get<HeapState>(ok->second.locals[1]).cells.size() == 1);
}

TEST_CASE("state summary") {
  const World& w = world();
  CHECK(summarize(w.state({{1, 2}, {3}}, heap_with({0, 2})), w.reifier) ==
        "io in=2 out=1 ; store dom={0,2}");
}

TEST_CASE("property: alloc then read returns the stored suspension") {
  Gen g(11);
  const World& w = world();
  for (int i = 0; i < 60; ++i) {
    GlobalState s = w.state({}, random_heap(g));
    Later<ITree> cell = Later<ITree>::next(random_value(g));
    auto a = w.reifier.step(w.store.alloc, TreePayload{cell}, s);
    REQUIRE(a);
    Location l = std::get<LocPayload>(a->output).loc;
    CHECK_FALSE(std::get<HeapState>(s.locals[1]).cells.contains(l));
    auto r = w.reifier.step(w.store.read, LocPayload{l}, a->state);
    REQUIRE(r);
    CHECK(std::get<TreePayload>(r->output).tree == cell);
  }
}
