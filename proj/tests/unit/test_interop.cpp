#include <doctest.h>

#include "gitrees/interop.hpp"
#include "gitrees/sexp.hpp"
#include "support/support.hpp"

using namespace gitrees;
using namespace gitrees::testing;

namespace {

io::Type io_t(std::string_view s) { return io::parse_type(sexp::read_one(s)); }
aff::Type aff_t(std::string_view s) { return aff::parse_type(sexp::read_one(s)); }

struct CombRun {
  GlobalReifier reifier;
  aff::Ambient ambient;

  explicit CombRun(std::vector<Natural> tape = {})
      : reifier({store_reifier(), io_reifier(IoState{std::move(tape), {}})}),
        ambient{StoreOps::embed(reifier.signature()), IoOps::embed(reifier.signature())} {}

  Outcome run_src(std::string_view src) {
    auto d = interop::typecheck_comb({}, aff::parse_expr(src));
    REQUIRE(d);
    RunOptions o;
    o.allowed_errors = {ErrorKind::Lin};
    return run(interop::denote_comb(*d, {}, ambient), reifier.initial_state(), reifier, o)
        .outcome;
  }
};

}  // namespace

TEST_CASE("conversion relation") {
  CHECK(interop::conv_check(io_t("nat"), aff_t("nat")));
  CHECK(interop::conv_check(io_t("nat"), aff_t("bool")));
  CHECK(interop::conv_check(io_t("nat"), aff_t("unit")));
  CHECK_FALSE(interop::conv_check(io_t("nat"), aff_t("(ref nat)")));
  CHECK_FALSE(interop::conv_check(io_t("nat"), aff_t("(* nat nat)")));
  auto c = interop::conv_check(io_t("(-> (-> nat nat) nat)"), aff_t("(-o bool unit)"));
  REQUIRE(c);
  REQUIRE(std::holds_alternative<interop::Conversion::Fun>(c->shape));
  CHECK(std::holds_alternative<interop::Conversion::NatBool>(
      std::get<interop::Conversion::Fun>(c->shape).arg->shape));
  CHECK(interop::conv_check(io_t("(-> (-> nat (-> (-> nat nat) nat)) nat)"),
                            aff_t("(-o (-o unit nat) nat)")));
  // The argument must be thunked.
  CHECK_FALSE(interop::conv_check(io_t("(-> nat nat)"), aff_t("(-o nat nat)")));
  CHECK_FALSE(interop::conv_check(io_t("(-> (-> nat nat) nat)"), aff_t("nat")));
}

TEST_CASE("combined typing") {
  auto ok = [](std::string_view s) {
    return interop::typecheck_comb({}, aff::parse_expr(s)).has_value();
  };
  CHECK(ok("(embed 5 : nat ~ nat)"));
  CHECK(ok("(app (embed (rec f t (app t 0)) : (-> (-> nat nat) nat) ~ (-o nat nat)) 3)"));
  CHECK_FALSE(ok("(embed (rec f t t) : nat ~ nat)"));
  CHECK_FALSE(ok("(embed y : nat ~ nat)"));
  CHECK_FALSE(ok("(lam y (embed y : nat ~ nat))"));
  CHECK_FALSE(ok("(embed 5 : nat ~ (ref nat))"));
  CHECK_FALSE(ok("(app (embed (rec f t (app t 0)) : (-> (-> nat nat) nat) ~ (-o nat nat)) #t)"));
}

TEST_CASE("embedded literal") {
  CombRun r;
  Outcome o = r.run_src("(embed 5 : nat ~ nat)");
  CHECK(as_nat(o.last) == 5);
}

TEST_CASE("embedded function reading the input tape") {
  CombRun r({3});
  Outcome o = r.run_src("(app (embed (rec f t input) : (-> (-> nat nat) nat) ~ (-o nat nat)) 9)");
  REQUIRE(o.is_value());
  CHECK(as_nat(o.last) == 3);
  CHECK(std::get<IoState>(o.state.locals[1]).input_tape.empty());
}

TEST_CASE("base glue clamps") {
  CombRun r;
  for (Natural k : {0, 1, 2, 7}) {
    auto nat_after = [&](std::string_view aff_side) {
      auto c = interop::conv_check(io::Type::nat(), aff_t(aff_side));
      ITree t = interop::to_aff(*c, ITree::nat(k), r.ambient);
      return as_nat(run(t, r.reifier.initial_state(), r.reifier).outcome.last);
    };
    CHECK(nat_after("nat") == k);
    CHECK(nat_after("bool") == (k > 0 ? 1u : 0u));
    CHECK(nat_after("unit") == 0u);
  }
}

TEST_CASE("from_aff protects affine functions") {
  CombRun r;
  auto c = interop::conv_check(io_t("(-> (-> nat nat) nat)"), aff_t("(-o nat nat)"));
  REQUIRE(c);
  ITree id = ITree::fun(Endo([](const ITree& th) { return aff::force(th); }));
  ITree thunked_arg = ITree::fun(Endo([](const ITree&) { return ITree::nat(4); }));
  ITree once = get_val(interop::from_aff(*c, id, r.ambient),
                       [thunked_arg](const ITree& f) { return app_strict(f, thunked_arg); });
  Outcome o1 = run(once, r.reifier.initial_state(), r.reifier).outcome;
  REQUIRE(o1.is_value());
  CHECK(as_nat(o1.last) == 4);

  ITree twice = get_val(interop::from_aff(*c, id, r.ambient), [thunked_arg](const ITree& f) {
    return seq(app_strict(f, thunked_arg), app_strict(f, thunked_arg));
  });
  Outcome o2 = run(twice, r.reifier.initial_state(), r.reifier).outcome;
  CHECK(o2.kind == OutcomeKind::Errored);
  CHECK(o2.error == ErrorKind::Lin);
}

TEST_CASE("double call through the boundary is Err(Lin)") {
  CombRun r;
  Outcome o = r.run_src(slurp(corpus_dir("comb") / "double_call.sexp"));
  CHECK(o.kind == OutcomeKind::Errored);
  CHECK(o.error == ErrorKind::Lin);
  CHECK(o.acceptable);
}

TEST_CASE("property: combined corpus never violates safety") {
  for (const auto& f : corpus_files("comb")) {
    std::string src = slurp(f);
    CombRun r(corpus_tape(src));
    INFO(f.filename().string());
    Outcome o = r.run_src(src);
    CHECK_FALSE(o.is_violation());
    CHECK(o.kind != OutcomeKind::OutOfFuel);
  }
}
