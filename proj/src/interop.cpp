#include "gitrees/interop.hpp"

#include "gitrees/combinators.hpp"

namespace gitrees::interop {

std::optional<Conversion> conv_check(const io::Type& io_type,
                                     const aff::Type& aff_type) {
  if (io_type.is_nat()) {
    if (aff_type.is<aff::Type::Nat>()) return Conversion{Conversion::NatNat{}, io_type, aff_type};
    if (aff_type.is<aff::Type::Unit>()) return Conversion{Conversion::NatUnit{}, io_type, aff_type};
    if (aff_type.is<aff::Type::Bool>()) return Conversion{Conversion::NatBool{}, io_type, aff_type};
    return std::nullopt;
  }
  // (nat -> t1') -> t2'  ~  t1 -o t2
  const auto* outer = io_type.as_arrow();
  const auto* lolli = aff_type.get_if<aff::Type::Lolli>();
  if (!outer || !lolli) return std::nullopt;
  const auto* thunk = outer->dom->as_arrow();
  if (!thunk || !thunk->dom->is_nat()) return std::nullopt;
  auto arg = conv_check(*thunk->cod, *lolli->dom);
  auto res = conv_check(*outer->cod, *lolli->cod);
  if (!arg || !res) return std::nullopt;
  return Conversion{
      Conversion::Fun{std::make_shared<const Conversion>(std::move(*arg)),
                      std::make_shared<const Conversion>(std::move(*res))},
      io_type, aff_type};
}

ITree to_aff(const Conversion& c, const ITree& a, const aff::Ambient& ambient) {
  if (std::holds_alternative<Conversion::NatNat>(c.shape)) return a;
  if (std::holds_alternative<Conversion::NatBool>(c.shape)) {
    return ifz(a, ITree::nat(1), ITree::nat(0));
  }
  if (std::holds_alternative<Conversion::NatUnit>(c.shape)) {
    return get_nat(a, [](Natural) { return ITree::nat(0); });
  }
  const auto& fun = std::get<Conversion::Fun>(c.shape);
  StoreOps store = ambient.store;
  return get_val(a, [fun, ambient, store](const ITree& p) {
    return ITree::fun(Endo([fun, ambient, store, p](const ITree& x) {
      return get_val(from_aff(*fun.arg, aff::force(x), ambient),
                     [fun, ambient, store, p](const ITree& y) {
                       return to_aff(*fun.res,
                                     app_strict(p, aff::thunk_protect(store, y)),
                                     ambient);
                     });
    }));
  });
}

ITree from_aff(const Conversion& c, const ITree& a, const aff::Ambient& ambient) {
  if (std::holds_alternative<Conversion::NatNat>(c.shape) ||
      std::holds_alternative<Conversion::NatBool>(c.shape) ||
      std::holds_alternative<Conversion::NatUnit>(c.shape)) {
    return a;
  }
  const auto& fun = std::get<Conversion::Fun>(c.shape);
  StoreOps store = ambient.store;
  return get_val(a, [fun, ambient, store](const ITree& p) {
    return get_val(aff::thunk_protect(store, p), [fun, ambient, store](const ITree& guarded) {
      return ITree::fun(Endo([fun, ambient, store, guarded](const ITree& x) {
        // The affine function is only reachable through its one-shot guard.
        return get_val(aff::force(guarded), [fun, ambient, store, x](const ITree& f) {
          return get_val(to_aff(*fun.arg, aff::force(x), ambient),
                         [fun, ambient, store, f](const ITree& y) {
                           return from_aff(*fun.res,
                                           app_strict(f, aff::thunk_protect(store, y)),
                                           ambient);
                         });
        });
      }));
    });
  });
}

std::optional<aff::Derivation> typecheck_comb(const aff::Context& ctx,
                                              const aff::Expr& e) {
  return aff::typecheck_aff(ctx, e, aff::CheckOptions{.allow_embed = true});
}

ITree denote_comb(const aff::Derivation& d, const aff::Env& env,
                  const aff::Ambient& ambient) {
  return aff::denote_aff(d, env, ambient);
}

}  // namespace gitrees::interop
