#include "gitrees/aff_lang.hpp"
#include "gitrees/combinators.hpp"
#include "gitrees/interop.hpp"

namespace gitrees::aff {

ITree thunk_protect(const StoreOps& store, const ITree& a) {
  return alloc_node(store, ITree::nat(0), [store, a](Location flag) {
    return ITree::fun(Endo([store, a, flag](const ITree&) {
      return ifz(read_node(store, flag), ITree::err(ErrorKind::Lin),
                 seq(write_node(store, flag, ITree::nat(1)), a));
    }));
  });
}

ITree force(const ITree& a) { return app_strict(a, ITree::nat(0)); }

namespace {

/// Restriction of env to the variables a premise consumes.
Env restrict(const Env& env, const NameSet& used) {
  Env out;
  for (const std::string& x : used) {
    auto it = env.find(x);
    if (it != env.end()) out.emplace(x, it->second);
  }
  return out;
}

ITree denote_premise(const Derivation& d, std::size_t i, const Env& env,
                     const Ambient& ambient) {
  const Derivation& p = d.premises.at(i);
  return denote_aff(p, restrict(env, p.used), ambient);
}

}  // namespace

ITree denote_aff(const Derivation& d, const Env& env, const Ambient& ambient) {
  const Expr& e = d.expr;
  const StoreOps& store = ambient.store;
  if (const auto* x = e.get_if<Lit>()) return ITree::nat(x->value);
  if (const auto* x = e.get_if<BoolLit>()) return ITree::nat(x->value ? 1 : 0);
  if (e.get_if<UnitLit>()) return ITree::nat(0);
  if (const auto* x = e.get_if<Var>()) {
    auto it = env.find(x->name);
    if (it == env.end()) {
      throw std::out_of_range("denote_aff: unbound variable '" + x->name + "'");
    }
    return force(it->second);
  }
  if (const auto* lam = e.get_if<Lam>()) {
    Derivation body = d.premises.at(0);
    std::string param = lam->x;
    Env captured = env;
    return ITree::fun(Endo([body, param, captured, ambient](const ITree& arg) {
      Env inner = captured;
      inner.insert_or_assign(param, arg);
      return denote_aff(body, restrict(inner, body.used), ambient);
    }));
  }
  if (e.get_if<App>()) {
    ITree fn = denote_premise(d, 0, env, ambient);
    ITree arg = denote_premise(d, 1, env, ambient);
    return get_val(arg, [fn, store](const ITree& x) {
      return app_strict(fn, thunk_protect(store, x));
    });
  }
  if (e.get_if<Pair>()) {
    return pair(denote_premise(d, 0, env, ambient),
                denote_premise(d, 1, env, ambient));
  }
  if (const auto* lp = e.get_if<LetPair>()) {
    ITree rhs = denote_premise(d, 0, env, ambient);
    Derivation body = d.premises.at(1);
    Env outer = env;
    std::string x1 = lp->x1;
    std::string x2 = lp->x2;
    return get_val(rhs, [=](const ITree& x) {
      return get_val(thunk_protect(store, proj1(x)), [=](const ITree& y) {
        return get_val(thunk_protect(store, proj2(x)), [=](const ITree& z) {
          Env inner = outer;
          inner.insert_or_assign(x1, y);
          inner.insert_or_assign(x2, z);
          return denote_aff(body, restrict(inner, body.used), ambient);
        });
      });
    });
  }
  if (e.get_if<Alloc>()) {
    ITree init = denote_premise(d, 0, env, ambient);
    return get_val(init, [store](const ITree& x) {
      return alloc_node(store, x, [](Location l) { return ITree::nat(to_nat(l)); });
    });
  }
  if (e.get_if<Dealloc>()) {
    return get_nat(denote_premise(d, 0, env, ambient), [store](Natural n) {
      return dealloc_node(store, from_nat(n));
    });
  }
  if (e.get_if<Replace>()) {
    ITree ref = denote_premise(d, 0, env, ambient);
    ITree value = denote_premise(d, 1, env, ambient);
    return get_val(value, [ref, store](const ITree& y) {
      return get_nat(ref, [y, store](Natural n) {
        return get_val(read_node(store, from_nat(n)), [y, store, n](const ITree& x) {
          return seq(write_node(store, from_nat(n), y), pair(x, ITree::nat(n)));
        });
      });
    });
  }
  // Embed: the boundary into iolang.
  const Embed* em = e.get_if<Embed>();
  if (!ambient.io) {
    throw ConfigError("denote_aff: embedded iolang term needs the io family");
  }
  if (!d.conversion) {
    throw std::invalid_argument("denote_aff: embed node without a conversion");
  }
  return interop::to_aff(*d.conversion, io::denote_io(em->term, {}, *ambient.io),
                         ambient);
}

}  // namespace gitrees::aff
