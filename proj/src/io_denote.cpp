#include "gitrees/io_lang.hpp"

namespace gitrees::io {
namespace {

NatOp natop_for(BinOp op) {
  return [op](Natural a, Natural b) { return apply_binop(op, a, b); };
}

}  // namespace

ITree denote_io(const Expr& e, const Env& env, const IoOps& ops) {
  if (const auto* v = e.get_if<Var>()) {
    auto it = env.find(v->name);
    if (it == env.end()) {
      throw std::out_of_range("denote_io: unbound variable '" + v->name + "'");
    }
    return it->second;
  }
  if (const auto* l = e.get_if<Lit>()) return ITree::nat(l->value);
  if (e.get_if<Input>()) return input_node(ops);
  if (const auto* o = e.get_if<Output>()) {
    return get_nat(denote_io(o->arg, env, ops),
                   [ops](Natural n) { return output_node(ops, n); });
  }
  if (const auto* i = e.get_if<If>()) {
    return ifz(denote_io(i->cond, env, ops), denote_io(i->then_branch, env, ops),
               denote_io(i->else_branch, env, ops));
  }
  if (const auto* a = e.get_if<Arith>()) {
    return natop(natop_for(a->op), denote_io(a->lhs, env, ops),
                 denote_io(a->rhs, env, ops));
  }
  if (const auto* a = e.get_if<App>()) {
    return app_strict(denote_io(a->fn, env, ops), denote_io(a->arg, env, ops));
  }
  // rec f x = body: a guarded fixpoint whose unfolding binds f to itself.
  const Rec* r = e.get_if<Rec>();
  Rec rec = *r;
  return gfix([rec, env, ops](const Later<ITree>& self) {
    return ITree::fun(Later<Endo>([rec, env, ops, self] {
      return Endo([rec, env, ops, self](const ITree& arg) {
        Env inner = env;
        inner.insert_or_assign(rec.xname, arg);
        inner.insert_or_assign(rec.fname, self.force());
        return denote_io(rec.body, inner, ops);
      });
    }));
  });
}

Hom denote_ectx(const EvalCtx& k, const Env& env, const IoOps& ops) {
  Hom result = [](const ITree& t) { return t; };
  for (auto it = k.rbegin(); it != k.rend(); ++it) {
    Hom outer = std::visit(
        [&](const auto& f) -> Hom {
          using F = std::decay_t<decltype(f)>;
          if constexpr (std::is_same_v<F, frame::Output>) {
            return [ops](const ITree& t) {
              return get_nat(t, [ops](Natural n) { return output_node(ops, n); });
            };
          } else if constexpr (std::is_same_v<F, frame::If>) {
            ITree then_branch = denote_io(f.then_branch, env, ops);
            ITree else_branch = denote_io(f.else_branch, env, ops);
            return [then_branch, else_branch](const ITree& t) {
              return ifz(t, then_branch, else_branch);
            };
          } else if constexpr (std::is_same_v<F, frame::AppR>) {
            ITree fn = denote_io(f.fn, env, ops);
            return [fn](const ITree& t) { return app_strict(fn, t); };
          } else if constexpr (std::is_same_v<F, frame::AppL>) {
            ITree arg = denote_io(f.arg, env, ops);
            return [arg](const ITree& t) { return app_strict(t, arg); };
          } else if constexpr (std::is_same_v<F, frame::OpR>) {
            ITree lhs = denote_io(f.lhs, env, ops);
            NatOp op = natop_for(f.op);
            return [op, lhs](const ITree& t) { return natop(op, lhs, t); };
          } else {
            ITree rhs = denote_io(f.rhs, env, ops);
            NatOp op = natop_for(f.op);
            return [op, rhs](const ITree& t) { return natop(op, t, rhs); };
          }
        },
        *it);
    result = compose(outer, result);
  }
  return result;
}

}  // namespace gitrees::io
