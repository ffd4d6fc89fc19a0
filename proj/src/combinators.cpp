#include "gitrees/combinators.hpp"

#include <memory>

namespace gitrees {
namespace {

using SharedCase = std::shared_ptr<const ValueCase>;

ITree apply_hom(const SharedCase& value_case, const ITree& t) {
  switch (t.kind()) {
    case HeadKind::Err:
      return t;
    case HeadKind::Tau: {
      Later<ITree> next = t.get_if<TauHead>()->next;
      return ITree::tau(Later<ITree>([value_case, next] {
        return apply_hom(value_case, next.force());
      }));
    }
    case HeadKind::Vis: {
      const VisHead& v = *t.get_if<VisHead>();
      Continuation k = v.k;
      return ITree::vis(
          v.op, v.input,
          [value_case, k](const Payload& y) -> std::optional<Later<ITree>> {
            std::optional<Later<ITree>> rest = k(y);
            if (!rest) return std::nullopt;
            return Later<ITree>([value_case, rest = *rest] {
              return apply_hom(value_case, rest.force());
            });
          });
    }
    case HeadKind::Nat:
    case HeadKind::Fun:
      break;
  }
  return (*value_case)(t);
}

}  // namespace

Hom make_hom(ValueCase value_case) {
  auto shared = std::make_shared<const ValueCase>(std::move(value_case));
  return [shared](const ITree& t) { return apply_hom(shared, t); };
}

Hom compose(Hom outer, Hom inner) {
  return [outer = std::move(outer), inner = std::move(inner)](const ITree& t) {
    return outer(inner(t));
  };
}

ITree get_fun(const ITree& a, std::function<ITree(const Later<Endo>&)> f) {
  return make_hom([f = std::move(f)](const ITree& v) {
    if (const auto* fun = v.get_if<FunHead>()) return f(fun->body);
    return ITree::err(ErrorKind::RunTime);
  })(a);
}

ITree get_nat(const ITree& a, std::function<ITree(Natural)> f) {
  return make_hom([f = std::move(f)](const ITree& v) {
    if (const auto* n = v.get_if<NatHead>()) return f(n->value);
    return ITree::err(ErrorKind::RunTime);
  })(a);
}

ITree get_val(const ITree& a, std::function<ITree(const ITree&)> f) {
  return make_hom(std::move(f))(a);
}

ITree app_cbn(const ITree& fn, const ITree& arg) {
  return get_fun(fn, [arg](const Later<Endo>& g) {
    return ITree::tau(Later<ITree>([g, arg] { return g.force()(arg); }));
  });
}

ITree app_strict(const ITree& fn, const ITree& arg) {
  return get_val(arg, [fn](const ITree& arg_value) {
    return app_cbn(fn, arg_value);
  });
}

ITree ifz(const ITree& cond, const ITree& then_branch,
          const ITree& else_branch) {
  return make_hom([then_branch, else_branch](const ITree& v) {
    if (const auto* n = v.get_if<NatHead>()) {
      return n->value != 0 ? then_branch : else_branch;
    }
    return ITree::err(ErrorKind::RunTime);
  })(cond);
}

Natural monus(Natural a, Natural b) { return a > b ? a - b : 0; }

ITree natop(const NatOp& op, const ITree& lhs, const ITree& rhs) {
  return get_val(rhs, [op, lhs](const ITree& rv) {
    return get_val(lhs, [op, rv](const ITree& lv) {
      return get_nat(lv, [op, rv](Natural n1) {
        return get_nat(rv, [op, n1](Natural n2) { return ITree::nat(op(n1, n2)); });
      });
    });
  });
}

ITree seq(const ITree& a, const ITree& b) {
  return get_val(a, [b](const ITree&) { return b; });
}

ITree while_loop(const ITree& cond, const ITree& body) {
  ITree again = ITree::tau(
      Later<ITree>([cond, body] { return while_loop(cond, body); }));
  return ifz(cond, seq(body, again), ITree::nat(0));
}

ITree pair(const ITree& first, const ITree& second) {
  return get_val(second, [first](const ITree& y) {
    return get_val(first, [y](const ITree& x) {
      return ITree::fun(Endo([x, y](const ITree& f) {
        return app_strict(app_strict(f, x), y);
      }));
    });
  });
}

ITree proj1(const ITree& p) {
  ITree select = ITree::fun(Endo([](const ITree& a) {
    return ITree::fun(Endo([a](const ITree&) { return a; }));
  }));
  return app_strict(p, select);
}

ITree proj2(const ITree& p) {
  ITree select = ITree::fun(Endo([](const ITree&) {
    return ITree::fun(Endo([](const ITree& b) { return b; }));
  }));
  return app_strict(p, select);
}

ITree gfix(std::function<ITree(const Later<ITree>&)> f) {
  auto shared = std::make_shared<const std::function<ITree(const Later<ITree>&)>>(
      std::move(f));
  return (*shared)(Later<ITree>([shared] { return gfix(*shared); }));
}

}  // namespace gitrees
