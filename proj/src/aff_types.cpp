#include <algorithm>

#include "gitrees/aff_lang.hpp"
#include "gitrees/interop.hpp"

namespace gitrees::aff {
namespace {

class Unifier {
 public:
  Type fresh() {
    bindings_.emplace_back();
    return Type::meta(bindings_.size() - 1);
  }

  Type resolve(const Type& t) const {
    if (const auto* m = t.get_if<Type::Meta>()) {
      if (m->id < bindings_.size() && bindings_[m->id]) {
        return resolve(*bindings_[m->id]);
      }
      return t;
    }
    if (const auto* x = t.get_if<Type::Tensor>()) {
      return Type::tensor(resolve(*x->left), resolve(*x->right));
    }
    if (const auto* x = t.get_if<Type::Lolli>()) {
      return Type::lolli(resolve(*x->dom), resolve(*x->cod));
    }
    if (const auto* x = t.get_if<Type::Ref>()) return Type::ref(resolve(*x->inner));
    return t;
  }

  bool unify(const Type& lhs, const Type& rhs) {
    Type a = resolve(lhs);
    Type b = resolve(rhs);
    if (const auto* m = a.get_if<Type::Meta>()) return bind(m->id, b);
    if (const auto* m = b.get_if<Type::Meta>()) return bind(m->id, a);
    if (a.node().index() != b.node().index()) return false;
    if (const auto* x = a.get_if<Type::Tensor>()) {
      const auto* y = b.get_if<Type::Tensor>();
      return unify(*x->left, *y->left) && unify(*x->right, *y->right);
    }
    if (const auto* x = a.get_if<Type::Lolli>()) {
      const auto* y = b.get_if<Type::Lolli>();
      return unify(*x->dom, *y->dom) && unify(*x->cod, *y->cod);
    }
    if (const auto* x = a.get_if<Type::Ref>()) {
      return unify(*x->inner, *b.get_if<Type::Ref>()->inner);
    }
    return true;
  }

 private:
  bool occurs(std::size_t id, const Type& t) const {
    Type r = resolve(t);
    if (const auto* m = r.get_if<Type::Meta>()) return m->id == id;
    if (const auto* x = r.get_if<Type::Tensor>()) {
      return occurs(id, *x->left) || occurs(id, *x->right);
    }
    if (const auto* x = r.get_if<Type::Lolli>()) {
      return occurs(id, *x->dom) || occurs(id, *x->cod);
    }
    if (const auto* x = r.get_if<Type::Ref>()) return occurs(id, *x->inner);
    return false;
  }

  bool bind(std::size_t id, const Type& t) {
    if (const auto* m = t.get_if<Type::Meta>(); m && m->id == id) return true;
    if (occurs(id, t)) return false;
    bindings_[id] = t;
    return true;
  }

  std::vector<std::optional<Type>> bindings_;
};

bool disjoint(const NameSet& a, const NameSet& b) {
  return std::none_of(a.begin(), a.end(),
                      [&](const std::string& x) { return b.contains(x); });
}

NameSet without(NameSet s, std::initializer_list<std::string_view> names) {
  for (std::string_view n : names) {
    auto it = s.find(n);
    if (it != s.end()) s.erase(it);
  }
  return s;
}

NameSet merge(NameSet a, const NameSet& b) {
  a.insert(b.begin(), b.end());
  return a;
}

class Checker {
 public:
  explicit Checker(const CheckOptions& options) : options_(options) {}

  Unifier& unifier() { return u_; }

  std::optional<Derivation> infer(Context& ctx, const Expr& e) {
    if (e.get_if<Lit>()) return leaf(e, Type::nat());
    if (e.get_if<BoolLit>()) return leaf(e, Type::boolean());
    if (e.get_if<UnitLit>()) return leaf(e, Type::unit());
    if (const auto* v = e.get_if<Var>()) {
      for (auto it = ctx.rbegin(); it != ctx.rend(); ++it) {
        if (it->first == v->name) return Derivation{e, it->second, {v->name}, {}, {}};
      }
      return std::nullopt;
    }
    if (const auto* lam = e.get_if<Lam>()) {
      Type dom = u_.fresh();
      ctx.emplace_back(lam->x, dom);
      auto body = infer(ctx, lam->body);
      ctx.pop_back();
      if (!body) return std::nullopt;
      NameSet used = without(body->used, {lam->x});
      Type t = Type::lolli(dom, body->type);
      return node(e, t, std::move(used), {std::move(*body)});
    }
    if (const auto* app = e.get_if<App>()) {
      auto fn = infer(ctx, app->fn);
      auto arg = infer(ctx, app->arg);
      if (!fn || !arg || !disjoint(fn->used, arg->used)) return std::nullopt;
      Type result = u_.fresh();
      if (!u_.unify(fn->type, Type::lolli(arg->type, result))) return std::nullopt;
      NameSet used = merge(fn->used, arg->used);
      return node(e, result, std::move(used), {std::move(*fn), std::move(*arg)});
    }
    if (const auto* p = e.get_if<Pair>()) {
      auto l = infer(ctx, p->left);
      auto r = infer(ctx, p->right);
      if (!l || !r || !disjoint(l->used, r->used)) return std::nullopt;
      Type t = Type::tensor(l->type, r->type);
      NameSet used = merge(l->used, r->used);
      return node(e, t, std::move(used), {std::move(*l), std::move(*r)});
    }
    if (const auto* lp = e.get_if<LetPair>()) {
      if (lp->x1 == lp->x2) return std::nullopt;
      auto rhs = infer(ctx, lp->rhs);
      if (!rhs) return std::nullopt;
      Type t1 = u_.fresh();
      Type t2 = u_.fresh();
      if (!u_.unify(rhs->type, Type::tensor(t1, t2))) return std::nullopt;
      ctx.emplace_back(lp->x1, t1);
      ctx.emplace_back(lp->x2, t2);
      auto body = infer(ctx, lp->body);
      ctx.pop_back();
      ctx.pop_back();
      if (!body) return std::nullopt;
      NameSet body_used = without(body->used, {lp->x1, lp->x2});
      if (!disjoint(rhs->used, body_used)) return std::nullopt;
      Type t = body->type;
      NameSet used = merge(rhs->used, body_used);
      return node(e, t, std::move(used), {std::move(*rhs), std::move(*body)});
    }
    if (const auto* a = e.get_if<Alloc>()) {
      auto init = infer(ctx, a->init);
      if (!init) return std::nullopt;
      Type t = Type::ref(init->type);
      NameSet used = init->used;
      return node(e, t, std::move(used), {std::move(*init)});
    }
    if (const auto* d = e.get_if<Dealloc>()) {
      auto ref = infer(ctx, d->ref);
      if (!ref || !u_.unify(ref->type, Type::ref(u_.fresh()))) return std::nullopt;
      NameSet used = ref->used;
      return node(e, Type::unit(), std::move(used), {std::move(*ref)});
    }
    if (const auto* r = e.get_if<Replace>()) {
      auto ref = infer(ctx, r->ref);
      auto value = infer(ctx, r->value);
      if (!ref || !value || !disjoint(ref->used, value->used)) return std::nullopt;
      Type old = u_.fresh();
      if (!u_.unify(ref->type, Type::ref(old))) return std::nullopt;
      Type t = Type::tensor(old, Type::ref(value->type));
      NameSet used = merge(ref->used, value->used);
      return node(e, t, std::move(used), {std::move(*ref), std::move(*value)});
    }
    const Embed* em = e.get_if<Embed>();
    if (!options_.allow_embed) return std::nullopt;
    if (!io::is_closed(em->term) || !io::check_io({}, em->term, em->io_type)) {
      return std::nullopt;
    }
    auto conv = interop::conv_check(em->io_type, em->aff_type);
    if (!conv) return std::nullopt;
    Derivation d{e, em->aff_type, {}, {}, {}};
    d.conversion = std::make_shared<const interop::Conversion>(std::move(*conv));
    return d;
  }

  void zonk(Derivation& d) const {
    d.type = u_.resolve(d.type);
    for (Derivation& p : d.premises) zonk(p);
  }

 private:
  static Derivation leaf(const Expr& e, Type t) { return Derivation{e, t, {}, {}, {}}; }

  static Derivation node(const Expr& e, Type t, NameSet used,
                         std::vector<Derivation> premises) {
    return Derivation{e, std::move(t), std::move(used), std::move(premises), {}};
  }

  const CheckOptions& options_;
  Unifier u_;
};

bool valid_context(const Context& ctx) {
  for (std::size_t i = 0; i < ctx.size(); ++i) {
    if (has_meta(ctx[i].second)) return false;
    for (std::size_t j = i + 1; j < ctx.size(); ++j) {
      if (ctx[i].first == ctx[j].first) return false;
    }
  }
  return true;
}

}  // namespace

std::optional<Derivation> typecheck_aff(const Context& ctx, const Expr& e,
                                        const CheckOptions& options) {
  if (!valid_context(ctx)) return std::nullopt;
  Checker checker(options);
  Context scratch = ctx;
  auto d = checker.infer(scratch, e);
  if (!d) return std::nullopt;
  checker.zonk(*d);
  return d;
}

std::optional<Derivation> check_aff(const Context& ctx, const Expr& e,
                                    const Type& expected,
                                    const CheckOptions& options) {
  if (!valid_context(ctx) || has_meta(expected)) return std::nullopt;
  Checker checker(options);
  Context scratch = ctx;
  auto d = checker.infer(scratch, e);
  if (!d || !checker.unifier().unify(d->type, expected)) return std::nullopt;
  checker.zonk(*d);
  return d;
}

}  // namespace gitrees::aff
