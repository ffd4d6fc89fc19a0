#include <functional>

#include "gitrees/io_lang.hpp"

namespace gitrees::io {

Type Type::arrow(Type dom, Type cod) {
  return Type(Arrow{std::make_shared<const Type>(std::move(dom)),
                    std::make_shared<const Type>(std::move(cod))});
}

bool operator==(const Type& a, const Type& b) {
  if (a.node_.index() != b.node_.index()) return false;
  if (a.is_nat()) return true;
  if (const auto* m = a.as_meta()) return m->id == b.as_meta()->id;
  const auto* x = a.as_arrow();
  const auto* y = b.as_arrow();
  return *x->dom == *y->dom && *x->cod == *y->cod;
}

std::string to_string(const Type& t) {
  if (t.is_nat()) return "nat";
  if (const auto* m = t.as_meta()) return "?" + std::to_string(m->id);
  const auto* a = t.as_arrow();
  return "(-> " + to_string(*a->dom) + " " + to_string(*a->cod) + ")";
}

namespace {

/// First-order unification over the simple types.
class Unifier {
 public:
  Type fresh() {
    bindings_.emplace_back();
    return Type::meta(bindings_.size() - 1);
  }

  Type resolve(const Type& t) const {
    if (const auto* m = t.as_meta()) {
      if (m->id < bindings_.size() && bindings_[m->id]) {
        return resolve(*bindings_[m->id]);
      }
      return t;
    }
    if (const auto* a = t.as_arrow()) {
      return Type::arrow(resolve(*a->dom), resolve(*a->cod));
    }
    return t;
  }

  bool unify(const Type& lhs, const Type& rhs) {
    Type a = resolve(lhs);
    Type b = resolve(rhs);
    if (const auto* m = a.as_meta()) return bind(m->id, b);
    if (const auto* m = b.as_meta()) return bind(m->id, a);
    if (a.is_nat() && b.is_nat()) return true;
    const auto* x = a.as_arrow();
    const auto* y = b.as_arrow();
    if (!x || !y) return false;
    return unify(*x->dom, *y->dom) && unify(*x->cod, *y->cod);
  }

 private:
  static bool occurs(std::size_t id, const Type& t) {
    if (const auto* m = t.as_meta()) return m->id == id;
    if (const auto* a = t.as_arrow()) return occurs(id, *a->dom) || occurs(id, *a->cod);
    return false;
  }

  bool bind(std::size_t id, const Type& t) {
    if (const auto* m = t.as_meta(); m && m->id == id) return true;
    if (occurs(id, t)) return false;
    bindings_[id] = t;
    return true;
  }

  std::vector<std::optional<Type>> bindings_;
};

/// Renumbers metas 0,1,... in order of appearance.
Type normalize(const Type& t, std::map<std::size_t, std::size_t>& names) {
  if (const auto* m = t.as_meta()) {
    auto [it, _] = names.emplace(m->id, names.size());
    return Type::meta(it->second);
  }
  if (const auto* a = t.as_arrow()) {
    Type dom = normalize(*a->dom, names);
    return Type::arrow(dom, normalize(*a->cod, names));
  }
  return t;
}

bool has_meta(const Type& t) {
  if (t.as_meta()) return true;
  if (const auto* a = t.as_arrow()) return has_meta(*a->dom) || has_meta(*a->cod);
  return false;
}

std::optional<Type> infer(Unifier& u, const TypeEnv& env, const Expr& e) {
  if (const auto* v = e.get_if<Var>()) {
    auto it = env.find(v->name);
    if (it == env.end()) return std::nullopt;
    return it->second;
  }
  if (e.get_if<Lit>() || e.get_if<Input>()) return Type::nat();
  if (const auto* r = e.get_if<Rec>()) {
    Type dom = u.fresh();
    Type cod = u.fresh();
    Type fn = Type::arrow(dom, cod);
    TypeEnv inner = env;
    inner.insert_or_assign(r->fname, fn);
    inner.insert_or_assign(r->xname, dom);
    auto body = infer(u, inner, r->body);
    if (!body || !u.unify(*body, cod)) return std::nullopt;
    return fn;
  }
  if (const auto* i = e.get_if<If>()) {
    auto c = infer(u, env, i->cond);
    if (!c || !u.unify(*c, Type::nat())) return std::nullopt;
    auto t = infer(u, env, i->then_branch);
    auto f = infer(u, env, i->else_branch);
    if (!t || !f || !u.unify(*t, *f)) return std::nullopt;
    return t;
  }
  if (const auto* a = e.get_if<App>()) {
    auto fn = infer(u, env, a->fn);
    auto arg = infer(u, env, a->arg);
    if (!fn || !arg) return std::nullopt;
    Type result = u.fresh();
    if (!u.unify(*fn, Type::arrow(*arg, result))) return std::nullopt;
    return result;
  }
  if (const auto* a = e.get_if<Arith>()) {
    auto l = infer(u, env, a->lhs);
    auto r = infer(u, env, a->rhs);
    if (!l || !r || !u.unify(*l, Type::nat()) || !u.unify(*r, Type::nat())) {
      return std::nullopt;
    }
    return Type::nat();
  }
  auto arg = infer(u, env, e.get_if<Output>()->arg);
  if (!arg || !u.unify(*arg, Type::nat())) return std::nullopt;
  return Type::nat();
}

bool env_has_meta(const TypeEnv& env) {
  for (const auto& [_, t] : env) {
    if (has_meta(t)) return true;
  }
  return false;
}

}  // namespace

std::optional<Type> typecheck_io(const TypeEnv& env, const Expr& e) {
  if (env_has_meta(env)) return std::nullopt;
  Unifier u;
  auto t = infer(u, env, e);
  if (!t) return std::nullopt;
  std::map<std::size_t, std::size_t> names;
  return normalize(u.resolve(*t), names);
}

bool check_io(const TypeEnv& env, const Expr& e, const Type& expected) {
  if (has_meta(expected) || env_has_meta(env)) return false;
  Unifier u;
  auto t = infer(u, env, e);
  return t && u.unify(*t, expected);
}

}  // namespace gitrees::io
