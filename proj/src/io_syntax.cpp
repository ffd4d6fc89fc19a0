#include <set>
#include <sstream>

#include "gitrees/io_lang.hpp"

namespace gitrees::io {

std::string_view to_string(BinOp op) {
  switch (op) {
    case BinOp::Add:
      return "+";
    case BinOp::Sub:
      return "-";
    case BinOp::Mul:
      return "*";
  }
  return "?";
}

Natural apply_binop(BinOp op, Natural a, Natural b) {
  switch (op) {
    case BinOp::Add:
      return a + b;
    case BinOp::Sub:
      return monus(a, b);
    case BinOp::Mul:
      return a * b;
  }
  return 0;
}

Expr Expr::var(std::string name) { return Expr(Var{std::move(name)}); }
Expr Expr::lit(Natural n) { return Expr(Lit{n}); }
Expr Expr::rec(std::string fname, std::string xname, Expr body) {
  return Expr(std::make_shared<const Rec>(
      Rec{std::move(fname), std::move(xname), std::move(body)}));
}
Expr Expr::if_(Expr cond, Expr then_branch, Expr else_branch) {
  return Expr(std::make_shared<const If>(
      If{std::move(cond), std::move(then_branch), std::move(else_branch)}));
}
Expr Expr::app(Expr fn, Expr arg) {
  return Expr(std::make_shared<const App>(App{std::move(fn), std::move(arg)}));
}
Expr Expr::binop(BinOp op, Expr lhs, Expr rhs) {
  return Expr(
      std::make_shared<const Arith>(Arith{op, std::move(lhs), std::move(rhs)}));
}
Expr Expr::input() { return Expr(Input{}); }
Expr Expr::output(Expr arg) {
  return Expr(std::make_shared<const Output>(Output{std::move(arg)}));
}

bool Expr::is_value() const {
  return get_if<Lit>() != nullptr || get_if<Rec>() != nullptr;
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_.index() != b.node_.index()) return false;
  if (const auto* x = a.get_if<Var>()) return x->name == b.get_if<Var>()->name;
  if (const auto* x = a.get_if<Lit>()) return x->value == b.get_if<Lit>()->value;
  if (a.get_if<Input>()) return true;
  if (const auto* x = a.get_if<Rec>()) {
    const Rec* y = b.get_if<Rec>();
    return x->fname == y->fname && x->xname == y->xname && x->body == y->body;
  }
  if (const auto* x = a.get_if<If>()) {
    const If* y = b.get_if<If>();
    return x->cond == y->cond && x->then_branch == y->then_branch &&
           x->else_branch == y->else_branch;
  }
  if (const auto* x = a.get_if<App>()) {
    const App* y = b.get_if<App>();
    return x->fn == y->fn && x->arg == y->arg;
  }
  if (const auto* x = a.get_if<Arith>()) {
    const Arith* y = b.get_if<Arith>();
    return x->op == y->op && x->lhs == y->lhs && x->rhs == y->rhs;
  }
  return a.get_if<Output>()->arg == b.get_if<Output>()->arg;
}

std::string to_string(const Expr& e) {
  if (const auto* v = e.get_if<Var>()) return v->name;
  if (const auto* l = e.get_if<Lit>()) return std::to_string(l->value);
  if (e.get_if<Input>()) return "input";
  if (const auto* r = e.get_if<Rec>()) {
    return "(rec " + r->fname + " " + r->xname + " " + to_string(r->body) + ")";
  }
  if (const auto* i = e.get_if<If>()) {
    return "(if " + to_string(i->cond) + " " + to_string(i->then_branch) + " " +
           to_string(i->else_branch) + ")";
  }
  if (const auto* a = e.get_if<App>()) {
    return "(app " + to_string(a->fn) + " " + to_string(a->arg) + ")";
  }
  if (const auto* a = e.get_if<Arith>()) {
    return "(" + std::string(to_string(a->op)) + " " + to_string(a->lhs) + " " +
           to_string(a->rhs) + ")";
  }
  return "(output " + to_string(e.get_if<Output>()->arg) + ")";
}

namespace {

bool closed_under(const Expr& e, std::set<std::string>& bound) {
  if (const auto* v = e.get_if<Var>()) return bound.contains(v->name);
  if (e.get_if<Lit>() || e.get_if<Input>()) return true;
  if (const auto* r = e.get_if<Rec>()) {
    std::set<std::string> inner = bound;
    inner.insert(r->fname);
    inner.insert(r->xname);
    return closed_under(r->body, inner);
  }
  if (const auto* i = e.get_if<If>()) {
    return closed_under(i->cond, bound) && closed_under(i->then_branch, bound) &&
           closed_under(i->else_branch, bound);
  }
  if (const auto* a = e.get_if<App>()) {
    return closed_under(a->fn, bound) && closed_under(a->arg, bound);
  }
  if (const auto* a = e.get_if<Arith>()) {
    return closed_under(a->lhs, bound) && closed_under(a->rhs, bound);
  }
  return closed_under(e.get_if<Output>()->arg, bound);
}

}  // namespace

bool is_closed(const Expr& e) {
  std::set<std::string> bound;
  return closed_under(e, bound);
}

Expr subst(const Expr& e, const std::string& x, const Expr& v) {
  if (const auto* var = e.get_if<Var>()) return var->name == x ? v : e;
  if (e.get_if<Lit>() || e.get_if<Input>()) return e;
  if (const auto* r = e.get_if<Rec>()) {
    if (r->fname == x || r->xname == x) return e;
    return Expr::rec(r->fname, r->xname, subst(r->body, x, v));
  }
  if (const auto* i = e.get_if<If>()) {
    return Expr::if_(subst(i->cond, x, v), subst(i->then_branch, x, v),
                     subst(i->else_branch, x, v));
  }
  if (const auto* a = e.get_if<App>()) {
    return Expr::app(subst(a->fn, x, v), subst(a->arg, x, v));
  }
  if (const auto* a = e.get_if<Arith>()) {
    return Expr::binop(a->op, subst(a->lhs, x, v), subst(a->rhs, x, v));
  }
  return Expr::output(subst(e.get_if<Output>()->arg, x, v));
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

using sexp::ParseError;
using sexp::Sexp;

bool is_reserved(std::string_view s) {
  return s == "rec" || s == "if" || s == "app" || s == "input" ||
         s == "output" || s == "+" || s == "-" || s == "*" || s == "embed";
}

std::string identifier(const Sexp& s) {
  if (!s.is_atom() || s.as_natural() || is_reserved(s.atom)) {
    throw ParseError("expected an identifier, got '" + sexp::to_string(s) + "'",
                     s.line);
  }
  return s.atom;
}

void expect_arity(const Sexp& s, std::size_t n, std::string_view form) {
  if (s.items.size() != n) {
    throw ParseError("'" + std::string(form) + "' expects " +
                         std::to_string(n - 1) + " operand(s)",
                     s.line);
  }
}

}  // namespace

Expr parse_expr(const Sexp& s) {
  if (s.is_atom()) {
    if (auto n = s.as_natural()) return Expr::lit(*n);
    if (s.atom == "input") return Expr::input();
    return Expr::var(identifier(s));
  }
  if (s.items.empty() || !s.items[0].is_atom()) {
    throw ParseError("expected a form, got '" + sexp::to_string(s) + "'", s.line);
  }
  const std::string& head = s.items[0].atom;
  if (head == "rec") {
    expect_arity(s, 4, head);
    std::string f = identifier(s.items[1]);
    std::string x = identifier(s.items[2]);
    if (f == x) {
      throw ParseError("rec: function and parameter names must differ", s.line);
    }
    return Expr::rec(f, x, parse_expr(s.items[3]));
  }
  if (head == "if") {
    expect_arity(s, 4, head);
    return Expr::if_(parse_expr(s.items[1]), parse_expr(s.items[2]),
                     parse_expr(s.items[3]));
  }
  if (head == "app") {
    if (s.items.size() < 3) throw ParseError("'app' expects at least 2 operands", s.line);
    Expr result = parse_expr(s.items[1]);
    for (std::size_t i = 2; i < s.items.size(); ++i) {
      result = Expr::app(result, parse_expr(s.items[i]));
    }
    return result;
  }
  if (head == "output") {
    expect_arity(s, 2, head);
    return Expr::output(parse_expr(s.items[1]));
  }
  if (head == "+" || head == "-" || head == "*") {
    expect_arity(s, 3, head);
    BinOp op = head == "+" ? BinOp::Add : head == "-" ? BinOp::Sub : BinOp::Mul;
    return Expr::binop(op, parse_expr(s.items[1]), parse_expr(s.items[2]));
  }
  throw ParseError("unknown form '" + head + "'", s.line);
}

Expr parse_expr(std::string_view text) { return parse_expr(sexp::read_one(text)); }

Type parse_type(const Sexp& s) {
  if (s.is_atom("nat")) return Type::nat();
  if (s.is_list && s.items.size() >= 3 && s.items[0].is_atom("->")) {
    Type result = parse_type(s.items.back());
    for (std::size_t i = s.items.size() - 1; i-- > 1;) {
      result = Type::arrow(parse_type(s.items[i]), result);
    }
    return result;
  }
  throw ParseError("expected an iolang type, got '" + sexp::to_string(s) + "'",
                   s.line);
}

}  // namespace gitrees::io
