#include "gitrees/aff_lang.hpp"

namespace gitrees::aff {

Type Type::tensor(Type l, Type r) {
  return Type(Tensor{std::make_shared<const Type>(std::move(l)),
                     std::make_shared<const Type>(std::move(r))});
}
Type Type::lolli(Type dom, Type cod) {
  return Type(Lolli{std::make_shared<const Type>(std::move(dom)),
                    std::make_shared<const Type>(std::move(cod))});
}
Type Type::ref(Type inner) {
  return Type(Ref{std::make_shared<const Type>(std::move(inner))});
}

bool operator==(const Type& a, const Type& b) {
  if (a.node_.index() != b.node_.index()) return false;
  if (const auto* x = a.get_if<Type::Tensor>()) {
    const auto* y = b.get_if<Type::Tensor>();
    return *x->left == *y->left && *x->right == *y->right;
  }
  if (const auto* x = a.get_if<Type::Lolli>()) {
    const auto* y = b.get_if<Type::Lolli>();
    return *x->dom == *y->dom && *x->cod == *y->cod;
  }
  if (const auto* x = a.get_if<Type::Ref>()) {
    return *x->inner == *b.get_if<Type::Ref>()->inner;
  }
  if (const auto* x = a.get_if<Type::Meta>()) {
    return x->id == b.get_if<Type::Meta>()->id;
  }
  return true;
}

std::string to_string(const Type& t) {
  if (t.is<Type::Bool>()) return "bool";
  if (t.is<Type::Nat>()) return "nat";
  if (t.is<Type::Unit>()) return "unit";
  if (const auto* x = t.get_if<Type::Tensor>()) {
    return "(* " + to_string(*x->left) + " " + to_string(*x->right) + ")";
  }
  if (const auto* x = t.get_if<Type::Lolli>()) {
    return "(-o " + to_string(*x->dom) + " " + to_string(*x->cod) + ")";
  }
  if (const auto* x = t.get_if<Type::Ref>()) {
    return "(ref " + to_string(*x->inner) + ")";
  }
  return "?" + std::to_string(t.get_if<Type::Meta>()->id);
}

bool has_meta(const Type& t) {
  if (t.is<Type::Meta>()) return true;
  if (const auto* x = t.get_if<Type::Tensor>()) {
    return has_meta(*x->left) || has_meta(*x->right);
  }
  if (const auto* x = t.get_if<Type::Lolli>()) {
    return has_meta(*x->dom) || has_meta(*x->cod);
  }
  if (const auto* x = t.get_if<Type::Ref>()) return has_meta(*x->inner);
  return false;
}

Expr Expr::lit(Natural n) { return Expr(Lit{n}); }
Expr Expr::boolean(bool b) { return Expr(BoolLit{b}); }
Expr Expr::unit() { return Expr(UnitLit{}); }
Expr Expr::var(std::string name) { return Expr(Var{std::move(name)}); }
Expr Expr::lam(std::string x, Expr body) {
  return Expr(std::make_shared<const Lam>(Lam{std::move(x), std::move(body)}));
}
Expr Expr::app(Expr fn, Expr arg) {
  return Expr(std::make_shared<const App>(App{std::move(fn), std::move(arg)}));
}
Expr Expr::pair(Expr left, Expr right) {
  return Expr(
      std::make_shared<const Pair>(Pair{std::move(left), std::move(right)}));
}
Expr Expr::let_pair(std::string x1, std::string x2, Expr rhs, Expr body) {
  return Expr(std::make_shared<const LetPair>(
      LetPair{std::move(x1), std::move(x2), std::move(rhs), std::move(body)}));
}
Expr Expr::alloc(Expr init) {
  return Expr(std::make_shared<const Alloc>(Alloc{std::move(init)}));
}
Expr Expr::dealloc(Expr ref) {
  return Expr(std::make_shared<const Dealloc>(Dealloc{std::move(ref)}));
}
Expr Expr::replace(Expr ref, Expr value) {
  return Expr(
      std::make_shared<const Replace>(Replace{std::move(ref), std::move(value)}));
}
Expr Expr::embed(io::Expr term, io::Type io_type, Type aff_type) {
  return Expr(std::make_shared<const Embed>(
      Embed{std::move(term), std::move(io_type), std::move(aff_type)}));
}

std::string to_string(const Expr& e) {
  if (const auto* x = e.get_if<Lit>()) return std::to_string(x->value);
  if (const auto* x = e.get_if<BoolLit>()) return x->value ? "#t" : "#f";
  if (e.get_if<UnitLit>()) return "unit";
  if (const auto* x = e.get_if<Var>()) return x->name;
  if (const auto* x = e.get_if<Lam>()) {
    return "(lam " + x->x + " " + to_string(x->body) + ")";
  }
  if (const auto* x = e.get_if<App>()) {
    return "(app " + to_string(x->fn) + " " + to_string(x->arg) + ")";
  }
  if (const auto* x = e.get_if<Pair>()) {
    return "(pair " + to_string(x->left) + " " + to_string(x->right) + ")";
  }
  if (const auto* x = e.get_if<LetPair>()) {
    return "(letpair " + x->x1 + " " + x->x2 + " " + to_string(x->rhs) + " " +
           to_string(x->body) + ")";
  }
  if (const auto* x = e.get_if<Alloc>()) return "(alloc " + to_string(x->init) + ")";
  if (const auto* x = e.get_if<Dealloc>()) {
    return "(dealloc " + to_string(x->ref) + ")";
  }
  if (const auto* x = e.get_if<Replace>()) {
    return "(replace " + to_string(x->ref) + " " + to_string(x->value) + ")";
  }
  const Embed* x = e.get_if<Embed>();
  return "(embed " + io::to_string(x->term) + " : " + io::to_string(x->io_type) +
         " ~ " + to_string(x->aff_type) + ")";
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

using sexp::ParseError;
using sexp::Sexp;

bool is_reserved(std::string_view s) {
  return s == "lam" || s == "app" || s == "pair" || s == "letpair" ||
         s == "alloc" || s == "dealloc" || s == "replace" || s == "embed" ||
         s == "unit" || s == "#t" || s == "#f" || s == ":" || s == "~";
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
    if (s.atom == "#t") return Expr::boolean(true);
    if (s.atom == "#f") return Expr::boolean(false);
    if (s.atom == "unit") return Expr::unit();
    return Expr::var(identifier(s));
  }
  if (s.items.empty() || !s.items[0].is_atom()) {
    throw ParseError("expected a form, got '" + sexp::to_string(s) + "'", s.line);
  }
  const std::string& head = s.items[0].atom;
  if (head == "lam") {
    expect_arity(s, 3, head);
    return Expr::lam(identifier(s.items[1]), parse_expr(s.items[2]));
  }
  if (head == "app") {
    if (s.items.size() < 3) throw ParseError("'app' expects at least 2 operands", s.line);
    Expr result = parse_expr(s.items[1]);
    for (std::size_t i = 2; i < s.items.size(); ++i) {
      result = Expr::app(result, parse_expr(s.items[i]));
    }
    return result;
  }
  if (head == "pair") {
    expect_arity(s, 3, head);
    return Expr::pair(parse_expr(s.items[1]), parse_expr(s.items[2]));
  }
  if (head == "letpair") {
    expect_arity(s, 5, head);
    std::string x1 = identifier(s.items[1]);
    std::string x2 = identifier(s.items[2]);
    if (x1 == x2) throw ParseError("letpair binds the same name twice", s.line);
    return Expr::let_pair(x1, x2, parse_expr(s.items[3]), parse_expr(s.items[4]));
  }
  if (head == "alloc") {
    expect_arity(s, 2, head);
    return Expr::alloc(parse_expr(s.items[1]));
  }
  if (head == "dealloc") {
    expect_arity(s, 2, head);
    return Expr::dealloc(parse_expr(s.items[1]));
  }
  if (head == "replace") {
    expect_arity(s, 3, head);
    return Expr::replace(parse_expr(s.items[1]), parse_expr(s.items[2]));
  }
  if (head == "embed") {
    if (s.items.size() != 6 || !s.items[2].is_atom(":") || !s.items[4].is_atom("~")) {
      throw ParseError("expected (embed <io-expr> : <io-type> ~ <aff-type>)", s.line);
    }
    return Expr::embed(io::parse_expr(s.items[1]), io::parse_type(s.items[3]),
                       parse_type(s.items[5]));
  }
  throw ParseError("unknown form '" + head + "'", s.line);
}

Expr parse_expr(std::string_view text) { return parse_expr(sexp::read_one(text)); }

Type parse_type(const Sexp& s) {
  if (s.is_atom("bool")) return Type::boolean();
  if (s.is_atom("nat")) return Type::nat();
  if (s.is_atom("unit")) return Type::unit();
  if (s.is_list && !s.items.empty() && s.items[0].is_atom()) {
    const std::string& head = s.items[0].atom;
    if (head == "ref" && s.items.size() == 2) return Type::ref(parse_type(s.items[1]));
    if ((head == "*" || head == "-o") && s.items.size() >= 3) {
      Type result = parse_type(s.items.back());
      for (std::size_t i = s.items.size() - 1; i-- > 1;) {
        result = head == "*" ? Type::tensor(parse_type(s.items[i]), result)
                             : Type::lolli(parse_type(s.items[i]), result);
      }
      return result;
    }
  }
  throw ParseError("expected an afflang type, got '" + sexp::to_string(s) + "'",
                   s.line);
}

}  // namespace gitrees::aff
