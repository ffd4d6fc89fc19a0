#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gitrees/combinators.hpp"
#include "gitrees/effects.hpp"
#include "gitrees/reifier.hpp"
#include "gitrees/sexp.hpp"
#include "gitrees/tree.hpp"

/// PCF-like language with natural numbers, recursive functions and tape I/O.
namespace gitrees::io {

enum class BinOp { Add, Sub, Mul };

std::string_view to_string(BinOp op);
Natural apply_binop(BinOp op, Natural a, Natural b);

class Expr;

struct Var {
  std::string name;
};
struct Lit {
  Natural value;
};
struct Rec;
struct If;
struct App;
struct Arith;
struct Input {};
struct Output;

class Expr {
 public:
  using Node = std::variant<Var, Lit, std::shared_ptr<const Rec>,
                            std::shared_ptr<const If>, std::shared_ptr<const App>,
                            std::shared_ptr<const Arith>, Input,
                            std::shared_ptr<const Output>>;

  static Expr var(std::string name);
  static Expr lit(Natural n);
  static Expr rec(std::string fname, std::string xname, Expr body);
  static Expr if_(Expr cond, Expr then_branch, Expr else_branch);
  static Expr app(Expr fn, Expr arg);
  static Expr binop(BinOp op, Expr lhs, Expr rhs);
  static Expr input();
  static Expr output(Expr arg);

  const Node& node() const { return node_; }

  template <class T>
  const T* get_if() const {
    if constexpr (std::is_same_v<T, Var> || std::is_same_v<T, Lit> ||
                  std::is_same_v<T, Input>) {
      return std::get_if<T>(&node_);
    } else {
      const auto* p = std::get_if<std::shared_ptr<const T>>(&node_);
      return p ? p->get() : nullptr;
    }
  }

  /// Literals and recursive functions.
  bool is_value() const;

  friend bool operator==(const Expr& a, const Expr& b);

 private:
  explicit Expr(Node node) : node_(std::move(node)) {}
  Node node_;
};

struct Rec {
  std::string fname;
  std::string xname;
  Expr body;
};
struct If {
  Expr cond;
  Expr then_branch;
  Expr else_branch;
};
struct App {
  Expr fn;
  Expr arg;
};
struct Arith {
  BinOp op;
  Expr lhs;
  Expr rhs;
};
struct Output {
  Expr arg;
};

std::string to_string(const Expr& e);

bool is_closed(const Expr& e);

// ---------------------------------------------------------------------------
// Types

class Type {
 public:
  struct Nat {};
  struct Arrow {
    std::shared_ptr<const Type> dom;
    std::shared_ptr<const Type> cod;
  };
  /// Unification variable; only appears in inferred types left unconstrained.
  struct Meta {
    std::size_t id;
  };
  using Node = std::variant<Nat, Arrow, Meta>;

  static Type nat() { return Type(Nat{}); }
  static Type arrow(Type dom, Type cod);
  static Type meta(std::size_t id) { return Type(Meta{id}); }

  const Node& node() const { return node_; }
  bool is_nat() const { return std::holds_alternative<Nat>(node_); }
  const Arrow* as_arrow() const { return std::get_if<Arrow>(&node_); }
  const Meta* as_meta() const { return std::get_if<Meta>(&node_); }

  friend bool operator==(const Type& a, const Type& b);

 private:
  explicit Type(Node n) : node_(std::move(n)) {}
  Node node_;
};

std::string to_string(const Type& t);

using TypeEnv = std::map<std::string, Type, std::less<>>;

/// Principal type of `e` under `env`, or nullopt if ill-typed. Binders carry
/// no annotations, so types are inferred by unification; anything left
/// unconstrained stays a Meta variable.
std::optional<Type> typecheck_io(const TypeEnv& env, const Expr& e);

/// Whether `e` has type `expected` (metas in `expected` are not allowed).
bool check_io(const TypeEnv& env, const Expr& e, const Type& expected);

// ---------------------------------------------------------------------------
// Operational semantics

/// e[v/x]. `v` must be closed, so no renaming is ever needed.
Expr subst(const Expr& e, const std::string& x, const Expr& v);

namespace frame {
struct Output {};
struct If {
  Expr then_branch;
  Expr else_branch;
};
/// e K: the argument is being evaluated.
struct AppR {
  Expr fn;
};
/// K v: the function is being evaluated, the argument is a value.
struct AppL {
  Expr arg;
};
/// e (+) K
struct OpR {
  BinOp op;
  Expr lhs;
};
/// K (+) v
struct OpL {
  BinOp op;
  Expr rhs;
};
}  // namespace frame

using Frame = std::variant<frame::Output, frame::If, frame::AppR, frame::AppL,
                           frame::OpR, frame::OpL>;

/// Evaluation context, outermost frame first; empty is the hole.
using EvalCtx = std::vector<Frame>;

Expr plug(const EvalCtx& k, const Expr& e);

/// Unique right-to-left decomposition into K[redex]; nullopt for values.
std::optional<std::pair<EvalCtx, Expr>> decompose(const Expr& e);

struct Config {
  Expr expr;
  IoState tapes;
};

/// Fault injection for exercising the differential harness.
struct OpOptions {
  bool flip_if = false;
};

std::optional<Config> op_step(const Config& c, const OpOptions& options = {});

struct OpRunResult {
  enum class Status { Value, Stuck, OutOfFuel };
  Status status = Status::Value;
  Config final;
  std::size_t steps = 0;
};

OpRunResult op_run(const Config& c, std::size_t fuel,
                   const OpOptions& options = {});

// ---------------------------------------------------------------------------
// Denotation

using Env = std::map<std::string, ITree, std::less<>>;

/// Interpretation into trees over any signature embedding the I/O family.
/// Free variables of `e` must be bound in `env` (throws std::out_of_range).
ITree denote_io(const Expr& e, const Env& env, const IoOps& ops);

/// Interpretation of an evaluation context as a homomorphism.
Hom denote_ectx(const EvalCtx& k, const Env& env, const IoOps& ops);

// ---------------------------------------------------------------------------
// Concrete syntax

Expr parse_expr(const sexp::Sexp& s);
Expr parse_expr(std::string_view text);
Type parse_type(const sexp::Sexp& s);

}  // namespace gitrees::io
