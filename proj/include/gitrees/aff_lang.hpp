#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "gitrees/effects.hpp"
#include "gitrees/io_lang.hpp"
#include "gitrees/sexp.hpp"
#include "gitrees/tree.hpp"

namespace gitrees::interop {
struct Conversion;
}

/// Affine language with pairs and strong-update references. Its AST also
/// carries the boundary form that embeds closed iolang terms.
namespace gitrees::aff {

class Type {
 public:
  struct Bool {};
  struct Nat {};
  struct Unit {};
  struct Tensor {
    std::shared_ptr<const Type> left;
    std::shared_ptr<const Type> right;
  };
  struct Lolli {
    std::shared_ptr<const Type> dom;
    std::shared_ptr<const Type> cod;
  };
  struct Ref {
    std::shared_ptr<const Type> inner;
  };
  /// Unification variable for unannotated lambda parameters.
  struct Meta {
    std::size_t id;
  };
  using Node = std::variant<Bool, Nat, Unit, Tensor, Lolli, Ref, Meta>;

  static Type boolean() { return Type(Bool{}); }
  static Type nat() { return Type(Nat{}); }
  static Type unit() { return Type(Unit{}); }
  static Type tensor(Type l, Type r);
  static Type lolli(Type dom, Type cod);
  static Type ref(Type inner);
  static Type meta(std::size_t id) { return Type(Meta{id}); }

  const Node& node() const { return node_; }
  template <class T>
  const T* get_if() const {
    return std::get_if<T>(&node_);
  }
  template <class T>
  bool is() const {
    return std::holds_alternative<T>(node_);
  }

  friend bool operator==(const Type& a, const Type& b);

 private:
  explicit Type(Node n) : node_(std::move(n)) {}
  Node node_;
};

std::string to_string(const Type& t);
bool has_meta(const Type& t);

class Expr;

struct Lit {
  Natural value;
};
struct BoolLit {
  bool value;
};
struct UnitLit {};
struct Var {
  std::string name;
};
struct Lam;
struct App;
struct Pair;
struct LetPair;
struct Alloc;
struct Dealloc;
struct Replace;
struct Embed;

class Expr {
 public:
  using Node =
      std::variant<Lit, BoolLit, UnitLit, Var, std::shared_ptr<const Lam>,
                   std::shared_ptr<const App>, std::shared_ptr<const Pair>,
                   std::shared_ptr<const LetPair>, std::shared_ptr<const Alloc>,
                   std::shared_ptr<const Dealloc>, std::shared_ptr<const Replace>,
                   std::shared_ptr<const Embed>>;

  static Expr lit(Natural n);
  static Expr boolean(bool b);
  static Expr unit();
  static Expr var(std::string name);
  static Expr lam(std::string x, Expr body);
  static Expr app(Expr fn, Expr arg);
  static Expr pair(Expr left, Expr right);
  static Expr let_pair(std::string x1, std::string x2, Expr rhs, Expr body);
  static Expr alloc(Expr init);
  static Expr dealloc(Expr ref);
  static Expr replace(Expr ref, Expr value);
  static Expr embed(io::Expr term, io::Type io_type, Type aff_type);

  const Node& node() const { return node_; }

  template <class T>
  const T* get_if() const {
    if constexpr (std::is_same_v<T, Lit> || std::is_same_v<T, BoolLit> ||
                  std::is_same_v<T, UnitLit> || std::is_same_v<T, Var>) {
      return std::get_if<T>(&node_);
    } else {
      const auto* p = std::get_if<std::shared_ptr<const T>>(&node_);
      return p ? p->get() : nullptr;
    }
  }

 private:
  explicit Expr(Node n) : node_(std::move(n)) {}
  Node node_;
};

struct Lam {
  std::string x;
  Expr body;
};
struct App {
  Expr fn;
  Expr arg;
};
struct Pair {
  Expr left;
  Expr right;
};
struct LetPair {
  std::string x1;
  std::string x2;
  Expr rhs;
  Expr body;
};
struct Alloc {
  Expr init;
};
struct Dealloc {
  Expr ref;
};
struct Replace {
  Expr ref;
  Expr value;
};
/// Closed iolang term crossing into the affine world at a declared
/// conversion io_type ~ aff_type.
struct Embed {
  io::Expr term;
  io::Type io_type;
  Type aff_type;
};

std::string to_string(const Expr& e);

/// Ordered typing context; later entries shadow earlier ones.
using Context = std::vector<std::pair<std::string, Type>>;

using NameSet = std::set<std::string, std::less<>>;

/// Typing derivation: the judgment at this node plus the premises in
/// source order. `used` is the set of context variables the subterm
/// consumes; binary rules require their premises' sets to be disjoint.
struct Derivation {
  Expr expr;
  Type type;
  NameSet used;
  std::vector<Derivation> premises;
  /// Set on Embed nodes.
  std::shared_ptr<const interop::Conversion> conversion;
};

struct CheckOptions {
  /// Accept the Embed form (the combined language).
  bool allow_embed = false;
};

/// Algorithmic affine typing. Returns the derivation or nullopt on a type
/// error, a duplicated variable, or (without allow_embed) an Embed node.
std::optional<Derivation> typecheck_aff(const Context& ctx, const Expr& e,
                                        const CheckOptions& options = {});

/// typecheck_aff constrained to `expected` (which must be meta-free).
std::optional<Derivation> check_aff(const Context& ctx, const Expr& e,
                                    const Type& expected,
                                    const CheckOptions& options = {});

// ---------------------------------------------------------------------------
// Denotation

/// Effect families available to denotations. `io` is needed only when the
/// program embeds iolang terms.
struct Ambient {
  StoreOps store;
  std::optional<IoOps> io;
};

/// Protects `a` behind a one-shot flag cell: the first force runs `a`, any
/// later force is Err(Lin).
ITree thunk_protect(const StoreOps& store, const ITree& a);

/// force(a) = a applied to Nat(0).
ITree force(const ITree& a);

using Env = std::map<std::string, ITree, std::less<>>;

/// Interprets a derivation. `env` maps the context's variables to
/// protected thunks; each premise only sees the variables it consumes.
ITree denote_aff(const Derivation& d, const Env& env, const Ambient& ambient);

// ---------------------------------------------------------------------------
// Concrete syntax

Expr parse_expr(const sexp::Sexp& s);
Expr parse_expr(std::string_view text);
Type parse_type(const sexp::Sexp& s);

}  // namespace gitrees::aff
