#pragma once

#include <functional>

#include "gitrees/tree.hpp"

namespace gitrees {

/// A tree transformer that commutes with Err, Tick and Vis.
using Hom = std::function<ITree(const ITree&)>;

/// Action of a homomorphism on values (Nat and Fun heads only).
using ValueCase = std::function<ITree(const ITree&)>;

/// Extends an action on values to the unique homomorphism:
///   f(Err e) = Err e,  f(Tau t) = Tau(f . t),  f(Vis op x k) = Vis op x (f . k).
Hom make_hom(ValueCase value_case);

/// Hom composition, outer after inner.
Hom compose(Hom outer, Hom inner);

ITree get_fun(const ITree& a, std::function<ITree(const Later<Endo>&)> f);
ITree get_nat(const ITree& a, std::function<ITree(Natural)> f);

/// LET x = a IN f(x): runs a's ticks and effects, then applies f to the value.
ITree get_val(const ITree& a, std::function<ITree(const ITree&)> f);

/// Call-by-name application.
ITree app_cbn(const ITree& fn, const ITree& arg);

/// Call-by-value application with right-to-left effect order: the argument
/// is evaluated first, then the function, then one tick for the call.
ITree app_strict(const ITree& fn, const ITree& arg);

/// Conditional on naturals: nonzero selects `then_branch`, zero selects
/// `else_branch`, a function scrutinee is a run-time error.
ITree ifz(const ITree& cond, const ITree& then_branch, const ITree& else_branch);

using NatOp = std::function<Natural(Natural, Natural)>;

/// Right-to-left binary arithmetic on naturals.
ITree natop(const NatOp& op, const ITree& lhs, const ITree& rhs);

Natural monus(Natural a, Natural b);

/// a ;; b  -- all of a's ticks and effects, then b.
ITree seq(const ITree& a, const ITree& b);

/// while cond do body; returns Nat(0) when cond reaches zero.
ITree while_loop(const ITree& cond, const ITree& body);

/// Church-encoded pair, evaluating `second` before `first`.
ITree pair(const ITree& first, const ITree& second);
ITree proj1(const ITree& p);
ITree proj2(const ITree& p);

/// Guarded fixpoint: gfix(f) = f(Next(gfix(f))). `f` must only use its
/// argument under a constructor; otherwise construction does not terminate.
ITree gfix(std::function<ITree(const Later<ITree>&)> f);

}  // namespace gitrees
