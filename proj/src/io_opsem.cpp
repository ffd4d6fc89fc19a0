#include "gitrees/io_lang.hpp"

namespace gitrees::io {

Expr plug(const EvalCtx& k, const Expr& e) {
  Expr result = e;
  for (auto it = k.rbegin(); it != k.rend(); ++it) {
    result = std::visit(
        [&](const auto& f) -> Expr {
          using F = std::decay_t<decltype(f)>;
          if constexpr (std::is_same_v<F, frame::Output>) {
            return Expr::output(result);
          } else if constexpr (std::is_same_v<F, frame::If>) {
            return Expr::if_(result, f.then_branch, f.else_branch);
          } else if constexpr (std::is_same_v<F, frame::AppR>) {
            return Expr::app(f.fn, result);
          } else if constexpr (std::is_same_v<F, frame::AppL>) {
            return Expr::app(result, f.arg);
          } else if constexpr (std::is_same_v<F, frame::OpR>) {
            return Expr::binop(f.op, f.lhs, result);
          } else {
            return Expr::binop(f.op, result, f.rhs);
          }
        },
        *it);
  }
  return result;
}

std::optional<std::pair<EvalCtx, Expr>> decompose(const Expr& e) {
  if (e.is_value()) return std::nullopt;
  EvalCtx k;
  Expr current = e;
  while (true) {
    if (const auto* o = current.get_if<Output>()) {
      if (o->arg.is_value()) break;
      k.push_back(frame::Output{});
      current = o->arg;
    } else if (const auto* i = current.get_if<If>()) {
      if (i->cond.is_value()) break;
      k.push_back(frame::If{i->then_branch, i->else_branch});
      current = i->cond;
    } else if (const auto* a = current.get_if<App>()) {
      if (!a->arg.is_value()) {
        k.push_back(frame::AppR{a->fn});
        current = a->arg;
      } else if (!a->fn.is_value()) {
        k.push_back(frame::AppL{a->arg});
        current = a->fn;
      } else {
        break;
      }
    } else if (const auto* a = current.get_if<Arith>()) {
      if (!a->rhs.is_value()) {
        k.push_back(frame::OpR{a->op, a->lhs});
        current = a->rhs;
      } else if (!a->lhs.is_value()) {
        k.push_back(frame::OpL{a->op, a->rhs});
        current = a->lhs;
      } else {
        break;
      }
    } else {
      // Input, or a free variable (which has no reduction).
      break;
    }
  }
  return std::pair{std::move(k), std::move(current)};
}

namespace {

/// Head reduction of a redex whose immediate subterms are values.
std::optional<Config> head_step(const Expr& redex, const IoState& tapes,
                                const OpOptions& options) {
  if (const auto* a = redex.get_if<App>()) {
    const Rec* fn = a->fn.get_if<Rec>();
    if (!fn) return std::nullopt;
    Expr body = subst(subst(fn->body, fn->xname, a->arg), fn->fname, a->fn);
    return Config{std::move(body), tapes};
  }
  if (const auto* a = redex.get_if<Arith>()) {
    const Lit* l = a->lhs.get_if<Lit>();
    const Lit* r = a->rhs.get_if<Lit>();
    if (!l || !r) return std::nullopt;
    return Config{Expr::lit(apply_binop(a->op, l->value, r->value)), tapes};
  }
  if (const auto* i = redex.get_if<If>()) {
    const Lit* c = i->cond.get_if<Lit>();
    if (!c) return std::nullopt;
    bool take_then = (c->value != 0) != options.flip_if;
    return Config{take_then ? i->then_branch : i->else_branch, tapes};
  }
  if (redex.get_if<Input>()) {
    if (tapes.input_tape.empty()) return std::nullopt;
    IoState next = tapes;
    Natural n = next.input_tape.front();
    next.input_tape.erase(next.input_tape.begin());
    return Config{Expr::lit(n), std::move(next)};
  }
  if (const auto* o = redex.get_if<Output>()) {
    const Lit* m = o->arg.get_if<Lit>();
    if (!m) return std::nullopt;
    IoState next = tapes;
    next.output_tape.insert(next.output_tape.begin(), m->value);
    return Config{Expr::lit(0), std::move(next)};
  }
  return std::nullopt;
}

}  // namespace

std::optional<Config> op_step(const Config& c, const OpOptions& options) {
  auto split = decompose(c.expr);
  if (!split) return std::nullopt;
  auto reduced = head_step(split->second, c.tapes, options);
  if (!reduced) return std::nullopt;
  reduced->expr = plug(split->first, reduced->expr);
  return reduced;
}

OpRunResult op_run(const Config& c, std::size_t fuel, const OpOptions& options) {
  Config current = c;
  std::size_t steps = 0;
  while (true) {
    if (current.expr.is_value()) {
      return {OpRunResult::Status::Value, std::move(current), steps};
    }
    if (steps >= fuel) {
      return {OpRunResult::Status::OutOfFuel, std::move(current), steps};
    }
    auto next = op_step(current, options);
    if (!next) return {OpRunResult::Status::Stuck, std::move(current), steps};
    current = std::move(*next);
    ++steps;
  }
}

}  // namespace gitrees::io
