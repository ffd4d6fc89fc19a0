#include "gitrees/tree.hpp"

#include <sstream>

namespace gitrees {

std::string_view to_string(ErrorKind e) {
  switch (e) {
    case ErrorKind::RunTime:
      return "RunTime";
    case ErrorKind::Lin:
      return "Lin";
  }
  return "?";
}

std::optional<ErrorKind> parse_error_kind(std::string_view name) {
  if (name == "runtime" || name == "RunTime") return ErrorKind::RunTime;
  if (name == "lin" || name == "Lin") return ErrorKind::Lin;
  return std::nullopt;
}

PayloadShape shape_of(const Payload& p) {
  return static_cast<PayloadShape>(p.index());
}

std::string_view to_string(PayloadShape s) {
  switch (s) {
    case PayloadShape::Unit:
      return "unit";
    case PayloadShape::Num:
      return "num";
    case PayloadShape::Loc:
      return "loc";
    case PayloadShape::Tree:
      return "tree";
    case PayloadShape::LocTree:
      return "loc*tree";
  }
  return "?";
}

std::string_view to_string(HeadKind k) {
  switch (k) {
    case HeadKind::Nat:
      return "Nat";
    case HeadKind::Fun:
      return "Fun";
    case HeadKind::Err:
      return "Err";
    case HeadKind::Tau:
      return "Tau";
    case HeadKind::Vis:
      return "Vis";
  }
  return "?";
}

ITree ITree::nat(Natural n) {
  return ITree(std::make_shared<const Head>(NatHead{n}));
}

ITree ITree::fun(Later<Endo> body) {
  return ITree(std::make_shared<const Head>(FunHead{std::move(body)}));
}

ITree ITree::fun(Endo f) { return fun(Later<Endo>::next(std::move(f))); }

ITree ITree::err(ErrorKind e) {
  return ITree(std::make_shared<const Head>(ErrHead{e}));
}

ITree ITree::tau(Later<ITree> next) {
  return ITree(std::make_shared<const Head>(TauHead{std::move(next)}));
}

ITree ITree::vis(OpId op, Payload input, Continuation k) {
  return ITree(std::make_shared<const Head>(
      VisHead{std::move(op), std::move(input), std::move(k)}));
}

ITree tick(ITree a) { return ITree::tau(Later<ITree>::next(std::move(a))); }

ITree ticks(std::size_t n, ITree a) {
  for (std::size_t i = 0; i < n; ++i) a = tick(std::move(a));
  return a;
}

std::string describe(const ITree& t) {
  std::ostringstream out;
  std::visit(
      [&](const auto& h) {
        using H = std::decay_t<decltype(h)>;
        if constexpr (std::is_same_v<H, NatHead>) {
          out << h.value;
        } else if constexpr (std::is_same_v<H, FunHead>) {
          out << "<fun>";
        } else if constexpr (std::is_same_v<H, ErrHead>) {
          out << "Err(" << to_string(h.error) << ")";
        } else if constexpr (std::is_same_v<H, TauHead>) {
          out << "Tau(...)";
        } else {
          out << "Vis(" << h.op.family << "." << h.op.name << ", "
              << to_string(shape_of(h.input)) << ")";
        }
      },
      t.head());
  return out.str();
}

}  // namespace gitrees
