#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace gitrees {

/// Naturals of the object languages. Arithmetic wraps modulo 2^64;
/// subtraction is truncated at zero.
using Natural = std::uint64_t;

class ITree;

/// A pure deferred computation standing in for the later modality.
///
/// Forcing runs the producer every time; nothing is memoized, so a
/// suspension can be forced repeatedly with interchangeable results.
/// Equality is identity of the underlying producer, which is what the
/// reifier locality checks need ("the same cell, untouched").
template <class T>
class Later {
 public:
  using Producer = std::function<T()>;

  explicit Later(Producer produce)
      : produce_(std::make_shared<const Producer>(std::move(produce))) {}

  /// Next: suspend an already-computed value.
  static Later next(T value) {
    return Later([value = std::move(value)] { return value; });
  }

  T force() const { return (*produce_)(); }

  friend bool operator==(const Later& a, const Later& b) {
    return a.produce_ == b.produce_;
  }

 private:
  std::shared_ptr<const Producer> produce_;
};

using Endo = std::function<ITree(const ITree&)>;

enum class ErrorKind : std::uint8_t {
  RunTime,  // generic run-time error; always present
  Lin,      // a protected thunk was forced twice
};

std::string_view to_string(ErrorKind e);
std::optional<ErrorKind> parse_error_kind(std::string_view name);

struct Location {
  Natural index = 0;

  friend auto operator<=>(const Location&, const Location&) = default;
};

/// Section-retraction pair between locations and naturals.
inline Natural to_nat(Location l) { return l.index; }
inline Location from_nat(Natural n) { return Location{n}; }

// Payload universe: the inputs and outputs that effect operations exchange.
struct UnitPayload {
  friend bool operator==(const UnitPayload&, const UnitPayload&) = default;
};
struct NumPayload {
  Natural value = 0;
  friend bool operator==(const NumPayload&, const NumPayload&) = default;
};
struct LocPayload {
  Location loc;
  friend bool operator==(const LocPayload&, const LocPayload&) = default;
};
struct TreePayload {
  Later<ITree> tree;
  friend bool operator==(const TreePayload&, const TreePayload&) = default;
};
struct LocTreePayload {
  Location loc;
  Later<ITree> tree;
  friend bool operator==(const LocTreePayload&, const LocTreePayload&) = default;
};

using Payload =
    std::variant<UnitPayload, NumPayload, LocPayload, TreePayload, LocTreePayload>;

enum class PayloadShape : std::uint8_t { Unit, Num, Loc, Tree, LocTree };

PayloadShape shape_of(const Payload& p);
std::string_view to_string(PayloadShape s);

/// Global operation id: reifier family index plus the op's local name.
struct OpId {
  std::size_t family = 0;
  std::string name;

  friend bool operator==(const OpId&, const OpId&) = default;
  friend auto operator<=>(const OpId&, const OpId&) = default;
};

/// Continuation of an effect node. Returns nullopt when handed an output
/// of the wrong shape; the reduction engine reports that as stuck.
using Continuation = std::function<std::optional<Later<ITree>>(const Payload&)>;

struct NatHead {
  Natural value;
};
struct FunHead {
  Later<Endo> body;
};
struct ErrHead {
  ErrorKind error;
};
struct TauHead {
  Later<ITree> next;
};
struct VisHead {
  OpId op;
  Payload input;
  Continuation k;
};

using Head = std::variant<NatHead, FunHead, ErrHead, TauHead, VisHead>;

enum class HeadKind : std::uint8_t { Nat, Fun, Err, Tau, Vis };

std::string_view to_string(HeadKind k);

/// Guarded interaction tree. An immutable handle to one constructor whose
/// recursive positions are suspensions.
class ITree {
 public:
  static ITree nat(Natural n);
  static ITree fun(Later<Endo> body);
  /// Fun(Next(f)).
  static ITree fun(Endo f);
  static ITree err(ErrorKind e);
  static ITree tau(Later<ITree> next);
  static ITree vis(OpId op, Payload input, Continuation k);

  const Head& head() const { return *head_; }
  HeadKind kind() const { return static_cast<HeadKind>(head_->index()); }

  template <class H>
  const H* get_if() const {
    return std::get_if<H>(head_.get());
  }

  bool is_value() const {
    return kind() == HeadKind::Nat || kind() == HeadKind::Fun;
  }

 private:
  explicit ITree(std::shared_ptr<const Head> head) : head_(std::move(head)) {}

  std::shared_ptr<const Head> head_;
};

/// Tick(a) = Tau(Next(a)): one silent step to a.
ITree tick(ITree a);

/// n nested ticks.
ITree ticks(std::size_t n, ITree a);

/// Short human-readable rendering of the head (sub-suspensions are not
/// forced).
std::string describe(const ITree& t);

}  // namespace gitrees
