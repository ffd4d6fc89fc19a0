#pragma once

#include <memory>
#include <optional>
#include <variant>

#include "gitrees/aff_lang.hpp"
#include "gitrees/io_lang.hpp"

namespace gitrees::interop {

/// Derivation of io_side ~ aff_side.
struct Conversion {
  struct NatNat {};
  struct NatUnit {};
  struct NatBool {};
  /// (nat -> arg.io_side) -> res.io_side  ~  arg.aff_side -o res.aff_side
  struct Fun {
    std::shared_ptr<const Conversion> arg;
    std::shared_ptr<const Conversion> res;
  };
  using Shape = std::variant<NatNat, NatUnit, NatBool, Fun>;

  Shape shape;
  io::Type io_side;
  aff::Type aff_side;
};

/// Syntax-directed conversion check; the derivation is unique when it exists.
std::optional<Conversion> conv_check(const io::Type& io_type,
                                     const aff::Type& aff_type);

/// Glue from iolang representation to afflang representation.
ITree to_aff(const Conversion& c, const ITree& a, const aff::Ambient& ambient);

/// Glue from afflang representation to iolang representation. Converted
/// affine functions are protected so that a second call is Err(Lin).
ITree from_aff(const Conversion& c, const ITree& a, const aff::Ambient& ambient);

/// Typing for the combined language: afflang plus typed embeddings of
/// closed iolang terms.
std::optional<aff::Derivation> typecheck_comb(const aff::Context& ctx,
                                              const aff::Expr& e);

/// Denotation of a combined-language derivation; embedded terms are
/// interpreted by the iolang denotation and wrapped in to_aff.
ITree denote_comb(const aff::Derivation& d, const aff::Env& env,
                  const aff::Ambient& ambient);

}  // namespace gitrees::interop
