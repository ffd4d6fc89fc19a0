#pragma once

#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "gitrees/tree.hpp"

namespace gitrees {

struct OpSpec {
  std::string name;
  PayloadShape input;
  PayloadShape output;
};

/// A family of effect operations with their declared payload shapes.
struct Signature {
  std::string family;
  std::vector<OpSpec> ops;

  const OpSpec* find(std::string_view op) const;
};

Signature io_signature();
Signature store_signature();

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Translation of a family's local op names into global op ids.
using OpTable = std::map<std::string, OpId, std::less<>>;

/// Locates `local` (by family name) in the ambient signature list and maps
/// each of its ops to (family index, name). Throws ConfigError if absent.
OpTable embed_signature(const Signature& local,
                        const std::vector<Signature>& global);

/// Global ids of the I/O ops inside some ambient signature.
struct IoOps {
  OpId input;
  OpId output;

  static IoOps embed(const std::vector<Signature>& global);
};

/// Global ids of the store ops inside some ambient signature.
struct StoreOps {
  OpId alloc;
  OpId read;
  OpId write;
  OpId dealloc;

  static StoreOps embed(const std::vector<Signature>& global);
};

// Smart constructors. Payload shapes follow io_signature()/store_signature().

/// INPUT: reads one natural from the input tape.
ITree input_node(const IoOps& ops);
/// OUTPUT(n): writes n, then returns the dummy value Nat(0).
ITree output_node(const IoOps& ops, Natural n);

ITree alloc_node(const StoreOps& ops, const ITree& init,
                 std::function<ITree(Location)> k);
ITree read_node(const StoreOps& ops, Location loc);
ITree write_node(const StoreOps& ops, Location loc, const ITree& value);
ITree dealloc_node(const StoreOps& ops, Location loc);

}  // namespace gitrees
