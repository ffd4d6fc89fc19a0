#include "gitrees/effects.hpp"

#include <algorithm>

namespace gitrees {

const OpSpec* Signature::find(std::string_view op) const {
  auto it = std::find_if(ops.begin(), ops.end(),
                         [&](const OpSpec& s) { return s.name == op; });
  return it == ops.end() ? nullptr : &*it;
}

Signature io_signature() {
  return {"io",
          {{"input", PayloadShape::Unit, PayloadShape::Num},
           {"output", PayloadShape::Num, PayloadShape::Unit}}};
}

Signature store_signature() {
  return {"store",
          {{"alloc", PayloadShape::Tree, PayloadShape::Loc},
           {"read", PayloadShape::Loc, PayloadShape::Tree},
           {"write", PayloadShape::LocTree, PayloadShape::Unit},
           {"dealloc", PayloadShape::Loc, PayloadShape::Unit}}};
}

OpTable embed_signature(const Signature& local,
                        const std::vector<Signature>& global) {
  for (std::size_t i = 0; i < global.size(); ++i) {
    if (global[i].family != local.family) continue;
    OpTable table;
    for (const OpSpec& op : local.ops) {
      const OpSpec* there = global[i].find(op.name);
      if (!there || there->input != op.input || there->output != op.output) {
        throw ConfigError("family '" + local.family + "' at index " +
                          std::to_string(i) + " does not declare op '" +
                          op.name + "' with matching shapes");
      }
      table.emplace(op.name, OpId{i, op.name});
    }
    return table;
  }
  throw ConfigError("effect family '" + local.family +
                    "' is not part of the ambient signature");
}

IoOps IoOps::embed(const std::vector<Signature>& global) {
  OpTable t = embed_signature(io_signature(), global);
  return {t.at("input"), t.at("output")};
}

StoreOps StoreOps::embed(const std::vector<Signature>& global) {
  OpTable t = embed_signature(store_signature(), global);
  return {t.at("alloc"), t.at("read"), t.at("write"), t.at("dealloc")};
}

namespace {

std::optional<Later<ITree>> unit_to_zero(const Payload& y) {
  if (!std::holds_alternative<UnitPayload>(y)) return std::nullopt;
  return Later<ITree>::next(ITree::nat(0));
}

}  // namespace

ITree input_node(const IoOps& ops) {
  return ITree::vis(ops.input, UnitPayload{},
                    [](const Payload& y) -> std::optional<Later<ITree>> {
                      const auto* n = std::get_if<NumPayload>(&y);
                      if (!n) return std::nullopt;
                      return Later<ITree>::next(ITree::nat(n->value));
                    });
}

ITree output_node(const IoOps& ops, Natural n) {
  return ITree::vis(ops.output, NumPayload{n}, unit_to_zero);
}

ITree alloc_node(const StoreOps& ops, const ITree& init,
                 std::function<ITree(Location)> k) {
  return ITree::vis(ops.alloc, TreePayload{Later<ITree>::next(init)},
                    [k = std::move(k)](const Payload& y)
                        -> std::optional<Later<ITree>> {
                      const auto* l = std::get_if<LocPayload>(&y);
                      if (!l) return std::nullopt;
                      Location loc = l->loc;
                      return Later<ITree>([k, loc] { return k(loc); });
                    });
}

ITree read_node(const StoreOps& ops, Location loc) {
  return ITree::vis(ops.read, LocPayload{loc},
                    [](const Payload& y) -> std::optional<Later<ITree>> {
                      const auto* t = std::get_if<TreePayload>(&y);
                      if (!t) return std::nullopt;
                      return t->tree;
                    });
}

ITree write_node(const StoreOps& ops, Location loc, const ITree& value) {
  return ITree::vis(ops.write,
                    LocTreePayload{loc, Later<ITree>::next(value)},
                    unit_to_zero);
}

ITree dealloc_node(const StoreOps& ops, Location loc) {
  return ITree::vis(ops.dealloc, LocPayload{loc}, unit_to_zero);
}

}  // namespace gitrees
