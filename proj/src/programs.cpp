#include "gitrees/programs.hpp"

#include <functional>

#include "gitrees/combinators.hpp"

namespace gitrees::programs {
namespace {

ITree fact_body(const StoreOps& store, Location acc, Location counter) {
  ITree body = get_val(read_node(store, counter), [=](const ITree& i) {
    return get_val(natop(std::multiplies<Natural>{}, i, read_node(store, acc)),
                   [=](const ITree& r) {
                     return get_val(natop(monus, i, ITree::nat(1)),
                                    [=](const ITree& i2) {
                                      return seq(write_node(store, acc, r),
                                                 write_node(store, counter, i2));
                                    });
                   });
  });
  return while_loop(read_node(store, counter), body);
}

}  // namespace

ITree fact(const StoreOps& store, Natural n) {
  return alloc_node(store, ITree::nat(1), [store, n](Location acc) {
    return alloc_node(store, ITree::nat(n), [store, acc](Location counter) {
      return seq(fact_body(store, acc, counter), read_node(store, acc));
    });
  });
}

ITree fact_io(const StoreOps& store, const IoOps& io) {
  ITree computed = get_nat(input_node(io),
                           [store](Natural k) { return fact(store, k); });
  return get_nat(computed, [io](Natural r) { return output_node(io, r); });
}

}  // namespace gitrees::programs
