#pragma once

#include "gitrees/effects.hpp"
#include "gitrees/tree.hpp"

namespace gitrees::programs {

/// Factorial by a while loop over two heap cells (accumulator and counter).
ITree fact(const StoreOps& store, Natural n);

/// Reads k from the input tape, computes k! with fact, writes the result.
ITree fact_io(const StoreOps& store, const IoOps& io);

}  // namespace gitrees::programs
