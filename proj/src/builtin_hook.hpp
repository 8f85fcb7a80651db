#pragma once

// Internal seam between the cocycle engine and the counterexample gallery:
// the engine dispatches built-in evaluation here, the gallery implements it.

#include "cocyclelab/cocycle.hpp"

namespace cocyclelab::detail {

Mat2 builtin_evaluate_at(const BuiltinRef& ref, const SymbolSequence& x, long long pos);

// Resolves a zero (unset) cutoff to the computed standard value.
int builtin_effective_k0(const BuiltinRef& ref);

}  // namespace cocyclelab::detail
