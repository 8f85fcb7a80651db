#pragma once

#include <string>

#include "cocyclelab/cocycle.hpp"

namespace cocyclelab {

// Structured-text cocycle description:
//
//   [sft]
//   size = 2
//   row = 1 1
//   row = 1 1
//
//   [cocycle]
//   kind = locally-constant      # or: builtin
//   window = -1 1                # locally-constant only
//   alpha = 0.5
//   01 = 1.0 0.0 0.0 1.0         # word -> row-major SL2 entries
//
//   [builtin]                    # builtin only
//   name = diag-rotation-s4
//   k0 = 13                      # optional cutoff override
//
// Symbols are the digits 0..size-1 (size <= 10 in files); '#' comments.
// Unknown keys are rejected; matrices are validated SL2 within 1e-9.
CocycleSpec parse_spec_text(const std::string& text);
CocycleSpec parse_spec_file(const std::string& path);

// Canonical re-emission; re-parsing yields an equal spec.
std::string emit_spec_text(const CocycleSpec& spec);

std::string spec_digest(const std::string& text);  // FNV-1a 64, hex

}  // namespace cocyclelab
