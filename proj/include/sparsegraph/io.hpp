#pragma once

#include <string>

#include "sparsegraph/branching.hpp"
#include "sparsegraph/kernel.hpp"
#include "sparsegraph/local.hpp"
#include "sparsegraph/unimodular.hpp"

namespace sg {

// Kernel files: {"mu": ["p/q", ...], "kappa": [["p/q", ...], ...]} with an
// optional "names" array.  Entries may be "p/q" strings or integers (kept
// exact) or floating-point numbers (kernel marked inexact).
std::string kernel_to_json(const FiniteKernel& k);
FiniteKernel kernel_from_json(const std::string& text);

// {"t": int, "entries": [{"tree": code, "p": float}], "truncated": float}
std::string tree_law_to_json(const TreeLaw& law);

// {"support": [{"qt_matrix": [[..]], "root_type": i} | {"tree": code}],
//  "weights": ["p/q", ...]}
std::string support_law_to_json(const FiniteSupportLaw& law);

// {"t": int, "n": int, "entries": [{"ball": code, "count": int, "p": float}]}
std::string neighbourhood_law_to_json(const NeighbourhoodLaw& law);

}  // namespace sg
