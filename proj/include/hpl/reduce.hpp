#pragma once

#include <map>

#include "hpl/perturb.hpp"

namespace hpl {

/// Minimal model of an uncurved complex with a plain differential, with the
/// equivalence x ~ reduced.
struct Reduction {
  CurvedComplex reduced;
  HEData he;
  Report report;
  int passes = 0;  // degrees where a pivot block was cancelled
};

/// Cancels a maximal invertible block of the degree k differential for each k in
/// turn. Each pass filters x along degree into a chain with the pivot block as a
/// contractible two-term summand and runs poset_reduce.
Reduction reduce_complex(const CurvedComplex& x, int cap = 64);

}  // namespace hpl
