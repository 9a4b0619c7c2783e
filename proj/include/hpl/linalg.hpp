#pragma once

#include <map>
#include <optional>
#include <vector>

#include "hpl/complex.hpp"

namespace hpl {

/// Rank by Gaussian elimination over Q.
std::size_t rank(const Matrix& m);

/// Rank by fraction-free (Bareiss) elimination over Z after clearing denominators.
std::size_t rank_fraction_free(const Matrix& m);

std::optional<Matrix> inverse(const Matrix& m);

/// Row and column indices of a nonsingular square submatrix of maximal size.
struct PivotSet {
  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;
};
PivotSet pivots(const Matrix& m);

/// Basis of {v : m v = 0}, as columns of the returned matrix.
Matrix nullspace(const Matrix& m);

/// Homology ranks of the z = eps = 0 part of an uncurved complex, by degree.
/// Degrees with zero homology are omitted. Throws CurvatureMismatch for w != 0.
std::map<int, int> homology_ranks(const CurvedComplex& x);

/// Basis of the closed plain (z- and eps-free) maps X -> Y of the given degree.
/// Both complexes must have plain differentials.
std::vector<GradedMap> closed_plain_maps(const CurvedComplex& x, const CurvedComplex& y, int degree);

}  // namespace hpl
