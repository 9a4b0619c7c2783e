#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "hpl/perturb.hpp"

namespace hpl {

/// Deterministic generator: mt19937_64 with modulo mapping, so streams are
/// identical across platforms and standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  /// Uniform in [lo, hi].
  int uniform(int lo, int hi) {
    return lo + static_cast<int>(eng_() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  bool chance(int num, int den) { return uniform(0, den - 1) < num; }

 private:
  std::mt19937_64 eng_;
};

struct Shape {
  int min_degree = -1;
  int span = 4;       // number of degrees, at most 6
  int max_rank = 4;   // per degree
  int entry = 2;      // entries drawn from [-entry, entry]
};

Matrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, int bound);
/// Invertible L D U with unit triangular L, U and diagonal D in {+-1, +-2}.
struct Automorphism {
  GradedMap phi, inverse;
};
Automorphism random_automorphism(Rng& rng, const GradedModule& m, int bound = 2);

GradedModule random_module(Rng& rng, Context ctx, const Shape& shape);
/// Random map with the given components (z^i eps^j), each entry in [-bound, bound].
GradedMap random_map(Rng& rng, const GradedModule& src, const GradedModule& tgt, int degree,
                     const std::vector<Monomial>& components, int bound = 2);
/// Every component that fits the context.
std::vector<Monomial> all_monomials(const Context& ctx);

/// Contractible complex: r_d copies of Q -> Q (identity) from degree d to d + 1.
struct Contractible {
  CurvedComplex complex;
  GradedMap contraction;
};
Contractible identity_cones(const Context& ctx, const std::map<int, int>& sizes);

/// Uncurved complex with plain differential: zero-differential homology plus
/// identity cones, in a random basis.
CurvedComplex random_complex(Rng& rng, Context ctx, const Shape& shape);

/// x ~ y where x = (y + identity cones) in a random basis, with f, g, h, k
/// perturbed by exact terms.
HEData random_he(Rng& rng, Context ctx, const Shape& shape);

/// Integer combination of a basis of closed plain maps.
GradedMap random_closed_map(Rng& rng, const CurvedComplex& x, const CurvedComplex& y, int degree);

struct FilteredInstance {
  FilteredComplex fc;
  std::vector<HEData> hes;  // X_i ~ Y_i
  IdealKind kind;
};

/// Uncurved filtered complex over a random poset with strictly triangular alpha.
FilteredInstance random_triangular_instance(Rng& rng, Context ctx, int pieces, const Shape& piece_shape);

/// Summands P_t[1], P_t over a chain, alpha = b + z h(z) conjugated by a
/// unitriangular change of basis, where b links P_t[1] to P_t by the identity
/// and h(z) is the specialized Catalan lift of the contraction of tw_b. Twist
/// curvature z; alpha lies in the sum ideal.
FilteredInstance random_curved_instance(Rng& rng, Context ctx, int pairs, const Shape& piece_shape);

/// Uncurved twist phi^{-1} delta phi - delta for phi = id + z u; alpha lies in the adic ideal.
GradedMap random_adic_twist(Rng& rng, const CurvedComplex& x);

/// Unitriangular automorphism id + (random blocks X_i -> X_j, i < j) and its inverse.
Automorphism random_unitriangular(Rng& rng, const Filtration& f, int bound = 1);

}  // namespace hpl
