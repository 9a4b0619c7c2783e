#pragma once

#include <vector>

#include "hpl/complex.hpp"
#include "hpl/report.hpp"

namespace hpl {

/// Maps f: X -> Y, g: Y -> X of degree 0 and homotopies h on X, k on Y of
/// degree -1, together with the complexes they live between.
struct Equivalence {
  CurvedComplex x;
  CurvedComplex y;
  GradedMap f, g, h, k;

  const Context& context() const { return x.context(); }
};

/// Ordinary homotopy equivalence: d f = d g = 0, d h = 1 - gf, d k = 1 - fg.
/// Maps are eps-free; z-components are allowed.
struct HEData : Equivalence {};

/// Strong homotopy equivalence: eps-series satisfying
/// d f = eps(fh - kf), d g = eps(gk - hg), d h = 1 - gf - eps h^2, d k = 1 - fg - eps k^2.
struct SHEData : Equivalence {};

/// Same equations with eps replaced by a central degree 2 scalar `z`.
struct ZHEData : Equivalence {
  Scalar z{Context{}};
};

/// Checks the four defining equations with parameter t (0, z or eps).
Report validate_equations(const Equivalence& e, const Scalar& t);
Report validate_he(const HEData& he);
Report validate_zhe(const ZHEData& zhe);
Report validate_she(const SHEData& she);

HEData identity_he(const CurvedComplex& x);
/// The same data read as Y ~ X.
template <class E>
E reversed(const E& e) {
  E out = e;
  out.x = e.y;
  out.y = e.x;
  out.f = e.g;
  out.g = e.f;
  out.h = e.k;
  out.k = e.h;
  return out;
}
/// X ~ Y then Y ~ W gives X ~ W.
HEData compose(const HEData& first, const HEData& second);
/// Block-diagonal equivalence between direct sums, in the order given.
HEData direct_sum(const std::vector<HEData>& parts);
SHEData direct_sum(const std::vector<SHEData>& parts);
/// X[n] ~ Y[n]: same f, g; homotopies pick up (-1)^n.
HEData suspend(const HEData& he, int n);
/// eps = 0 part of a strong equivalence.
HEData at_eps_zero(const SHEData& she);
Equivalence with_context(const Equivalence& e, Context ctx);

/// Null-homotopy of Cone(f0) built from homotopy equivalence data, with the
/// homotopy on X corrected so that the off-diagonal block m satisfies
/// d m = f h' - k f.
struct ConeContraction {
  Cone cone;
  GradedMap contraction;   // [[-h', g], [m, k]] on X[1] + Y
  GradedMap h_corrected;   // h' = h - g(fh - kf)
  GradedMap m;             // k(fh - kf)
};

ConeContraction cone_contraction_from_he(const HEData& he);
/// Reads (f0, g, h, k) off the blocks [[-h, g], [m, k]] of a contraction of Cone(f0).
HEData he_from_cone_contraction(const CurvedComplex& x, const CurvedComplex& y,
                                const GradedMap& f0, const GradedMap& contraction);

/// C_0..C_{n-1}, from the closed form binomial(2k, k) / (k + 1).
std::vector<mpz_class> catalan_numbers(int n);

/// Strong contraction sum_k (-1)^k C_k eps^k h0^{2k+1}, up to the context's eps order.
GradedMap catalan_lift(const CurvedComplex& x, const GradedMap& h0);

/// d(h) + t h^2 - id.
GradedMap strong_contraction_residual(const CurvedComplex& x, const GradedMap& h, const Scalar& t);

/// Blocks of a strong contraction [[-h, g], [c, k]] of Cone(f0) give the strong
/// equivalence (f0 + eps c, g, h, k).
SHEData she_from_cone_strong_contraction(const CurvedComplex& x, const CurvedComplex& y,
                                         const GradedMap& f0, const GradedMap& contraction);

struct Promotion {
  SHEData she;
  GradedMap h_corrected;
  GradedMap m;
};

/// Lifts an HE to an SHE valid modulo eps^eps_order. The eps = 0 part of the
/// result is (f0, g0, h_corrected, k0).
Promotion promote_he_to_she(const HEData& he, int eps_order);

/// eps -> s (default z). Needs eps_order >= z_order so that no term is lost.
ZHEData specialize_she(const SHEData& she, const Scalar& s);
ZHEData specialize_she(const SHEData& she);

}  // namespace hpl
