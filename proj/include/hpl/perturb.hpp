#pragma once

#include <optional>
#include <vector>

#include "hpl/homotopy.hpp"
#include "hpl/ideal.hpp"

namespace hpl {

/// Summands X_i over a poset with a perturbation alpha of their direct sum.
/// The twisted complex tw_alpha(+X_i) has curvature w + twist_curvature, where
/// w is the common curvature of the summands.
struct FilteredComplex {
  Poset poset;
  std::vector<CurvedComplex> summands;
  GradedMap alpha;
  Scalar twist_curvature{Context{}};

  const Context& context() const { return summands.at(0).context(); }
  Decomposition layout() const;
  Filtration filtration() const;
  /// Direct sum with block-diagonal differential.
  CurvedComplex base() const;
  /// Twisted total complex; throws MaurerCartanError when alpha is not MC.
  CurvedComplex total() const;
};

/// MC residual of alpha plus the part of alpha outside the ideal of the given kind.
Report validate_filtered(const FilteredComplex& fc, IdealKind kind);

/// Contraction h0 (1 + alpha h0)^{-1} of tw_alpha(X), given a contraction h0 of X.
GradedMap perturb_contraction(const CurvedComplex& x, const GradedMap& h0, const GradedMap& alpha,
                              const IdealSpec& ideal, int cap = 64);
/// The same contraction written (1 + h0 alpha)^{-1} h0.
GradedMap perturb_contraction_alt(const CurvedComplex& x, const GradedMap& h0, const GradedMap& alpha,
                                  const IdealSpec& ideal, int cap = 64);

/// Transfer along a z-homotopy equivalence: source = (X, alpha, w + z), target = (Y, beta, w + z).
struct ZHEPerturbation {
  CurvedComplex source;
  CurvedComplex target;
  GradedMap beta, F, G, H;
  Report report;
};

ZHEPerturbation perturb_zhe(const ZHEData& zhe, const GradedMap& alpha, const IdealSpec& ideal,
                            int cap = 64);

struct PerturbOptions {
  int cap = 64;
  /// Output eps order; defaults to the largest order the input supports.
  std::optional<int> eps_order;
};

/// Output of the curved perturbation: she.x = tw_alpha(X), she.y = tw_beta(Y),
/// she.f..k = F, G, H, K.
struct SHEPerturbation {
  SHEData she;
  GradedMap beta;
  Report report;
};

/// eps order an input strong equivalence needs for an output of order `out`.
int required_input_eps_order(const Context& ctx, bool curved, int out);

/// Curved perturbation with twist curvature s (eps-free, degree 2): alpha must
/// satisfy d(alpha) + alpha^2 = s. Computes with eps -> s + eps substituted.
SHEPerturbation curved_perturb(const SHEData& she, const GradedMap& alpha, const Scalar& s,
                               const IdealSpec& ideal, const PerturbOptions& opts = {});
/// Curvature zero case.
SHEPerturbation markl_perturb(const SHEData& she, const GradedMap& alpha, const IdealSpec& ideal,
                              const PerturbOptions& opts = {});

/// Transfer of a plain homotopy equivalence: he.x = tw_alpha(X), he.y = tw_beta(Y).
struct HEPerturbation {
  HEData he;
  GradedMap beta;
  Report report;
};

/// F0 = f0 (1 + alpha h0)^{-1}, G0 = (1 + h0 alpha)^{-1} g0, H0 = h0 (1 + alpha h0)^{-1},
/// beta = f0 alpha (1 + h0 alpha)^{-1} g0, and a K0 completing the equivalence.
HEPerturbation simple_perturb(const HEData& he, const GradedMap& alpha, const IdealSpec& ideal,
                              int cap = 64);

struct PosetReduction {
  FilteredComplex reduced;
  HEData he;  // tw(X) ~ tw(Y)
  Report report;
};

/// Replaces each X_i by Y_i along hes[i]. `kind` is triangular or sum.
PosetReduction poset_reduce(const FilteredComplex& fc, const std::vector<HEData>& hes,
                            IdealKind kind = IdealKind::triangular, int cap = 64);

}  // namespace hpl
