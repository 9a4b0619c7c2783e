#pragma once

#include <vector>

#include "hpl/graded.hpp"

namespace hpl {

/// Graded free module with a degree 1 differential squaring to a central
/// curvature: delta o delta = curvature * id. Curvature 0 is an ordinary complex.
class CurvedComplex {
 public:
  CurvedComplex() = default;
  /// Validates delta^2 = curvature * id; throws InvalidData otherwise.
  CurvedComplex(GradedMap delta, Scalar curvature);

  /// Skips validation. For intermediate objects whose invariant is checked later.
  static CurvedComplex unchecked(GradedMap delta, Scalar curvature);
  /// Zero differential, zero curvature.
  static CurvedComplex trivial(const GradedModule& m);

  const GradedModule& module() const { return delta_.source(); }
  const GradedMap& delta() const { return delta_; }
  const Scalar& curvature() const { return curvature_; }
  const Context& context() const { return delta_.context(); }

  /// delta^2 - curvature * id; zero exactly when the invariant holds.
  GradedMap curvature_residual() const;

  CurvedComplex with_context(Context ctx) const;

  friend bool operator==(const CurvedComplex&, const CurvedComplex&) = default;

 private:
  GradedMap delta_;
  Scalar curvature_{Context{}};
};

/// Supercommutator delta_Y f - (-1)^|f| f delta_X. Requires equal curvatures.
GradedMap hom_diff(const CurvedComplex& x, const CurvedComplex& y, const GradedMap& f);
inline GradedMap hom_diff(const CurvedComplex& x, const GradedMap& f) { return hom_diff(x, x, f); }

bool is_closed(const CurvedComplex& x, const CurvedComplex& y, const GradedMap& f);
/// True when hom_diff(h) = f. Throws ShapeMismatch unless |h| = |f| - 1.
bool is_null_homotopic_witness(const CurvedComplex& x, const CurvedComplex& y,
                               const GradedMap& f, const GradedMap& h);

/// hom_diff(alpha) + alpha^2 - (new_curvature - curvature) * id.
GradedMap maurer_cartan_residual(const CurvedComplex& x, const GradedMap& alpha,
                                 const Scalar& new_curvature);

/// Thrown by `twist` with the offending residual attached.
class MaurerCartanError : public InvalidData {
 public:
  MaurerCartanError(const std::string& what, GradedMap residual)
      : InvalidData(what), residual_(std::move(residual)) {}
  const GradedMap& residual() const { return residual_; }

 private:
  GradedMap residual_;
};

/// (X.module, delta + alpha, new_curvature), validated.
CurvedComplex twist(const CurvedComplex& x, const GradedMap& alpha, const Scalar& new_curvature);
/// Twist keeping the curvature of x.
inline CurvedComplex twist(const CurvedComplex& x, const GradedMap& alpha) {
  return twist(x, alpha, x.curvature());
}

/// X[n]: degrees shift down by n and the differential picks up (-1)^n.
CurvedComplex suspend(const CurvedComplex& x, int n);

/// Degree-|shift| identity theta: X[shift] -> X, closed when the sign rule holds.
GradedMap shift_identity(const GradedModule& m, int shift);

struct DirectSum {
  CurvedComplex complex;
  Decomposition layout;
  std::vector<GradedMap> injections;
  std::vector<GradedMap> projections;
};

DirectSum direct_sum(const std::vector<CurvedComplex>& parts);

struct Cone {
  CurvedComplex complex;
  Decomposition layout;  // part 0 = X[1], part 1 = Y
  GradedMap inject_x, inject_y, project_x, project_y;
};

/// Cone of a closed degree 0 map f: X -> Y: differential [[-d_X, 0], [f, d_Y]] on X[1] + Y.
Cone cone(const CurvedComplex& x, const CurvedComplex& y, const GradedMap& f);
/// Cone of f: tw_alpha(X) -> tw_beta(Y).
Cone cone(const CurvedComplex& x, const GradedMap& alpha, const CurvedComplex& y,
          const GradedMap& beta, const GradedMap& f);

}  // namespace hpl
