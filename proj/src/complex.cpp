#include "hpl/complex.hpp"

namespace hpl {

namespace {

void require_differential_shape(const GradedMap& delta) {
  if (!(delta.source() == delta.target())) throw ShapeMismatch("differential must be an endomorphism");
  if (delta.degree() != 1) throw ShapeMismatch("differential must have degree 1");
}

void require_curvature_shape(const Scalar& w, const Context& ctx) {
  require_same(w.context(), ctx, "curvature");
  if (!w.is_homogeneous(2)) throw Error("curvature must be homogeneous of degree 2");
}

}  // namespace

CurvedComplex::CurvedComplex(GradedMap delta, Scalar curvature)
    : delta_(std::move(delta)), curvature_(std::move(curvature)) {
  require_differential_shape(delta_);
  require_curvature_shape(curvature_, delta_.context());
  if (!curvature_residual().is_zero())
    throw InvalidData("differential does not square to the curvature " + curvature_.to_string());
}

CurvedComplex CurvedComplex::unchecked(GradedMap delta, Scalar curvature) {
  require_differential_shape(delta);
  require_curvature_shape(curvature, delta.context());
  CurvedComplex c;
  c.delta_ = std::move(delta);
  c.curvature_ = std::move(curvature);
  return c;
}

CurvedComplex CurvedComplex::trivial(const GradedModule& m) {
  return unchecked(GradedMap::zero(m, m, 1), Scalar(m.context()));
}

GradedMap CurvedComplex::curvature_residual() const {
  return delta_ * delta_ - GradedMap::identity(module()).scaled(curvature_, 2);
}

CurvedComplex CurvedComplex::with_context(Context ctx) const {
  return unchecked(delta_.with_context(ctx), curvature_.with_context(ctx));
}

GradedMap hom_diff(const CurvedComplex& x, const CurvedComplex& y, const GradedMap& f) {
  if (!(f.source() == x.module()) || !(f.target() == y.module()))
    throw ShapeMismatch("hom_diff: map endpoints do not match the complexes");
  if (!(x.curvature() == y.curvature()))
    throw CurvatureMismatch("hom_diff: complexes have different curvature (" +
                            x.curvature().to_string() + " vs " + y.curvature().to_string() + ")");
  GradedMap out = y.delta() * f;
  if (f.degree() % 2 == 0) out -= f * x.delta();
  else out += f * x.delta();
  return out;
}

bool is_closed(const CurvedComplex& x, const CurvedComplex& y, const GradedMap& f) {
  return hom_diff(x, y, f).is_zero();
}

bool is_null_homotopic_witness(const CurvedComplex& x, const CurvedComplex& y,
                               const GradedMap& f, const GradedMap& h) {
  if (h.degree() != f.degree() - 1) throw ShapeMismatch("null-homotopy must have degree |f| - 1");
  return hom_diff(x, y, h) == f;
}

GradedMap maurer_cartan_residual(const CurvedComplex& x, const GradedMap& alpha,
                                 const Scalar& new_curvature) {
  if (!(alpha.source() == x.module()) || !(alpha.target() == x.module()) || alpha.degree() != 1)
    throw ShapeMismatch("twist must be a degree 1 endomorphism");
  require_curvature_shape(new_curvature, x.context());
  return hom_diff(x, alpha) + alpha * alpha -
         GradedMap::identity(x.module()).scaled(new_curvature - x.curvature(), 2);
}

CurvedComplex twist(const CurvedComplex& x, const GradedMap& alpha, const Scalar& new_curvature) {
  GradedMap residual = maurer_cartan_residual(x, alpha, new_curvature);
  if (!residual.is_zero())
    throw MaurerCartanError("Maurer-Cartan equation fails for twist", std::move(residual));
  return CurvedComplex::unchecked(x.delta() + alpha, new_curvature);
}

CurvedComplex suspend(const CurvedComplex& x, int n) {
  GradedMap d = x.delta().reindexed(n, n);
  if (n % 2 != 0) d = -d;
  return CurvedComplex::unchecked(std::move(d), x.curvature());
}

GradedMap shift_identity(const GradedModule& m, int shift) {
  return GradedMap::identity(m).reindexed(shift, 0);
}

DirectSum direct_sum(const std::vector<CurvedComplex>& parts) {
  if (parts.empty()) throw ShapeMismatch("direct_sum of no complexes");
  std::vector<GradedModule> modules;
  for (const auto& p : parts) {
    if (!(p.curvature() == parts.front().curvature()))
      throw CurvatureMismatch("direct_sum: summands have different curvature");
    modules.push_back(p.module());
  }
  Decomposition layout(std::move(modules));
  std::vector<GradedMap> diag;
  for (const auto& p : parts) diag.push_back(p.delta());
  DirectSum out{CurvedComplex::unchecked(block_diagonal(layout, layout, diag), parts.front().curvature()),
                layout, {}, {}};
  for (std::size_t i = 0; i < parts.size(); ++i) {
    out.injections.push_back(layout.injection(i));
    out.projections.push_back(layout.projection(i));
  }
  return out;
}

Cone cone(const CurvedComplex& x, const CurvedComplex& y, const GradedMap& f) {
  if (f.degree() != 0) throw ShapeMismatch("cone: map must have degree 0");
  if (!is_closed(x, y, f)) throw InvalidData("cone: map is not closed");
  CurvedComplex xs = suspend(x, 1);
  Decomposition layout({xs.module(), y.module()});
  GradedMap delta = assemble(layout, layout, 1,
                             {{xs.delta(), GradedMap()}, {f.reindexed(1, 0), y.delta()}});
  return Cone{CurvedComplex::unchecked(std::move(delta), x.curvature()), layout,
              layout.injection(0), layout.injection(1), layout.projection(0), layout.projection(1)};
}

Cone cone(const CurvedComplex& x, const GradedMap& alpha, const CurvedComplex& y,
          const GradedMap& beta, const GradedMap& f) {
  return cone(twist(x, alpha), twist(y, beta), f);
}

}  // namespace hpl
