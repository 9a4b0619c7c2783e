#include "hpl/homotopy.hpp"

namespace hpl {

namespace {

void require_shapes(const Equivalence& e) {
  const GradedModule& X = e.x.module();
  const GradedModule& Y = e.y.module();
  auto expect = [](const GradedMap& m, const GradedModule& s, const GradedModule& t, int deg,
                   const char* name) {
    if (!(m.source() == s) || !(m.target() == t) || m.degree() != deg)
      throw ShapeMismatch(std::string("equivalence data: ") + name + " has the wrong endpoints or degree");
  };
  expect(e.f, X, Y, 0, "f");
  expect(e.g, Y, X, 0, "g");
  expect(e.h, X, X, -1, "h");
  expect(e.k, Y, Y, -1, "k");
}

Report validate_with(const Equivalence& e, const Scalar& t, const std::string& t_name) {
  require_shapes(e);
  const auto id_x = GradedMap::identity(e.x.module());
  const auto id_y = GradedMap::identity(e.y.module());
  const auto& [x, y, f, g, h, k] = e;
  Report r;
  if (t.is_zero()) {
    r.add("d(f) = 0", hom_diff(x, y, f));
    r.add("d(g) = 0", hom_diff(y, x, g));
    r.add("d(h) = 1 - gf", hom_diff(x, h) - (id_x - g * f));
    r.add("d(k) = 1 - fg", hom_diff(y, k) - (id_y - f * g));
    return r;
  }
  r.add("d(f) = " + t_name + "(fh - kf)", hom_diff(x, y, f) - (f * h - k * f).scaled(t, 2));
  r.add("d(g) = " + t_name + "(gk - hg)", hom_diff(y, x, g) - (g * k - h * g).scaled(t, 2));
  r.add("d(h) = 1 - gf - " + t_name + " h^2",
        hom_diff(x, h) - (id_x - g * f - (h * h).scaled(t, 2)));
  r.add("d(k) = 1 - fg - " + t_name + " k^2",
        hom_diff(y, k) - (id_y - f * g - (k * k).scaled(t, 2)));
  return r;
}

void add_eps_free_checks(Report& r, const Equivalence& e) {
  r.add("f is eps-free", e.f - e.f.eps_truncated(1));
  r.add("g is eps-free", e.g - e.g.eps_truncated(1));
  r.add("h is eps-free", e.h - e.h.eps_truncated(1));
  r.add("k is eps-free", e.k - e.k.eps_truncated(1));
}

}  // namespace

Report validate_equations(const Equivalence& e, const Scalar& t) {
  return validate_with(e, t, t.to_string());
}

Report validate_he(const HEData& he) {
  Report r = validate_with(he, Scalar(he.context()), "0");
  add_eps_free_checks(r, he);
  return r;
}

Report validate_zhe(const ZHEData& zhe) {
  if (zhe.z.has_eps() || !zhe.z.is_homogeneous(2))
    throw Error("z-homotopy parameter must be an eps-free degree 2 scalar");
  Report r = validate_with(zhe, zhe.z, "z");
  add_eps_free_checks(r, zhe);
  return r;
}

Report validate_she(const SHEData& she) {
  return validate_with(she, Scalar::eps(she.context()), "eps");
}

HEData identity_he(const CurvedComplex& x) {
  const auto& m = x.module();
  return HEData{{x, x, GradedMap::identity(m), GradedMap::identity(m), GradedMap::zero(m, m, -1),
                 GradedMap::zero(m, m, -1)}};
}

HEData compose(const HEData& first, const HEData& second) {
  if (!(first.y == second.x)) throw ShapeMismatch("compose: equivalences do not meet");
  const auto& [x1, y1, f1, g1, h1, k1] = first;
  const auto& [x2, y2, f2, g2, h2, k2] = second;
  return HEData{{x1, y2, f2 * f1, g1 * g2, h1 + g1 * h2 * f1, k2 + f2 * k1 * g2}};
}

namespace {

template <class E>
E sum_equivalences(const std::vector<E>& parts) {
  if (parts.empty()) throw ShapeMismatch("direct sum of no equivalences");
  std::vector<CurvedComplex> xs, ys;
  std::vector<GradedMap> fs, gs, hs, ks;
  for (const auto& p : parts) {
    xs.push_back(p.x);
    ys.push_back(p.y);
    fs.push_back(p.f);
    gs.push_back(p.g);
    hs.push_back(p.h);
    ks.push_back(p.k);
  }
  DirectSum sx = direct_sum(xs);
  DirectSum sy = direct_sum(ys);
  E out;
  out.x = sx.complex;
  out.y = sy.complex;
  out.f = block_diagonal(sy.layout, sx.layout, fs);
  out.g = block_diagonal(sx.layout, sy.layout, gs);
  out.h = block_diagonal(sx.layout, sx.layout, hs);
  out.k = block_diagonal(sy.layout, sy.layout, ks);
  return out;
}

}  // namespace

HEData direct_sum(const std::vector<HEData>& parts) { return sum_equivalences(parts); }
SHEData direct_sum(const std::vector<SHEData>& parts) { return sum_equivalences(parts); }

HEData suspend(const HEData& he, int n) {
  const Rational sign = (n % 2 == 0) ? 1 : -1;
  return HEData{{suspend(he.x, n), suspend(he.y, n), he.f.reindexed(n, n), he.g.reindexed(n, n),
                 sign * he.h.reindexed(n, n), sign * he.k.reindexed(n, n)}};
}

HEData at_eps_zero(const SHEData& she) {
  return HEData{{she.x, she.y, she.f.eps_truncated(1), she.g.eps_truncated(1), she.h.eps_truncated(1),
                 she.k.eps_truncated(1)}};
}

Equivalence with_context(const Equivalence& e, Context ctx) {
  return Equivalence{e.x.with_context(ctx), e.y.with_context(ctx), e.f.with_context(ctx),
                     e.g.with_context(ctx), e.h.with_context(ctx), e.k.with_context(ctx)};
}

ConeContraction cone_contraction_from_he(const HEData& he) {
  Report r = validate_he(he);
  if (!r.ok()) throw InvalidData("cone_contraction_from_he: input is not a homotopy equivalence (" +
                                 r.failures() + ")");
  const auto& [x, y, f, g, h, k] = he;
  const GradedMap defect = f * h - k * f;
  GradedMap h_corr = h - g * defect;
  GradedMap m = k * defect;
  Cone c = cone(x, y, f);
  GradedMap H = assemble(c.layout, c.layout, -1,
                         {{(-h_corr).reindexed(1, 1), g.reindexed(0, 1)}, {m.reindexed(1, 0), k}});
  if (!(hom_diff(c.complex, H) == GradedMap::identity(c.complex.module())))
    throw Error("cone_contraction_from_he: internal check failed");
  return ConeContraction{std::move(c), std::move(H), std::move(h_corr), std::move(m)};
}

HEData he_from_cone_contraction(const CurvedComplex& x, const CurvedComplex& y, const GradedMap& f0,
                                const GradedMap& contraction) {
  Cone c = cone(x, y, f0);
  if (!(contraction.source() == c.complex.module()) || !(contraction.target() == c.complex.module()) ||
      contraction.degree() != -1)
    throw ShapeMismatch("contraction must be a degree -1 endomorphism of the cone");
  if (!(hom_diff(c.complex, contraction) == GradedMap::identity(c.complex.module())))
    throw InvalidData("he_from_cone_contraction: not a contraction of the cone");
  const auto& L = c.layout;
  GradedMap h = -block(contraction, L, 0, L, 0).reindexed(-1, -1);
  GradedMap g = block(contraction, L, 0, L, 1).reindexed(0, -1);
  GradedMap k = block(contraction, L, 1, L, 1);
  return HEData{{x, y, f0, std::move(g), std::move(h), std::move(k)}};
}

std::vector<mpz_class> catalan_numbers(int n) {
  std::vector<mpz_class> out;
  for (int k = 0; k < n; ++k) out.push_back(binomial(2 * k, k) / (k + 1));
  return out;
}

GradedMap catalan_lift(const CurvedComplex& x, const GradedMap& h0) {
  if (!(h0.source() == x.module()) || !(h0.target() == x.module()) || h0.degree() != -1)
    throw ShapeMismatch("catalan_lift: h0 must be a degree -1 endomorphism");
  if (h0.has_eps()) throw InvalidData("catalan_lift: h0 must be eps-free");
  if (!(hom_diff(x, h0) == GradedMap::identity(x.module())))
    throw InvalidData("catalan_lift: h0 is not a contraction");
  const int n = x.context().eps_order;
  const auto catalan = catalan_numbers(n);
  const GradedMap h0_sq = h0 * h0;
  GradedMap power = h0;
  GradedMap out = GradedMap::zero(x.module(), x.module(), -1);
  for (int k = 0; k < n; ++k) {
    if (power.is_zero()) break;
    Rational c(catalan[k]);
    if (k % 2) c = -c;
    out += c * power.times({0, k});
    power = power * h0_sq;
  }
  return out;
}

GradedMap strong_contraction_residual(const CurvedComplex& x, const GradedMap& h, const Scalar& t) {
  return hom_diff(x, h) + (h * h).scaled(t, 2) - GradedMap::identity(x.module());
}

SHEData she_from_cone_strong_contraction(const CurvedComplex& x, const CurvedComplex& y,
                                         const GradedMap& f0, const GradedMap& contraction) {
  if (f0.has_eps()) throw InvalidData("she_from_cone_strong_contraction: f0 must be eps-free");
  Cone c = cone(x, y, f0);
  if (!(contraction.source() == c.complex.module()) || !(contraction.target() == c.complex.module()) ||
      contraction.degree() != -1)
    throw ShapeMismatch("contraction must be a degree -1 endomorphism of the cone");
  if (!strong_contraction_residual(c.complex, contraction, Scalar::eps(x.context())).is_zero())
    throw InvalidData("she_from_cone_strong_contraction: not a strong contraction of the cone");
  const auto& L = c.layout;
  GradedMap h = -block(contraction, L, 0, L, 0).reindexed(-1, -1);
  GradedMap g = block(contraction, L, 0, L, 1).reindexed(0, -1);
  GradedMap corr = block(contraction, L, 1, L, 0).reindexed(-1, 0);
  GradedMap k = block(contraction, L, 1, L, 1);
  return SHEData{{x, y, f0 + corr.times({0, 1}), std::move(g), std::move(h), std::move(k)}};
}

Promotion promote_he_to_she(const HEData& he, int eps_order) {
  Context ctx{he.context().z_order, eps_order};
  require_valid(ctx);
  HEData lifted{with_context(he, ctx)};
  ConeContraction cc = cone_contraction_from_he(lifted);
  GradedMap strong = catalan_lift(cc.cone.complex, cc.contraction);
  SHEData she = she_from_cone_strong_contraction(lifted.x, lifted.y, lifted.f, strong);
  return Promotion{std::move(she), std::move(cc.h_corrected), std::move(cc.m)};
}

ZHEData specialize_she(const SHEData& she, const Scalar& s) {
  const Context& ctx = she.context();
  if (!s.is_zero() && ctx.eps_order < ctx.z_order)
    throw TruncationError("specialize_she: eps order " + std::to_string(ctx.eps_order) +
                          " is below z order " + std::to_string(ctx.z_order));
  ZHEData out;
  out.x = she.x;
  out.y = she.y;
  out.f = she.f.specialize_eps(s);
  out.g = she.g.specialize_eps(s);
  out.h = she.h.specialize_eps(s);
  out.k = she.k.specialize_eps(s);
  out.z = s;
  return out;
}

ZHEData specialize_she(const SHEData& she) { return specialize_she(she, Scalar::z(she.context())); }

}  // namespace hpl
