#include "hpl/random.hpp"

#include <algorithm>

#include "hpl/errors.hpp"
#include "hpl/linalg.hpp"

namespace hpl {

Matrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, int bound) {
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rng.uniform(-bound, bound);
  return m;
}

Automorphism random_automorphism(Rng& rng, const GradedModule& m, int bound) {
  Automorphism out{GradedMap(m, m, 0), GradedMap(m, m, 0)};
  static const int diag[] = {1, -1, 2, -2};
  for (const auto& [d, n] : m.ranks()) {
    const std::size_t r = static_cast<std::size_t>(n);
    Matrix l = Matrix::identity(r), u = Matrix::identity(r), dg(r, r);
    for (std::size_t i = 0; i < r; ++i) {
      dg(i, i) = diag[rng.uniform(0, 3)];
      for (std::size_t j = 0; j < i; ++j) {
        l(i, j) = rng.uniform(-bound, bound);
        u(j, i) = rng.uniform(-bound, bound);
      }
    }
    Matrix phi = l * dg * u;
    auto inv = inverse(phi);
    if (!inv) throw Error("random_automorphism: singular product");
    out.phi.set_block({0, 0}, d, phi);
    out.inverse.set_block({0, 0}, d, *inv);
  }
  return out;
}

GradedModule random_module(Rng& rng, Context ctx, const Shape& shape) {
  std::map<int, int> ranks;
  for (int d = shape.min_degree; d < shape.min_degree + shape.span; ++d) ranks[d] = rng.uniform(0, shape.max_rank);
  return GradedModule(ctx, ranks);
}

std::vector<Monomial> all_monomials(const Context& ctx) {
  std::vector<Monomial> out;
  for (int i = 0; i < ctx.z_order; ++i)
    for (int j = 0; j < ctx.eps_order; ++j) out.push_back({i, j});
  return out;
}

GradedMap random_map(Rng& rng, const GradedModule& src, const GradedModule& tgt, int degree,
                     const std::vector<Monomial>& components, int bound) {
  GradedMap out(src, tgt, degree);
  for (Monomial m : components) {
    if (!m.fits(src.context())) continue;
    for (const auto& [p, rs] : src.ranks()) {
      const int rt = tgt.rank(p + degree - m.degree());
      if (rt == 0) continue;
      out.set_block(m, p, random_matrix(rng, rt, rs, bound));
    }
  }
  return out;
}

Contractible identity_cones(const Context& ctx, const std::map<int, int>& sizes) {
  std::map<int, int> ranks;
  for (const auto& [d, r] : sizes) {
    ranks[d] += r;
    ranks[d + 1] += r;
  }
  GradedModule m(ctx, ranks);
  auto size = [&](int d) {
    auto it = sizes.find(d);
    return it == sizes.end() ? 0 : it->second;
  };
  // Degree e holds the sources of the cones starting at e, then the targets of those starting at e - 1.
  GradedMap delta(m, m, 1), h(m, m, -1);
  for (const auto& [d, r] : sizes) {
    if (r == 0) continue;
    Matrix db(m.rank(d + 1), m.rank(d));
    Matrix hb(m.rank(d), m.rank(d + 1));
    for (int i = 0; i < r; ++i) {
      db(size(d + 1) + i, i) = 1;
      hb(i, size(d + 1) + i) = 1;
    }
    delta.set_block({0, 0}, d, db);
    h.set_block({0, 0}, d + 1, hb);
  }
  return {CurvedComplex(delta, Scalar(ctx)), h};
}

namespace {

CurvedComplex conjugate(const CurvedComplex& x, const Automorphism& a) {
  return CurvedComplex(a.inverse * x.delta() * a.phi, x.curvature());
}

}  // namespace

CurvedComplex random_complex(Rng& rng, Context ctx, const Shape& shape) {
  const int lo = shape.min_degree, hi = shape.min_degree + shape.span - 1;
  std::map<int, int> hom, cones;
  for (int d = lo; d <= hi; ++d) hom[d] = rng.uniform(0, std::min(2, shape.max_rank));
  int prev = 0;
  for (int d = lo; d < hi; ++d) {
    const int room = std::min({2, shape.max_rank - hom[d] - prev, shape.max_rank - hom[d + 1]});
    cones[d] = room > 0 ? rng.uniform(0, room) : 0;
    prev = cones[d];
  }
  Contractible c = identity_cones(ctx, cones);
  CurvedComplex h = CurvedComplex::trivial(GradedModule(ctx, hom));
  CurvedComplex x0 = direct_sum({h, c.complex}).complex;
  return conjugate(x0, random_automorphism(rng, x0.module()));
}

HEData random_he(Rng& rng, Context ctx, const Shape& shape) {
  Shape ys = shape;
  ys.max_rank = std::max(1, shape.max_rank / 2);
  CurvedComplex y = random_complex(rng, ctx, ys);
  const int lo = shape.min_degree, hi = shape.min_degree + shape.span - 1;
  std::map<int, int> cones;
  int prev = 0;
  for (int d = lo; d < hi; ++d) {
    const int room = std::min({2, shape.max_rank - y.module().rank(d) - prev,
                               shape.max_rank - y.module().rank(d + 1)});
    cones[d] = room > 0 ? rng.uniform(0, room) : 0;
    prev = cones[d];
  }
  Contractible c = identity_cones(ctx, cones);
  DirectSum s = direct_sum({y, c.complex});
  const GradedMap f0 = s.projections[0];
  const GradedMap g0 = s.injections[0];
  const GradedMap h0 = s.injections[1] * c.contraction * s.projections[1];

  Automorphism a = random_automorphism(rng, s.complex.module());
  CurvedComplex x = conjugate(s.complex, a);
  GradedMap f = f0 * a.phi;
  GradedMap g = a.inverse * g0;
  GradedMap h = a.inverse * h0 * a.phi;
  GradedMap k = GradedMap::zero(y.module(), y.module(), -1);

  const std::vector<Monomial> plain{{0, 0}};
  if (rng.chance(2, 3)) {
    GradedMap u = random_map(rng, x.module(), y.module(), -1, plain, 1);
    f += hom_diff(x, y, u);
    h -= g * u;
    k -= u * g;
  }
  if (rng.chance(1, 2)) h += hom_diff(x, random_map(rng, x.module(), x.module(), -2, plain, 1));
  if (rng.chance(1, 2)) k += hom_diff(y, random_map(rng, y.module(), y.module(), -2, plain, 1));
  HEData out{{x, y, f, g, h, k}};
  if (!validate_he(out).ok()) throw Error("random_he: generated data failed validation");
  return out;
}

GradedMap random_closed_map(Rng& rng, const CurvedComplex& x, const CurvedComplex& y, int degree) {
  GradedMap out(x.module(), y.module(), degree);
  for (const auto& b : closed_plain_maps(x, y, degree)) {
    const int c = rng.uniform(-1, 1);
    if (c != 0) out += Rational(c) * b;
  }
  return out;
}

Automorphism random_unitriangular(Rng& rng, const Filtration& f, int bound) {
  const Decomposition& L = f.layout;
  const GradedModule& m = L.total();
  GradedMap n(m, m, 0);
  for (std::size_t i = 0; i < L.size(); ++i)
    for (std::size_t j = 0; j < L.size(); ++j)
      if (f.poset.less(i, j) && rng.chance(1, 2))
        n += L.injection(j) * random_map(rng, L.part(i), L.part(j), 0, {{0, 0}}, bound) * L.projection(i);
  Automorphism out;
  out.phi = GradedMap::identity(m) + n;
  out.inverse = neumann_inverse(n, IdealSpec::triangular(f));
  return out;
}

namespace {

Poset random_poset(Rng& rng, int n) {
  std::vector<std::string> names;
  std::vector<std::pair<std::size_t, std::size_t>> covers;
  for (int i = 0; i < n; ++i) names.push_back("p" + std::to_string(i));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rng.chance(j == i + 1 ? 3 : 1, 4)) covers.emplace_back(i, j);
  return Poset(names, covers);
}

GradedMap conjugated_twist(const CurvedComplex& base, const GradedMap& alpha0, const Automorphism& a) {
  return a.inverse * (base.delta() + alpha0) * a.phi - base.delta();
}

}  // namespace

FilteredInstance random_triangular_instance(Rng& rng, Context ctx, int pieces, const Shape& piece_shape) {
  FilteredInstance out;
  out.kind = IdealKind::triangular;
  out.fc.poset = random_poset(rng, pieces);
  for (int i = 0; i < pieces; ++i) {
    out.hes.push_back(random_he(rng, ctx, piece_shape));
    out.fc.summands.push_back(out.hes.back().x);
  }
  out.fc.twist_curvature = Scalar(ctx);
  const Filtration filt = out.fc.filtration();
  const Decomposition& L = filt.layout;
  const CurvedComplex base = out.fc.base();
  // Blocks only run from the first `split` summands to the rest, so alpha0^2 = 0.
  const int split = pieces > 1 ? rng.uniform(1, pieces - 1) : 1;
  // Retry a few times so that alpha is nonzero whenever the poset allows it.
  for (int attempt = 0; attempt < 8; ++attempt) {
    GradedMap alpha0(L.total(), L.total(), 1);
    for (int i = 0; i < split; ++i)
      for (int j = split; j < pieces; ++j)
        if (filt.poset.less(i, j) && rng.chance(2, 3))
          alpha0 += L.injection(j) * random_closed_map(rng, out.fc.summands[i], out.fc.summands[j], 1) *
                    L.projection(i);
    out.fc.alpha = conjugated_twist(base, alpha0, random_unitriangular(rng, filt));
    if (!out.fc.alpha.is_zero()) break;
  }
  if (!maurer_cartan_residual(base, out.fc.alpha, base.curvature()).is_zero())
    throw Error("random_triangular_instance: twist is not Maurer-Cartan");
  return out;
}

FilteredInstance random_curved_instance(Rng& rng, Context ctx, int pairs, const Shape& piece_shape) {
  FilteredInstance out;
  out.kind = IdealKind::sum;
  std::vector<ConeContraction> cones;
  for (int t = 0; t < pairs; ++t) {
    HEData he = random_he(rng, ctx, piece_shape);
    out.hes.push_back(suspend(he, 1));
    out.hes.push_back(he);
    out.fc.summands.push_back(suspend(he.x, 1));
    out.fc.summands.push_back(he.x);
    cones.push_back(cone_contraction_from_he(identity_he(he.x)));
  }
  out.fc.poset = Poset::chain(out.fc.summands.size());
  out.fc.twist_curvature = Scalar::z(ctx);
  const Filtration filt = out.fc.filtration();
  const Decomposition& L = filt.layout;
  const CurvedComplex base = out.fc.base();

  GradedMap b(L.total(), L.total(), 1), h0(L.total(), L.total(), -1);
  for (int t = 0; t < pairs; ++t) {
    const std::size_t s = 2 * t;
    const GradedModule& p = out.fc.summands[s + 1].module();
    b += L.injection(s + 1) * GradedMap::identity(p).reindexed(1, 0) * L.projection(s);
    const Decomposition& cl = cones[t].cone.layout;
    for (std::size_t r = 0; r < 2; ++r)
      for (std::size_t c = 0; c < 2; ++c)
        h0 += L.injection(s + r) * block(cones[t].contraction, cl, r, cl, c) * L.projection(s + c);
  }
  const CurvedComplex tw = twist(base, b);
  const Context lift_ctx{ctx.z_order, ctx.z_order};
  const GradedMap lifted = catalan_lift(tw.with_context(lift_ctx), h0.with_context(lift_ctx));
  const GradedMap hz = lifted.specialize_eps(Scalar::z(lift_ctx)).with_context(ctx);
  const GradedMap alpha0 = b + hz.times({1, 0});
  out.fc.alpha = conjugated_twist(base, alpha0, random_unitriangular(rng, filt));
  if (!maurer_cartan_residual(base, out.fc.alpha, base.curvature() + out.fc.twist_curvature).is_zero())
    throw Error("random_curved_instance: twist is not Maurer-Cartan");
  return out;
}

GradedMap random_adic_twist(Rng& rng, const CurvedComplex& x) {
  const GradedModule& m = x.module();
  GradedMap n = random_map(rng, m, m, -2, {{0, 0}}, 1).times({1, 0});
  GradedMap inv = neumann_inverse(n, IdealSpec::adic());
  return inv * x.delta() * (GradedMap::identity(m) + n) - x.delta();
}

}  // namespace hpl
