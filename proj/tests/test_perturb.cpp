#include <doctest.h>

#include "hpl/errors.hpp"
#include "hpl/reduce.hpp"
#include "support.hpp"

using namespace hpl;
using hpl::test::mat;
using hpl::test::plain;

namespace {

const Context kCtx{4, 4};

bool two_sided(const GradedMap& u, const GradedMap& inv) {
  const GradedMap id = GradedMap::identity(u.source());
  return (id + u) * inv == id && inv * (id + u) == id;
}

ZHEData as_zhe(const HEData& he) {
  ZHEData out;
  static_cast<Equivalence&>(out) = he;
  out.z = Scalar(he.context());
  return out;
}

}  // namespace

TEST_SUITE("perturb") {
  TEST_CASE("posets") {
    const Poset c = Poset::chain(3);
    CHECK(c.less(0, 2));
    CHECK_FALSE(c.less(2, 0));
    CHECK_FALSE(c.less(1, 1));
    CHECK(c.index_of("2") == 2);
    CHECK_THROWS(c.index_of("7"));
    CHECK_THROWS_AS(Poset({"a", "b"}, {{0, 1}, {1, 0}}), InvalidData);
    const Poset v({"a", "b", "c"}, {{0, 2}, {1, 2}});
    CHECK(v.less(1, 2));
    CHECK_FALSE(v.less(0, 1));
    CHECK_FALSE(v.less(1, 0));
  }

  TEST_CASE("Neumann inverse") {
    Rng rng(40);
    const GradedModule m(kCtx, {{0, 2}, {2, 2}});
    const GradedMap zero(m, m, 0);
    CHECK(neumann_inverse(zero, IdealSpec::adic()) == GradedMap::identity(m));

    // u = z n with n: degree 2 -> degree 0, so u^2 = 0 and the series has two terms.
    const GradedMap u = plain(m, m, -2, {{2, mat({{1, 2}, {-1, 3}})}}).times({1, 0});
    REQUIRE((u * u).is_zero());
    CHECK(neumann_inverse(u, IdealSpec::adic()) == GradedMap::identity(m) - u);

    const GradedMap nil = random_map(rng, m, m, 0, {{1, 0}, {2, 1}});
    CHECK(two_sided(nil, neumann_inverse(nil, IdealSpec::adic())));

    // z n with n lowering degree by 2 along a chain of length 4: (z n)^3 != 0.
    const GradedModule line(kCtx, {{0, 1}, {2, 1}, {4, 1}, {6, 1}});
    const GradedMap down = plain(line, line, -2, {{2, mat({{1}})}, {4, mat({{1}})}, {6, mat({{1}})}}).times({1, 0});
    CHECK_THROWS_AS(neumann_inverse(down, IdealSpec::adic(), 2), NeumannCapExceeded);
    CHECK_NOTHROW(neumann_inverse(down, IdealSpec::adic(), 4));
    CHECK_THROWS_AS(neumann_inverse(GradedMap::identity(m), IdealSpec::adic()), NotInIdeal);
  }

  TEST_CASE("Neumann inverse in the sum ideal") {
    Rng rng(41);
    for (int t = 0; t < 10; ++t) {
      std::vector<GradedModule> parts;
      for (int i = 0; i < 3; ++i) parts.push_back(random_module(rng, kCtx, Shape{0, 2, 2, 2}));
      const Filtration f{Poset::chain(3), Decomposition(parts)};
      const Automorphism tri = random_unitriangular(rng, f, 2);
      const GradedMap b = tri.phi - GradedMap::identity(f.layout.total());
      const GradedMap a = random_map(rng, f.layout.total(), f.layout.total(), -2, {{0, 0}, {1, 0}});
      const GradedMap u = a.times({1, 0}) + b;
      const IdealSpec ideal = IdealSpec::sum(f);
      REQUIRE(ideal.contains(u));
      CHECK(two_sided(u, neumann_inverse(u, ideal)));
    }
  }

  TEST_CASE("perturbed contractions") {
    // Two copies of Cone(id_Q) over 0 < 1, twisted by a rank one map from the
    // first copy to the second.
    const GradedModule q(kCtx, {{0, 1}});
    const Cone c = cone(CurvedComplex::trivial(q), CurvedComplex::trivial(q), GradedMap::identity(q));
    const GradedMap hc = c.inject_x * GradedMap::identity(q).reindexed(0, 1) * c.project_y;
    const DirectSum two = direct_sum({c.complex, c.complex});
    const Filtration f{Poset::chain(2), two.layout};
    const GradedMap h0 = block_diagonal(two.layout, two.layout, {hc, hc});
    REQUIRE(hom_diff(two.complex, h0) == GradedMap::identity(two.complex.module()));
    const GradedMap link = plain(c.complex.module(), c.complex.module(), 1, {{-1, mat({{5}})}});
    const GradedMap alpha = two.injections[1] * link * two.projections[0];
    const IdealSpec ideal = IdealSpec::triangular(f);
    const GradedMap none(two.complex.module(), two.complex.module(), 1);
    CHECK(perturb_contraction(two.complex, h0, none, ideal) == h0);
    const CurvedComplex tw = twist(two.complex, alpha);
    const GradedMap h = perturb_contraction(two.complex, h0, alpha, ideal);
    CHECK(hom_diff(tw, h) == GradedMap::identity(tw.module()));
    CHECK(h == perturb_contraction_alt(two.complex, h0, alpha, ideal));
    CHECK(h != h0);

    Rng rng(42);
    for (int t = 0; t < 8; ++t) {
      // Two contractible pieces in random bases, linked by a closed map from the first to the second.
      std::vector<CurvedComplex> parts;
      std::vector<GradedMap> hs;
      for (int i = 0; i < 2; ++i) {
        const Contractible base = identity_cones(kCtx, {{-1, rng.uniform(1, 2)}, {0, rng.uniform(0, 2)}});
        const Automorphism a = random_automorphism(rng, base.complex.module());
        parts.emplace_back(a.inverse * base.complex.delta() * a.phi, Scalar(kCtx));
        hs.push_back(a.inverse * base.contraction * a.phi);
      }
      const DirectSum sum = direct_sum(parts);
      const GradedMap h0 = block_diagonal(sum.layout, sum.layout, hs);
      const GradedMap alpha = sum.injections[1] * random_closed_map(rng, parts[0], parts[1], 1) * sum.projections[0];
      const IdealSpec tri = IdealSpec::triangular({Poset::chain(2), sum.layout});
      const GradedMap h = perturb_contraction(sum.complex, h0, alpha, tri);
      CHECK(h == perturb_contraction_alt(sum.complex, h0, alpha, tri));
      CHECK(hom_diff(twist(sum.complex, alpha), h) == GradedMap::identity(sum.complex.module()));
    }
  }

  TEST_CASE("transfer along a z-equivalence") {
    Rng rng(43);
    for (int t = 0; t < 4; ++t) {
      FilteredInstance inst = random_curved_instance(rng, kCtx, 1, Shape{-2, 5, 3, 2});
      const SHEData she = promote_he_to_she(direct_sum(inst.hes), kCtx.z_order).she;
      const ZHEData zhe = specialize_she(she, inst.fc.twist_curvature.with_context(she.context()));
      const GradedMap alpha = inst.fc.alpha.with_context(she.context());
      const IdealSpec ideal = with_context(IdealSpec::sum(inst.fc.filtration()), she.context());
      const ZHEPerturbation p = perturb_zhe(zhe, alpha, ideal);
      CHECK(p.report.ok());
      CHECK(p.source == twist(zhe.x, alpha, zhe.x.curvature() + zhe.z));

      // Zero twist with zero z-curvature: the formulas collapse.
      const ZHEPerturbation id = perturb_zhe(as_zhe(at_eps_zero(she)), GradedMap(alpha.source(), alpha.source(), 1), ideal);
      CHECK(id.F == at_eps_zero(she).f);
      CHECK(id.G == at_eps_zero(she).g);
      CHECK(id.H == at_eps_zero(she).h);
      CHECK(id.beta.is_zero());
      CHECK_THROWS_AS(perturb_zhe(zhe, GradedMap(alpha.source(), alpha.source(), 1), ideal), MaurerCartanError);
    }
  }

  TEST_CASE("zero twist with nonzero z") {
    Rng rng(44);
    const HEData he = random_he(rng, kCtx, test::small_shape());
    const SHEData she = promote_he_to_she(he, kCtx.z_order).she;
    const ZHEData zhe = specialize_she(she);
    REQUIRE(validate_zhe(zhe).ok());
    // alpha = 0 is not Maurer-Cartan for curvature w + z.
    CHECK_THROWS_AS(perturb_zhe(zhe, GradedMap(zhe.x.module(), zhe.x.module(), 1), IdealSpec::adic()),
                    MaurerCartanError);
  }

  TEST_CASE("Markl perturbation") {
    Rng rng(45);
    for (int t = 0; t < 4; ++t) {
      FilteredInstance inst = random_triangular_instance(rng, kCtx, 3, Shape{0, 3, 3, 2});
      const SHEData she = promote_he_to_she(direct_sum(inst.hes), 4).she;
      const IdealSpec ideal = IdealSpec::triangular(inst.fc.filtration());
      const GradedMap alpha = inst.fc.alpha.with_context(she.context());
      const SHEPerturbation p = markl_perturb(she, alpha, ideal);
      CHECK(p.report.ok());
      CHECK(p.she.context().eps_order == 3);
      CHECK(p.she.x == twist(she.x, alpha).with_context(p.she.context()));
      std::vector<GradedModule> ys;
      for (const auto& h : inst.hes) ys.push_back(h.y.module().with_context(p.beta.context()));
      const Filtration fy{inst.fc.poset, Decomposition(ys)};
      CHECK(triangular_violation(p.beta, fy, false).is_zero());

      const SHEPerturbation zero = markl_perturb(she, GradedMap(alpha.source(), alpha.source(), 1), ideal);
      const Context c = zero.she.context();
      CHECK(zero.beta.is_zero());
      CHECK(zero.she.k == she.k.with_context(c));
      CHECK(zero.she.f == she.f.with_context(c));
      CHECK(zero.she.h == she.h.with_context(c));

      // curved_perturb with s = 0 is the same computation.
      const SHEPerturbation same = curved_perturb(she, alpha, Scalar(she.context()), ideal);
      CHECK(same.she.f == p.she.f);
      CHECK(same.she.k == p.she.k);
      CHECK(same.beta == p.beta);
    }
  }

  TEST_CASE("twists outside the ideal are rejected") {
    Rng rng(46);
    const HEData he = random_he(rng, kCtx, test::small_shape());
    const GradedMap minus_delta = -he.x.delta();
    CHECK_THROWS_AS(simple_perturb(he, minus_delta, IdealSpec::adic()), NotInIdeal);
  }

  TEST_CASE("curved perturbation") {
    Rng rng(47);
    for (int t = 0; t < 3; ++t) {
      FilteredInstance inst = random_curved_instance(rng, kCtx, 1, Shape{-2, 5, 3, 2});
      const int out = 3;
      const SHEData she = promote_he_to_she(direct_sum(inst.hes), required_input_eps_order(kCtx, true, out)).she;
      const Context c = she.context();
      const Scalar s = inst.fc.twist_curvature.with_context(c);
      const IdealSpec ideal = IdealSpec::sum(inst.fc.filtration());
      const SHEPerturbation p = curved_perturb(she, inst.fc.alpha.with_context(c), s, ideal, {64, out});
      CHECK(p.report.ok());
      CHECK(p.report.checks.size() >= 5);
      CHECK(p.she.context() == Context{kCtx.z_order, out});
      CHECK(p.she.x.curvature() == s.with_context(p.she.context()));
      CHECK_THROWS_AS(curved_perturb(she, inst.fc.alpha.with_context(c), s, ideal, {64, out + 1}), TruncationError);
    }
  }

  TEST_CASE("simple perturbation") {
    Rng rng(48);
    for (int t = 0; t < 5; ++t) {
      FilteredInstance inst = random_triangular_instance(rng, kCtx, 3, Shape{0, 3, 3, 2});
      const HEData he = direct_sum(inst.hes);
      const IdealSpec ideal = IdealSpec::triangular(inst.fc.filtration());
      const HEPerturbation p = simple_perturb(he, inst.fc.alpha, ideal);
      CHECK(p.report.ok());
      CHECK(validate_he(p.he).ok());
      const ZHEPerturbation z = perturb_zhe(as_zhe(he), inst.fc.alpha, ideal);
      CHECK(z.beta == p.beta);
      CHECK(z.F == p.he.f);
      CHECK(z.G == p.he.g);
      CHECK(z.H == p.he.h);

      const HEPerturbation zero = simple_perturb(he, GradedMap(he.x.module(), he.x.module(), 1), ideal);
      CHECK(zero.beta.is_zero());
      CHECK(zero.he.f == he.f);
      CHECK(zero.he.g == he.g);
      CHECK(zero.he.h == he.h);
    }
  }

  TEST_CASE("poset reduction") {
    Rng rng(49);
    // One summand: the same as simple_perturb.
    {
      const HEData he = random_he(rng, kCtx, test::small_shape());
      FilteredComplex fc;
      fc.poset = Poset::chain(1);
      fc.summands = {he.x};
      fc.alpha = random_adic_twist(rng, he.x);
      fc.twist_curvature = Scalar(kCtx);
      const PosetReduction r = poset_reduce(fc, {he}, IdealKind::sum);
      const HEPerturbation s = simple_perturb(he, fc.alpha, IdealSpec::adic());
      CHECK(r.report.ok());
      CHECK(r.reduced.alpha == s.beta);
    }
    for (int t = 0; t < 4; ++t) {
      FilteredInstance inst = random_triangular_instance(rng, kCtx, 3, Shape{0, 3, 3, 2});
      const PosetReduction r = poset_reduce(inst.fc, inst.hes, IdealKind::triangular);
      CHECK(r.report.ok());
      CHECK(validate_filtered(r.reduced, IdealKind::triangular).ok());
      CHECK(homology_ranks(r.he.x) == homology_ranks(r.he.y));

      FilteredComplex flat = inst.fc;
      flat.alpha = GradedMap(flat.alpha.source(), flat.alpha.target(), 1);
      const PosetReduction z = poset_reduce(flat, inst.hes, IdealKind::triangular);
      const HEData sum = direct_sum(inst.hes);
      CHECK(z.reduced.alpha.is_zero());
      CHECK(z.he.f == sum.f);
      CHECK(z.he.g == sum.g);
    }
    for (int t = 0; t < 2; ++t) {
      FilteredInstance inst = random_curved_instance(rng, kCtx, 1, Shape{-2, 5, 3, 2});
      const PosetReduction r = poset_reduce(inst.fc, inst.hes, IdealKind::sum);
      CHECK(r.report.ok());
      CHECK(validate_filtered(r.reduced, IdealKind::sum).ok());
    }
  }

  TEST_CASE("minimal models") {
    Rng rng(50);
    // Zero differential: already minimal.
    const CurvedComplex flat = CurvedComplex::trivial(GradedModule(kCtx, {{0, 2}, {1, 1}}));
    const Reduction same = reduce_complex(flat);
    CHECK(same.reduced == flat);
    CHECK(same.passes == 0);

    for (int t = 0; t < 5; ++t) {
      const CurvedComplex x = random_complex(rng, kCtx, Shape{-1, 4, 3, 2});
      const Contractible c = identity_cones(kCtx, {{-1, 1}, {0, 1}, {1, 1}});
      const CurvedComplex big = direct_sum({x, c.complex}).complex;
      const Reduction r = reduce_complex(big);
      CHECK(r.report.ok());
      CHECK(r.reduced.delta().block({0, 0}, 0).is_zero());
      const auto h = test::oracle_homology(big);
      CHECK(test::oracle_homology(r.reduced) == h);
      std::map<int, int> ranks;
      for (const auto& [d, n] : r.reduced.module().ranks())
        if (n) ranks[d] = n;
      CHECK(ranks == h);
    }
  }

  TEST_CASE("filtered complex validation") {
    Rng rng(51);
    FilteredInstance inst = random_triangular_instance(rng, kCtx, 3, Shape{0, 3, 3, 2});
    CHECK(validate_filtered(inst.fc, IdealKind::triangular).ok());
    FilteredComplex bad = inst.fc;
    bad.alpha += random_map(rng, bad.layout().total(), bad.layout().total(), 1, {{0, 0}}, 1);
    const Report r = validate_filtered(bad, IdealKind::triangular);
    CHECK_FALSE(r.ok());
  }
}
