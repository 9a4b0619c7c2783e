#include <doctest.h>

#include "hpl/errors.hpp"
#include "properties.hpp"

using namespace hpl;
using hpl::test::mat;
using hpl::test::plain;

namespace {

const Context kCtx{3, 3};

/// Q in degree 0 -> Q in degree 1 with matrix (c).
CurvedComplex two_term(int c) {
  const GradedModule m(kCtx, {{0, 1}, {1, 1}});
  return CurvedComplex(plain(m, m, 1, {{0, mat({{c}})}}), Scalar(kCtx));
}

}  // namespace

TEST_SUITE("dgcore") {
  TEST_CASE("curvature invariant is enforced") {
    const GradedModule m(kCtx, {{0, 1}, {1, 1}, {2, 1}});
    const GradedMap d = plain(m, m, 1, {{0, mat({{1}})}, {1, mat({{1}})}});
    CHECK_THROWS_AS(CurvedComplex(d, Scalar(kCtx)), InvalidData);
    CHECK_FALSE(CurvedComplex::unchecked(d, Scalar(kCtx)).curvature_residual().is_zero());
    CHECK_THROWS(CurvedComplex(GradedMap(m, m, 0), Scalar(kCtx)));
  }

  TEST_CASE("hom differential basics") {
    Rng rng(20);
    for (int t = 0; t < 10; ++t) {
      const CurvedComplex x = test::random_curved_complex(rng, kCtx);
      CHECK(hom_diff(x, GradedMap::identity(x.module())).is_zero());
      // d(delta) = 2 delta^2, which is 2w rather than 0 on a curved complex.
      const GradedMap id = GradedMap::identity(x.module());
      CHECK(hom_diff(x, x.delta()) == 2 * id.scaled(x.curvature(), 2));
      CHECK(is_closed(x, x, GradedMap::identity(x.module())));
    }
    const CurvedComplex x = random_complex(rng, kCtx, Shape{});
    CHECK(is_closed(x, x, x.delta()));
    const CurvedComplex y = test::random_curved_complex(rng, kCtx);
    CHECK_THROWS_AS(hom_diff(x, y, GradedMap(x.module(), y.module(), 0)), CurvatureMismatch);
  }

  TEST_CASE("sign conventions on random instances") {
    Rng rng(21);
    for (int t = 0; t < 25; ++t) {
      CHECK(test::leibniz_residual(rng, kCtx).is_zero());
      CHECK(test::identity_residual(rng, kCtx).is_zero());
      CHECK(test::inverse_residual(rng, kCtx).is_zero());
      CHECK(test::square_residual(rng, kCtx).is_zero());
      CHECK(test::row_sign_residual(rng, kCtx).is_zero());
    }
  }

  TEST_CASE("suspension") {
    Rng rng(22);
    const CurvedComplex x = random_complex(rng, kCtx, Shape{});
    CHECK(suspend(x, 0) == x);
    CHECK(suspend(suspend(x, 1), -1) == x);
    const CurvedComplex s = suspend(two_term(1), 1);
    CHECK(s.module() == GradedModule(kCtx, {{-1, 1}, {0, 1}}));
    CHECK(s.delta().block({0, 0}, -1) == mat({{-1}}));
    // The degree 1 identity X[1] -> X is closed.
    CHECK(hom_diff(s, two_term(1), shift_identity(two_term(1).module(), 1)).is_zero());
  }

  TEST_CASE("direct sums") {
    Rng rng(23);
    const CurvedComplex x = random_complex(rng, kCtx, Shape{});
    const DirectSum one = direct_sum({x});
    CHECK(one.complex == x);
    const DirectSum two = direct_sum({x, CurvedComplex::trivial(GradedModule(kCtx))});
    CHECK(two.complex == x);
    const CurvedComplex y = random_complex(rng, kCtx, Shape{});
    const DirectSum xy = direct_sum({x, y});
    CHECK(xy.projections[1] * xy.injections[1] == GradedMap::identity(y.module()));
    CHECK((xy.projections[0] * xy.injections[1]).is_zero());
    CHECK(is_closed(x, xy.complex, xy.injections[0]));
  }

  TEST_CASE("twists") {
    Rng rng(24);
    const CurvedComplex x = random_complex(rng, kCtx, Shape{});
    CHECK(twist(x, GradedMap(x.module(), x.module(), 1)) == x);
    const CurvedComplex flat = twist(x, -x.delta(), Scalar(kCtx));
    CHECK(flat.delta().is_zero());
    CHECK(flat.module() == x.module());

    // tw_{a+b}(X) = tw_b(tw_a(X)) with a = u^{-1} d u - d and b = v^{-1} (d + a) v - (d + a).
    const Automorphism u = random_automorphism(rng, x.module());
    const GradedMap a = u.inverse * x.delta() * u.phi - x.delta();
    const CurvedComplex ta = twist(x, a);
    const Automorphism v = random_automorphism(rng, x.module());
    const GradedMap b = v.inverse * ta.delta() * v.phi - ta.delta();
    CHECK(twist(ta, b) == twist(x, a + b));

    const GradedModule m(kCtx, {{0, 1}, {1, 1}});
    const GradedMap notmc = plain(m, m, 1, {{0, mat({{1}})}});
    const CurvedComplex z = CurvedComplex::trivial(m);
    CHECK(twist(z, notmc).delta() == notmc);
    try {
      twist(z, notmc, Scalar::z(kCtx));
      FAIL("expected MaurerCartanError");
    } catch (const MaurerCartanError& e) {
      CHECK_FALSE(e.residual().is_zero());
    }
  }

  TEST_CASE("cones") {
    Rng rng(25);
    const CurvedComplex y = random_complex(rng, kCtx, Shape{});
    const CurvedComplex zero = CurvedComplex::trivial(GradedModule(kCtx));
    const Cone c0 = cone(zero, y, GradedMap(zero.module(), y.module(), 0));
    CHECK(c0.complex == y);

    const GradedModule q(kCtx, {{0, 1}});
    const CurvedComplex qc = CurvedComplex::trivial(q);
    const Cone c3 = cone(qc, qc, plain(q, q, 0, {{0, mat({{3}})}}));
    CHECK(c3.complex.module() == GradedModule(kCtx, {{-1, 1}, {0, 1}}));
    CHECK(c3.complex.delta().block({0, 0}, -1) == mat({{3}}));
    CHECK(homology_ranks(c3.complex).empty());

    const CurvedComplex x = random_complex(rng, kCtx, Shape{});
    const Cone ci = cone(x, x, GradedMap::identity(x.module()));
    CHECK(homology_ranks(ci.complex).empty());
    CHECK_THROWS_AS(cone(x, x, x.delta()), Error);
  }

  TEST_CASE("contraction of identity cones witnesses id ~ 0") {
    const Contractible c = identity_cones(kCtx, {{-1, 2}, {0, 1}, {2, 3}});
    const GradedMap id = GradedMap::identity(c.complex.module());
    CHECK(is_null_homotopic_witness(c.complex, c.complex, id, c.contraction));
    CHECK_FALSE(is_null_homotopic_witness(c.complex, c.complex, id, 2 * c.contraction));
  }

  TEST_CASE("homology ranks") {
    CHECK(homology_ranks(two_term(1)).empty());
    const GradedModule m(kCtx, {{-1, 2}, {0, 3}, {3, 1}});
    CHECK(homology_ranks(CurvedComplex::trivial(m)) == m.ranks());
    Rng rng(26);
    for (int t = 0; t < 30; ++t) {
      const CurvedComplex x = random_complex(rng, kCtx, Shape{-1, 4, 4, 2});
      CHECK(homology_ranks(x) == test::oracle_homology(x));
    }
    CHECK_THROWS_AS(homology_ranks(test::random_curved_complex(rng, kCtx)), CurvatureMismatch);
  }
}
