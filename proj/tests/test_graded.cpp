#include <doctest.h>

#include "hpl/errors.hpp"
#include "support.hpp"

using namespace hpl;
using hpl::test::mat;

namespace {

GradedModule random_module_of(Rng& rng, Context ctx) { return random_module(rng, ctx, Shape{-1, 4, 3, 2}); }

}  // namespace

TEST_SUITE("graded") {
  TEST_CASE("identity and central scalars") {
    const Context ctx{3, 3};
    Rng rng(10);
    const GradedModule a = random_module_of(rng, ctx), b = random_module_of(rng, ctx);
    const GradedMap g = random_map(rng, a, b, 1, all_monomials(ctx));
    CHECK(GradedMap::identity(b) * g == g);
    CHECK(g * GradedMap::identity(a) == g);
    const GradedMap zb = GradedMap::identity(b).times({1, 0});
    const GradedMap za = GradedMap::identity(a).times({1, 0});
    CHECK(zb * g == g.times({1, 0}));
    CHECK(zb * g == g * za);
  }

  TEST_CASE("composition matches the dense oracle") {
    const Context ctx{3, 3};
    Rng rng(11);
    for (int t = 0; t < 30; ++t) {
      const GradedModule a = random_module_of(rng, ctx), b = random_module_of(rng, ctx),
                         c = random_module_of(rng, ctx);
      const GradedMap g = random_map(rng, a, b, rng.uniform(-1, 2), all_monomials(ctx));
      const GradedMap f = random_map(rng, b, c, rng.uniform(-1, 2), all_monomials(ctx));
      CHECK(f * g == test::naive_compose(f, g));
    }
  }

  TEST_CASE("composition is associative and bilinear") {
    const Context ctx{2, 3};
    Rng rng(12);
    for (int t = 0; t < 20; ++t) {
      const GradedModule a = random_module_of(rng, ctx), b = random_module_of(rng, ctx),
                         c = random_module_of(rng, ctx), d = random_module_of(rng, ctx);
      const auto ms = all_monomials(ctx);
      const GradedMap h = random_map(rng, a, b, 0, ms), g = random_map(rng, b, c, 1, ms),
                      g2 = random_map(rng, b, c, 1, ms), f = random_map(rng, c, d, -1, ms);
      CHECK((f * g) * h == f * (g * h));
      CHECK(f * (g + g2) == f * g + f * g2);
    }
  }

  TEST_CASE("shape and context errors") {
    const Context ctx{2, 2};
    const GradedModule a(ctx, {{0, 1}}), b(ctx, {{0, 2}});
    const GradedMap f(a, b, 0), g(a, a, 0);
    CHECK_THROWS_AS(f * f, ShapeMismatch);
    CHECK_THROWS_AS(f + g, ShapeMismatch);
    const GradedModule other(Context{3, 2}, {{0, 1}});
    CHECK_THROWS_AS(GradedMap(a, other, 0), ContextMismatch);
    GradedMap h(a, b, 0);
    CHECK_THROWS(h.set_block({0, 0}, 0, mat({{1, 2}})));
  }

  TEST_CASE("truncation drops high components") {
    const Context ctx{2, 2};
    const GradedModule m(ctx, {{0, 1}, {2, 1}, {4, 1}});
    const GradedMap z = GradedMap::identity(m).times({1, 0});
    CHECK((z * z).is_zero());
    const GradedMap e = GradedMap::identity(m).times({0, 1});
    CHECK((z * e).components().count({1, 1}) == 1);
    CHECK((z * e).degree() == 4);
  }

  TEST_CASE("eps parts") {
    const Context ctx{2, 3};
    Rng rng(13);
    const GradedModule a = random_module_of(rng, ctx);
    const GradedMap f = random_map(rng, a, a, 1, all_monomials(ctx));
    GradedMap sum = f.eps_coefficient(0);
    for (int j = 1; j < 3; ++j) sum += f.eps_coefficient(j).times({0, j});
    CHECK(sum == f);
    CHECK(f.eps_tail().times({0, 1}) + f.eps_coefficient(0) == f);
    CHECK(f.eps_truncated(1) == f.eps_coefficient(0));
  }

  TEST_CASE("reindexing") {
    const Context ctx{2, 2};
    Rng rng(14);
    const GradedModule a = random_module_of(rng, ctx), b = random_module_of(rng, ctx);
    const GradedMap f = random_map(rng, a, b, 1, all_monomials(ctx));
    const GradedMap r = f.reindexed(2, -1);
    CHECK(r.source() == a.shifted(2));
    CHECK(r.target() == b.shifted(-1));
    CHECK(r.degree() == f.degree() + 3);
    CHECK(r.reindexed(-2, 1) == f);
  }

  TEST_CASE("decomposition blocks") {
    const Context ctx{2, 2};
    Rng rng(15);
    std::vector<GradedModule> parts;
    for (int i = 0; i < 3; ++i) parts.push_back(random_module_of(rng, ctx));
    const Decomposition d(parts);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) {
        const GradedMap pi = d.projection(i) * d.injection(j);
        if (i == j)
          CHECK(pi == GradedMap::identity(parts[i]));
        else
          CHECK(pi.is_zero());
      }
    GradedMap sum(d.total(), d.total(), 0);
    for (std::size_t i = 0; i < 3; ++i) sum += d.injection(i) * d.projection(i);
    CHECK(sum == GradedMap::identity(d.total()));

    const GradedMap f = random_map(rng, d.total(), d.total(), 1, all_monomials(ctx));
    std::vector<std::vector<GradedMap>> blocks(3, std::vector<GradedMap>(3));
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) blocks[i][j] = block(f, d, i, d, j);
    CHECK(assemble(d, d, 1, blocks) == f);

    std::vector<GradedMap> diag;
    for (const auto& p : parts) diag.push_back(random_map(rng, p, p, 0, {{0, 0}}));
    const GradedMap bd = block_diagonal(d, d, diag);
    CHECK(block(bd, d, 0, d, 1).is_zero());
    CHECK(block(GradedMap::identity(d.total()), d, 2, d, 2) == GradedMap::identity(parts[2]));
  }

  TEST_CASE("rank agrees with the elimination oracle") {
    Rng rng(16);
    for (int t = 0; t < 60; ++t) {
      const std::size_t r = rng.uniform(0, 5), c = rng.uniform(0, 5);
      Matrix m = random_matrix(rng, r, c, 2);
      if (r > 1 && rng.chance(1, 2))
        for (std::size_t j = 0; j < c; ++j) m(r - 1, j) = m(0, j) - 2 * m(r - 2, j);
      const std::size_t expected = test::oracle_rank(m);
      CHECK(rank(m) == expected);
      CHECK(rank_fraction_free(m) == expected);
      const PivotSet p = pivots(m);
      CHECK(p.rows.size() == expected);
      const Matrix ns = nullspace(m);
      CHECK(ns.cols() == c - expected);
      if (!ns.empty()) CHECK((m * ns).is_zero());
    }
  }

  TEST_CASE("inverse") {
    Rng rng(17);
    for (int t = 0; t < 20; ++t) {
      const Matrix m = random_matrix(rng, 3, 3, 3);
      auto inv = inverse(m);
      if (test::oracle_rank(m) == 3) {
        REQUIRE(inv.has_value());
        CHECK(m * *inv == Matrix::identity(3));
        CHECK(*inv * m == Matrix::identity(3));
      } else {
        CHECK_FALSE(inv.has_value());
      }
    }
    CHECK_FALSE(inverse(mat({{1, 2}, {2, 4}})).has_value());
    CHECK(*inverse(mat({{2, 0}, {0, 1}})) == Rational(1, 2) * mat({{1, 0}, {0, 2}}));
  }

  TEST_CASE("random automorphisms are invertible") {
    const Context ctx{2, 2};
    Rng rng(18);
    for (int t = 0; t < 10; ++t) {
      const GradedModule m = random_module_of(rng, ctx);
      const Automorphism a = random_automorphism(rng, m);
      CHECK(a.phi * a.inverse == GradedMap::identity(m));
      CHECK(a.inverse * a.phi == GradedMap::identity(m));
    }
  }
}
