// Shared fixtures and independent oracles for the unit and acceptance tests.
#pragma once

#include <initializer_list>
#include <map>
#include <utility>
#include <vector>

#include "hpl/homotopy.hpp"
#include "hpl/linalg.hpp"
#include "hpl/perturb.hpp"
#include "hpl/random.hpp"

namespace hpl::test {

inline Matrix mat(std::initializer_list<std::initializer_list<int>> rows) {
  const std::size_t r = rows.size(), c = r ? rows.begin()->size() : 0;
  Matrix m(r, c);
  std::size_t i = 0;
  for (const auto& row : rows) {
    std::size_t j = 0;
    for (int v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

/// Plain map with the given blocks (source degree -> matrix).
inline GradedMap plain(const GradedModule& src, const GradedModule& tgt, int degree,
                       const std::vector<std::pair<int, Matrix>>& blocks) {
  GradedMap f(src, tgt, degree);
  for (const auto& [p, b] : blocks) f.set_block({0, 0}, p, b);
  return f;
}

/// Composition computed entry by entry: (f g)_{m} = sum over m_f + m_g = m of f_{m_f} g_{m_g}.
inline GradedMap naive_compose(const GradedMap& f, const GradedMap& g) {
  GradedMap out(g.source(), f.target(), f.degree() + g.degree());
  const Context& ctx = f.context();
  for (const auto& [mg, pg] : g.components())
    for (const auto& [p, b] : pg) {
      const int q = g.target_degree(mg, p);
      for (const auto& [mf, pf] : f.components()) {
        const Monomial m = mf + mg;
        if (!m.fits(ctx)) continue;
        auto it = pf.find(q);
        if (it == pf.end()) continue;
        const Matrix& a = it->second;
        Matrix prod(a.rows(), b.cols());
        for (std::size_t i = 0; i < a.rows(); ++i)
          for (std::size_t j = 0; j < b.cols(); ++j) {
            Rational acc = 0;
            for (std::size_t l = 0; l < a.cols(); ++l) acc += a(i, l) * b(l, j);
            prod(i, j) = acc;
          }
        out.add_block(m, p, prod);
      }
    }
  return out;
}

/// Rank by column-major elimination on a copy of the entries.
inline std::size_t oracle_rank(const Matrix& m) {
  std::vector<std::vector<Rational>> a(m.cols(), std::vector<Rational>(m.rows()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) a[j][i] = m(i, j);
  std::size_t rank = 0;
  for (std::size_t row = 0; row < m.rows() && rank < a.size(); ++row) {
    std::size_t piv = rank;
    while (piv < a.size() && a[piv][row] == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[piv], a[rank]);
    for (std::size_t c = rank + 1; c < a.size(); ++c) {
      if (a[c][row] == 0) continue;
      const Rational t = a[c][row] / a[rank][row];
      for (std::size_t r = row; r < m.rows(); ++r) a[c][r] -= t * a[rank][r];
    }
    ++rank;
  }
  return rank;
}

/// Homology ranks of the z = eps = 0 part by rank-nullity with oracle_rank.
inline std::map<int, int> oracle_homology(const CurvedComplex& x) {
  std::map<int, int> out;
  const GradedMap& d = x.delta();
  for (const auto& [deg, r] : x.module().ranks()) {
    const int out_rank = static_cast<int>(oracle_rank(d.block({0, 0}, deg)));
    const int in_rank = static_cast<int>(oracle_rank(d.block({0, 0}, deg - 1)));
    if (r - out_rank - in_rank != 0) out[deg] = r - out_rank - in_rank;
  }
  return out;
}

/// C_0 .. C_{n-1} from C_{k+1} = sum_{i+j=k} C_i C_j.
inline std::vector<mpz_class> catalan_recursion(int n) {
  std::vector<mpz_class> c(n);
  if (n > 0) c[0] = 1;
  for (int k = 1; k < n; ++k)
    for (int i = 0; i < k; ++i) c[k] += c[i] * c[k - 1 - i];
  return c;
}

/// Block sizes small enough to keep exhaustive property runs fast.
inline Shape small_shape() { return Shape{-1, 4, 3, 2}; }

/// Random curved complex (curvature z) from a curved filtered instance.
inline CurvedComplex random_curved_complex(Rng& rng, Context ctx) {
  return random_curved_instance(rng, ctx, 1, Shape{-1, 3, 2, 2}).fc.total();
}

}  // namespace hpl::test
