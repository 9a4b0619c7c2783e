#include "hpl/linalg.hpp"

#include <numeric>
#include <utility>

namespace hpl {

namespace {

// Row-reduces in place; returns pivot (row, col) pairs in elimination order.
std::vector<std::pair<std::size_t, std::size_t>> eliminate(Matrix& a) {
  std::vector<std::pair<std::size_t, std::size_t>> piv;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && a(p, c) == 0) ++p;
    if (p == a.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(p, j), a(r, j));
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || a(i, c) == 0) continue;
      Rational factor = a(i, c) / a(r, c);
      for (std::size_t j = c; j < a.cols(); ++j) a(i, j) -= factor * a(r, j);
    }
    piv.emplace_back(r, c);
    ++r;
  }
  return piv;
}

}  // namespace

std::size_t rank(const Matrix& m) {
  Matrix a = m;
  return eliminate(a).size();
}

std::size_t rank_fraction_free(const Matrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::vector<mpz_class>> a(rows, std::vector<mpz_class>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    mpz_class l = 1;
    for (std::size_t j = 0; j < cols; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den_mpz_t());
    for (std::size_t j = 0; j < cols; ++j) a[i][j] = m(i, j).get_num() * (l / m(i, j).get_den());
  }
  mpz_class prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        mpz_class v = a[r][c] * a[i][j] - a[i][c] * a[r][j];
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        a[i][j] = v;
      }
      a[i][c] = 0;
    }
    prev = a[r][c];
    ++r;
  }
  return r;
}

std::optional<Matrix> inverse(const Matrix& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  const std::size_t n = m.rows();
  Matrix aug(n, 2 * n);
  aug.set_block(0, 0, m);
  aug.set_block(0, n, Matrix::identity(n));
  auto piv = eliminate(aug);
  if (piv.size() != n) return std::nullopt;
  for (const auto& [r, c] : piv) {
    if (c >= n) return std::nullopt;
    Rational s = 1 / aug(r, c);
    for (std::size_t j = 0; j < 2 * n; ++j) aug(r, j) *= s;
  }
  return aug.block(0, n, n, n);
}

PivotSet pivots(const Matrix& m) {
  // Column pivots of m are a maximal independent column set; row pivots of the
  // transpose restricted to those columns pick matching rows.
  Matrix a = m;
  auto piv = eliminate(a);
  PivotSet out;
  for (const auto& [r, c] : piv) out.cols.push_back(c);
  Matrix sub(out.cols.size(), m.rows());
  for (std::size_t k = 0; k < out.cols.size(); ++k)
    for (std::size_t i = 0; i < m.rows(); ++i) sub(k, i) = m(i, out.cols[k]);
  auto rpiv = eliminate(sub);
  for (const auto& [r, c] : rpiv) out.rows.push_back(c);
  return out;
}

Matrix nullspace(const Matrix& m) {
  Matrix a = m;
  auto piv = eliminate(a);
  std::vector<bool> is_pivot(m.cols(), false);
  for (const auto& [r, c] : piv) is_pivot[c] = true;
  std::vector<std::size_t> free;
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (!is_pivot[c]) free.push_back(c);
  Matrix basis(m.cols(), free.size());
  for (std::size_t k = 0; k < free.size(); ++k) {
    basis(free[k], k) = 1;
    for (const auto& [r, c] : piv) basis(c, k) = -a(r, free[k]) / a(r, c);
  }
  return basis;
}

std::map<int, int> homology_ranks(const CurvedComplex& x) {
  if (!x.curvature().is_zero()) throw CurvatureMismatch("homology of a curved complex is undefined");
  const GradedMap& d = x.delta();
  const GradedModule& m = x.module();
  std::map<int, std::size_t> drank;
  for (const auto& [deg, r] : m.ranks()) drank[deg] = rank_fraction_free(d.block({0, 0}, deg));
  std::map<int, int> out;
  for (const auto& [deg, r] : m.ranks()) {
    auto prev = drank.find(deg - 1);
    int h = r - static_cast<int>(drank[deg]) - (prev == drank.end() ? 0 : static_cast<int>(prev->second));
    if (h != 0) out[deg] = h;
  }
  return out;
}

std::vector<GradedMap> closed_plain_maps(const CurvedComplex& x, const CurvedComplex& y, int degree) {
  if (x.delta().has_z() || x.delta().has_eps() || y.delta().has_z() || y.delta().has_eps())
    throw Error("closed_plain_maps needs plain differentials");
  // Coordinates: one per entry of each block X^p -> Y^{p+degree}.
  struct Slot { int p; std::size_t r, c; };
  std::vector<Slot> slots;
  for (const auto& [p, rs] : x.module().ranks()) {
    int rt = y.module().rank(p + degree);
    for (int r = 0; r < rt; ++r)
      for (int c = 0; c < rs; ++c) slots.push_back({p, std::size_t(r), std::size_t(c)});
  }
  auto unit = [&](std::size_t k) {
    GradedMap e(x.module(), y.module(), degree);
    Matrix b(y.module().rank(slots[k].p + degree), x.module().rank(slots[k].p));
    b(slots[k].r, slots[k].c) = 1;
    e.set_block({0, 0}, slots[k].p, std::move(b));
    return e;
  };
  // Image coordinates: entries of hom_diff(e), which is a plain map of degree + 1.
  std::vector<std::pair<int, std::pair<std::size_t, std::size_t>>> rows;
  std::map<std::pair<int, std::pair<std::size_t, std::size_t>>, std::size_t> row_index;
  for (const auto& [p, rs] : x.module().ranks()) {
    int rt = y.module().rank(p + degree + 1);
    for (int r = 0; r < rt; ++r)
      for (int c = 0; c < rs; ++c) {
        row_index[{p, {std::size_t(r), std::size_t(c)}}] = rows.size();
        rows.push_back({p, {std::size_t(r), std::size_t(c)}});
      }
  }
  Matrix a(rows.size(), slots.size());
  for (std::size_t k = 0; k < slots.size(); ++k) {
    GradedMap de = hom_diff(x, y, unit(k));
    for (const auto& [mono, plain] : de.components())
      for (const auto& [p, b] : plain)
        for (std::size_t r = 0; r < b.rows(); ++r)
          for (std::size_t c = 0; c < b.cols(); ++c)
            if (b(r, c) != 0) a(row_index.at({p, {r, c}}), k) = b(r, c);
  }
  Matrix ns = nullspace(a);
  std::vector<GradedMap> out;
  for (std::size_t v = 0; v < ns.cols(); ++v) {
    GradedMap f(x.module(), y.module(), degree);
    for (std::size_t k = 0; k < slots.size(); ++k)
      if (ns(k, v) != 0) f += ns(k, v) * unit(k);
    out.push_back(std::move(f));
  }
  return out;
}

}  // namespace hpl
