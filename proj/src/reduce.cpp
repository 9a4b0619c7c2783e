#include "hpl/reduce.hpp"

#include <algorithm>

#include "hpl/errors.hpp"
#include "hpl/linalg.hpp"

namespace hpl {

namespace {

GradedMap plain_map(const GradedModule& src, const GradedModule& tgt, int degree,
                    const std::map<int, Matrix>& blocks) {
  GradedMap out(src, tgt, degree);
  for (const auto& [d, b] : blocks) out.set_block({0, 0}, d, b);
  return out;
}

GradedModule single(const Context& ctx, int degree, int rank) {
  return rank > 0 ? GradedModule(ctx, {{degree, rank}}) : GradedModule(ctx);
}

struct Pass {
  FilteredComplex fc;
  std::vector<HEData> hes;
  GradedMap perm;  // x -> fc.base() module, a permutation in each degree
};

// Pieces in chain order: X^j (j < k), B = X^k \ Q, C = (X^k_Q -> X^{k+1}_P),
// B' = X^{k+1} \ P, X^j (j > k + 1).
Pass build_pass(const CurvedComplex& x, int k, const PivotSet& piv) {
  const Context& ctx = x.context();
  const GradedModule& m = x.module();
  const GradedMap& d = x.delta();
  const int rk = m.rank(k), rk1 = m.rank(k + 1);
  const std::size_t r = piv.cols.size();

  std::vector<std::size_t> q = piv.cols, p = piv.rows;
  std::sort(q.begin(), q.end());
  std::sort(p.begin(), p.end());
  std::vector<std::size_t> q_rest, p_rest;
  for (int i = 0; i < rk; ++i)
    if (!std::binary_search(q.begin(), q.end(), static_cast<std::size_t>(i))) q_rest.push_back(i);
  for (int i = 0; i < rk1; ++i)
    if (!std::binary_search(p.begin(), p.end(), static_cast<std::size_t>(i))) p_rest.push_back(i);

  // Permutations: new order in degree k is q_rest then q; in degree k+1 it is p then p_rest.
  auto perm_matrix = [](const std::vector<std::size_t>& order) {
    Matrix out(order.size(), order.size());
    for (std::size_t i = 0; i < order.size(); ++i) out(i, order[i]) = 1;
    return out;
  };
  std::vector<std::size_t> ok = q_rest, ok1 = p;
  ok.insert(ok.end(), q.begin(), q.end());
  ok1.insert(ok1.end(), p_rest.begin(), p_rest.end());
  std::map<int, Matrix> pm, pm_inv;
  for (const auto& [deg, rank] : m.ranks()) {
    Matrix mat = deg == k ? perm_matrix(ok) : deg == k + 1 ? perm_matrix(ok1) : Matrix::identity(rank);
    Matrix tr(mat.cols(), mat.rows());
    for (std::size_t i = 0; i < mat.rows(); ++i)
      for (std::size_t j = 0; j < mat.cols(); ++j) tr(j, i) = mat(i, j);
    pm[deg] = mat;
    pm_inv[deg] = tr;
  }
  const GradedMap P = plain_map(m, m, 0, pm);
  const GradedMap P_inv = plain_map(m, m, 0, pm_inv);
  const GradedMap dp = P * d * P_inv;

  Pass out;
  std::vector<GradedModule> mods;
  std::vector<std::string> names;
  std::size_t c_index = 0;
  auto add = [&](GradedModule mod, std::string name) {
    if (mod.empty()) return;
    mods.push_back(std::move(mod));
    names.push_back(std::move(name));
  };
  for (const auto& [deg, rank] : m.ranks())
    if (deg < k) add(single(ctx, deg, rank), "X" + std::to_string(deg));
  add(single(ctx, k, static_cast<int>(q_rest.size())), "B" + std::to_string(k));
  c_index = mods.size();
  add(GradedModule(ctx, {{k, static_cast<int>(r)}, {k + 1, static_cast<int>(r)}}), "C" + std::to_string(k));
  add(single(ctx, k + 1, static_cast<int>(p_rest.size())), "B" + std::to_string(k + 1));
  for (const auto& [deg, rank] : m.ranks())
    if (deg > k + 1) add(single(ctx, deg, rank), "X" + std::to_string(deg));

  Decomposition layout(mods);
  std::vector<std::pair<std::size_t, std::size_t>> covers;
  for (std::size_t i = 1; i < mods.size(); ++i) covers.emplace_back(i - 1, i);
  out.fc.poset = Poset(names, covers);

  for (std::size_t i = 0; i < mods.size(); ++i) {
    GradedMap self = block(dp, layout, i, layout, i);
    if (i != c_index) {
      if (!self.is_zero()) throw Error("reduce: unexpected differential inside a single-degree piece");
      CurvedComplex piece = CurvedComplex::trivial(mods[i]);
      out.fc.summands.push_back(piece);
      out.hes.push_back(identity_he(piece));
      continue;
    }
    CurvedComplex piece(self, Scalar(ctx));
    const Matrix phi = self.block({0, 0}, k);
    auto phi_inv = inverse(phi);
    if (!phi_inv) throw Error("reduce: pivot block is singular");
    GradedMap h(mods[i], mods[i], -1);
    h.set_block({0, 0}, k + 1, *phi_inv);
    GradedModule zero(ctx);
    out.fc.summands.push_back(piece);
    out.hes.push_back(HEData{{piece, CurvedComplex::trivial(zero), GradedMap::zero(mods[i], zero, 0),
                              GradedMap::zero(zero, mods[i], 0), h, GradedMap::zero(zero, zero, -1)}});
  }
  const CurvedComplex base = out.fc.base();
  out.fc.alpha = dp - base.delta();
  out.fc.twist_curvature = Scalar(ctx);
  out.perm = P.with_modules(m, base.module());
  return out;
}

}  // namespace

Reduction reduce_complex(const CurvedComplex& x, int cap) {
  if (!x.curvature().is_zero()) throw CurvatureMismatch("reduce: input complex is curved");
  for (const auto& [mono, p] : x.delta().components())
    if (!(mono == Monomial{0, 0})) throw InvalidData("reduce: differential must be plain (no z or eps terms)");

  Reduction out;
  out.he = identity_he(x);
  CurvedComplex cur = x;
  std::vector<int> degrees;
  for (const auto& [deg, rank] : x.module().ranks()) degrees.push_back(deg);
  for (int k : degrees) {
    const Matrix dk = cur.delta().block({0, 0}, k);
    if (dk.is_zero()) continue;
    PivotSet piv = pivots(dk);
    Pass pass = build_pass(cur, k, piv);
    const CurvedComplex total = pass.fc.total();
    const GradedMap perm_inv = [&] {
      GradedMap t(total.module(), cur.module(), 0);
      for (const auto& [deg, blk] : pass.perm.components().at({0, 0})) {
        Matrix tr(blk.cols(), blk.rows());
        for (std::size_t i = 0; i < blk.rows(); ++i)
          for (std::size_t j = 0; j < blk.cols(); ++j) tr(j, i) = blk(i, j);
        t.set_block({0, 0}, deg, tr);
      }
      return t;
    }();
    HEData to_filtered{{cur, total, pass.perm, perm_inv, GradedMap::zero(cur.module(), cur.module(), -1),
                        GradedMap::zero(total.module(), total.module(), -1)}};
    PosetReduction red = poset_reduce(pass.fc, pass.hes, IdealKind::triangular, cap);
    if (!red.report.ok()) throw Error("reduce: poset reduction failed (" + red.report.failures() + ")");
    HEData step = compose(to_filtered, red.he);
    out.he = compose(out.he, step);
    cur = step.y;
    ++out.passes;
  }
  out.reduced = cur;
  out.report = validate_he(out.he);
  out.report.add("reduced differential vanishes at z = eps = 0", out.reduced.delta());
  return out;
}

}  // namespace hpl
