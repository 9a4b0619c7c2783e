#include "hpl/perturb.hpp"

#include "hpl/errors.hpp"

namespace hpl {

namespace {

const char* kBetaNote = "beta + eps K computed as (s + eps) k + f alpha (1 + h alpha)^{-1} g";

void require_ok(const Report& r, const std::string& what) {
  if (!r.ok()) throw InvalidData(what + " (failed: " + r.failures() + ")");
}

void require_mc(const CurvedComplex& x, const GradedMap& alpha, const Scalar& new_curvature) {
  GradedMap res = maurer_cartan_residual(x, alpha, new_curvature);
  if (!res.is_zero())
    throw MaurerCartanError("perturbation does not satisfy the Maurer-Cartan equation for curvature " +
                                new_curvature.to_string(),
                            std::move(res));
}

void require_contraction(const CurvedComplex& x, const GradedMap& h0) {
  if (!(h0.source() == x.module()) || !(h0.target() == x.module()) || h0.degree() != -1)
    throw ShapeMismatch("contraction must be a degree -1 endomorphism");
  if (!(hom_diff(x, h0) == GradedMap::identity(x.module())))
    throw InvalidData("h0 is not a contraction");
}

}  // namespace

Decomposition FilteredComplex::layout() const {
  std::vector<GradedModule> parts;
  for (const auto& s : summands) parts.push_back(s.module());
  return Decomposition(std::move(parts));
}

Filtration FilteredComplex::filtration() const {
  if (poset.size() != summands.size())
    throw ShapeMismatch("filtered complex: poset and summand counts differ");
  return Filtration{poset, layout()};
}

CurvedComplex FilteredComplex::base() const { return direct_sum(summands).complex; }

CurvedComplex FilteredComplex::total() const {
  CurvedComplex b = base();
  return twist(b, alpha, b.curvature() + twist_curvature);
}

Report validate_filtered(const FilteredComplex& fc, IdealKind kind) {
  CurvedComplex b = fc.base();
  Report r;
  r.add("d(alpha) + alpha^2 = s", maurer_cartan_residual(b, fc.alpha, b.curvature() + fc.twist_curvature));
  IdealSpec ideal{kind, fc.filtration()};
  r.add("alpha in " + to_string(kind) + " ideal", ideal.violation(fc.alpha));
  return r;
}

GradedMap perturb_contraction(const CurvedComplex& x, const GradedMap& h0, const GradedMap& alpha,
                              const IdealSpec& ideal, int cap) {
  require_contraction(x, h0);
  require_mc(x, alpha, x.curvature());
  return h0 * neumann_inverse(alpha * h0, ideal, cap);
}

GradedMap perturb_contraction_alt(const CurvedComplex& x, const GradedMap& h0, const GradedMap& alpha,
                                  const IdealSpec& ideal, int cap) {
  require_contraction(x, h0);
  require_mc(x, alpha, x.curvature());
  return neumann_inverse(h0 * alpha, ideal, cap) * h0;
}

ZHEPerturbation perturb_zhe(const ZHEData& zhe, const GradedMap& alpha, const IdealSpec& ideal, int cap) {
  require_ok(validate_zhe(zhe), "perturb_zhe: input is not a z-homotopy equivalence");
  const auto& [x, y, f, g, h, k] = static_cast<const Equivalence&>(zhe);
  const Scalar curvature = x.curvature() + zhe.z;
  require_mc(x, alpha, curvature);
  const GradedMap A = neumann_inverse(alpha * h, ideal, cap);
  const GradedMap B = neumann_inverse(h * alpha, ideal, cap);
  ZHEPerturbation out;
  out.F = f * A;
  out.G = B * g;
  out.H = h * A;
  out.beta = k.scaled(zhe.z, 2) + f * alpha * B * g;
  out.source = twist(x, alpha, curvature);
  out.target = CurvedComplex::unchecked(y.delta() + out.beta, curvature);
  const GradedMap id_x = GradedMap::identity(x.module());
  out.report.add("d(beta) + beta^2 = z", maurer_cartan_residual(y, out.beta, curvature));
  out.report.add("d(F) = 0", hom_diff(out.source, out.target, out.F));
  out.report.add("d(G) = 0", hom_diff(out.target, out.source, out.G));
  out.report.add("d(H) = 1 - GF", hom_diff(out.source, out.H) - (id_x - out.G * out.F));
  out.report.notes.push_back("beta computed as z k + f alpha (1 + h alpha)^{-1} g");
  return out;
}

int required_input_eps_order(const Context& ctx, bool curved, int out) {
  return curved ? ctx.z_order + out : out + 1;
}

SHEPerturbation curved_perturb(const SHEData& she, const GradedMap& alpha, const Scalar& s,
                               const IdealSpec& ideal, const PerturbOptions& opts) {
  const Context in = she.context();
  require_same(alpha.context(), in, "curved_perturb: alpha");
  require_same(s.context(), in, "curved_perturb: curvature");
  if (s.has_eps() || !s.is_homogeneous(2))
    throw InvalidData("curved_perturb: twist curvature must be an eps-free degree 2 scalar");
  if (alpha.has_eps()) throw InvalidData("curved_perturb: alpha must be eps-free");
  require_ok(validate_she(she), "curved_perturb: input is not a strong homotopy equivalence");

  const bool curved = !s.is_zero();
  const int out_order = opts.eps_order ? *opts.eps_order
                                       : (curved ? in.eps_order - in.z_order : in.eps_order - 1);
  if (out_order < 1) throw TruncationError("curved_perturb: output eps order must be at least 1");
  const int needed = required_input_eps_order(in, curved, out_order);
  if (in.eps_order < needed)
    throw TruncationError("curved_perturb: input eps order " + std::to_string(in.eps_order) +
                          " is too small for output order " + std::to_string(out_order) + " (needs " +
                          std::to_string(needed) + ")");

  const CurvedComplex& x = she.x;
  const CurvedComplex& y = she.y;
  const Scalar curvature = x.curvature() + s;
  require_mc(x, alpha, curvature);
  const IdealSpec ideal_in = with_context(ideal, in);
  if (curved && !ideal_in.contains(alpha))
    throw NotInIdeal("curved_perturb: alpha is not in the " + to_string(ideal.kind) + " ideal");

  const Context work{in.z_order, out_order + 1};
  const Context out_ctx{in.z_order, out_order};
  const GradedMap f = she.f.substitute_eps(s).with_context(work);
  const GradedMap g = she.g.substitute_eps(s).with_context(work);
  const GradedMap h = she.h.substitute_eps(s).with_context(work);
  const GradedMap k = she.k.substitute_eps(s).with_context(work);
  const GradedMap a = alpha.with_context(work);
  const Scalar sw = s.with_context(work);
  const IdealSpec ideal_w = with_context(ideal, work);

  const GradedMap A = neumann_inverse(a * h, ideal_w, opts.cap);
  const GradedMap B = neumann_inverse(h * a, ideal_w, opts.cap);
  const GradedMap theta = a * B;
  const GradedMap R = k.scaled(sw, 2) + k.times({0, 1}) + f * theta * g;

  SHEPerturbation out;
  out.beta = R.eps_coefficient(0).with_context(out_ctx);
  const GradedMap F = (f * A).with_context(out_ctx);
  const GradedMap G = (B * g).with_context(out_ctx);
  const GradedMap H = (h * A).with_context(out_ctx);
  const GradedMap K = R.eps_tail().with_context(out_ctx);

  const CurvedComplex xo = x.with_context(out_ctx);
  const CurvedComplex yo = y.with_context(out_ctx);
  const Scalar so = s.with_context(out_ctx);
  const Scalar curv_o = curvature.with_context(out_ctx);
  const CurvedComplex tx = twist(xo, alpha.with_context(out_ctx), curv_o);
  const CurvedComplex ty = CurvedComplex::unchecked(yo.delta() + out.beta, curv_o);
  out.she = SHEData{{tx, ty, F, G, H, K}};

  out.report.merge("", validate_she(out.she));
  out.report.add("d(beta) + beta^2 = s", maurer_cartan_residual(yo, out.beta, curv_o));
  const GradedMap id_y = GradedMap::identity(yo.module());
  const GradedMap bk = out.beta + K.times({0, 1});
  out.report.add("d(beta + eps K) + (beta + eps K)^2 = s + eps(1 - FG)",
                 hom_diff(yo, bk) + bk * bk - id_y.scaled(so, 2) - (id_y - F * G).times({0, 1}));
  out.report.notes.push_back(kBetaNote);
  return out;
}

SHEPerturbation markl_perturb(const SHEData& she, const GradedMap& alpha, const IdealSpec& ideal,
                              const PerturbOptions& opts) {
  return curved_perturb(she, alpha, Scalar(she.context()), ideal, opts);
}

HEPerturbation simple_perturb(const HEData& he, const GradedMap& alpha, const IdealSpec& ideal, int cap) {
  require_ok(validate_he(he), "simple_perturb: input is not a homotopy equivalence");
  const Context ctx = he.context();
  // Promote Y ~ X so that the correction lands on k0 and h0 is kept as is.
  Promotion promo = promote_he_to_she(reversed(he), 2);
  SHEData she = reversed(promo.she);
  const Context pc = she.context();
  SHEPerturbation sp = markl_perturb(she, alpha.with_context(pc), ideal, {cap, 1});

  HEPerturbation out;
  out.he = HEData{with_context(sp.she, ctx)};
  out.beta = sp.beta.with_context(ctx);
  out.report = validate_he(out.he);
  out.report.add("d(beta) + beta^2 = 0", maurer_cartan_residual(he.y, out.beta, he.y.curvature()));
  out.report.notes.push_back("beta computed as f0 alpha (1 + h0 alpha)^{-1} g0");
  return out;
}

PosetReduction poset_reduce(const FilteredComplex& fc, const std::vector<HEData>& hes, IdealKind kind,
                            int cap) {
  if (kind == IdealKind::adic) throw InvalidData("poset_reduce: ideal must be triangular or sum");
  if (hes.size() != fc.summands.size())
    throw ShapeMismatch("poset_reduce: need one homotopy equivalence per summand");
  for (std::size_t i = 0; i < hes.size(); ++i) {
    if (!(hes[i].x == fc.summands[i]))
      throw ShapeMismatch("poset_reduce: equivalence " + std::to_string(i) + " does not start at its summand");
    require_ok(validate_he(hes[i]), "poset_reduce: summand equivalence " + std::to_string(i) + " is invalid");
  }
  const Filtration filt = fc.filtration();
  const IdealSpec ideal{kind, filt};
  GradedMap bad = ideal.violation(fc.alpha);
  if (!bad.is_zero()) throw NotInIdeal("poset_reduce: alpha is not in the " + to_string(kind) + " ideal");

  const Context ctx = fc.context();
  const HEData sum = direct_sum(hes);
  const Scalar& s = fc.twist_curvature;
  PosetReduction out;
  GradedMap beta;
  if (s.is_zero()) {
    HEPerturbation p = simple_perturb(sum, fc.alpha, ideal, cap);
    out.he = p.he;
    beta = p.beta;
    out.report = p.report;
  } else {
    Promotion promo = promote_he_to_she(sum, ctx.z_order + 1);
    const Context pc = promo.she.context();
    SHEPerturbation p = curved_perturb(promo.she, fc.alpha.with_context(pc), s.with_context(pc), ideal,
                                       {cap, 1});
    out.he = HEData{with_context(p.she, ctx)};
    beta = p.beta.with_context(ctx);
    out.report = validate_he(out.he);
    out.report.add("d(beta) + beta^2 = s",
                   maurer_cartan_residual(sum.y, beta, sum.y.curvature() + s));
    out.report.notes.insert(out.report.notes.end(), p.report.notes.begin(), p.report.notes.end());
  }

  std::vector<CurvedComplex> ys;
  for (const auto& e : hes) ys.push_back(e.y);
  out.reduced = FilteredComplex{fc.poset, std::move(ys), beta, s};
  // With nonzero twist curvature the diagonal of beta carries s k terms, so only
  // the plain part can be strictly triangular.
  const IdealKind beta_kind = (kind == IdealKind::triangular && s.is_zero()) ? IdealKind::triangular
                                                                             : IdealKind::sum;
  IdealSpec target_ideal{beta_kind, out.reduced.filtration()};
  out.report.add("beta in " + to_string(beta_kind) + " ideal", target_ideal.violation(beta));
  return out;
}

}  // namespace hpl
