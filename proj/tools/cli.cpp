#include "cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <optional>
#include <ostream>

#include "hpl/errors.hpp"
#include "hpl/linalg.hpp"
#include "hpl/random.hpp"
#include "hpl/reduce.hpp"

namespace hpl::cli {

namespace {

Bundle load(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw InvalidData("cannot read '" + path + "'");
  return Bundle::from_json(json::parse(f));
}

void save(const Bundle& b, const std::string& path) {
  if (path.empty()) return;
  std::ofstream f(path);
  if (!f) throw InvalidData("cannot write '" + path + "'");
  f << b.dump();
}

void emit(std::ostream& out, const json& j) { out << j.dump(2) << "\n"; }

const CurvedComplex& valid_complex(const Bundle& b, const std::string& name) {
  const CurvedComplex& x = b.complex(name);
  if (!x.curvature_residual().is_zero()) throw InvalidData("complex '" + name + "' violates d^2 = w");
  return x;
}

json ranks_json(const std::map<int, int>& ranks) {
  json out = json::array();
  for (const auto& [d, r] : ranks) out.push_back({{"degree", d}, {"rank", r}});
  return out;
}

Scalar shift_scalar(const Context& ctx, const std::string& coeff) {
  return rational_from_json(json(coeff)) * Scalar::z(ctx);
}

Report verify_equivalence(const Bundle& b, const std::string& name) {
  const std::string& kind = b.equiv_record(name).kind;
  if (kind == "he") return validate_he(b.he(name));
  if (kind == "zhe") return validate_zhe(b.zhe(name));
  return validate_she(b.she(name));
}

Report verify_filtered(const Bundle& b, const std::string& name) {
  const auto& rec = b.filtered_record(name);
  FilteredComplex fc = b.filtered(name);
  Report r = validate_filtered(fc, rec.ideal);
  for (std::size_t i = 0; i < rec.equivalences.size(); ++i) {
    const auto& e = b.equiv_record(rec.equivalences[i]);
    if (i >= rec.summands.size() || e.x != rec.summands[i])
      throw InvalidData("filtered complex '" + name + "': equivalence " + rec.equivalences[i] +
                        " does not start at its summand");
    r.merge(rec.equivalences[i] + ": ", verify_equivalence(b, rec.equivalences[i]));
  }
  return r;
}

Report verify_perturbation(const Bundle& b, const std::string& name) {
  const auto& rec = b.perturbation_record(name);
  const CurvedComplex& x = b.complex(rec.base_source);
  const CurvedComplex& y = b.complex(rec.base_target);
  const CurvedComplex& src = b.complex(rec.source);
  const CurvedComplex& tgt = b.complex(rec.target);
  const auto& ar = b.map_record(rec.alpha);
  const auto& br = b.map_record(rec.beta);
  if (ar.source != rec.base_source || ar.target != rec.base_source || br.source != rec.base_target ||
      br.target != rec.base_target)
    throw InvalidData("perturbation '" + name + "': twist maps do not act on the base complexes");
  const GradedMap& alpha = ar.map;
  const GradedMap& beta = br.map;
  const Scalar curvature = x.curvature() + rec.shift;

  Report r;
  r.add("d(alpha) + alpha^2 = s", maurer_cartan_residual(x, alpha, curvature));
  r.add("d(beta) + beta^2 = s", maurer_cartan_residual(y, beta, curvature));
  r.add("source = tw_alpha(X)", src.delta() - (x.delta() + alpha));
  r.add("target = tw_beta(Y)", tgt.delta() - (y.delta() + beta));
  if (!(src.curvature() == curvature) || !(tgt.curvature() == curvature))
    throw InvalidData("perturbation '" + name + "': twisted complexes have the wrong curvature");

  if (rec.mode == "zhe") {
    if (rec.fgh.size() != 3) throw InvalidData("perturbation '" + name + "' needs maps F, G, H");
    const GradedMap& F = b.map_record(rec.fgh[0]).map;
    const GradedMap& G = b.map_record(rec.fgh[1]).map;
    const GradedMap& H = b.map_record(rec.fgh[2]).map;
    r.add("d(F) = 0", hom_diff(src, tgt, F));
    r.add("d(G) = 0", hom_diff(tgt, src, G));
    r.add("d(H) = 1 - GF", hom_diff(src, H) - (GradedMap::identity(src.module()) - G * F));
    return r;
  }
  const auto& er = b.equiv_record(rec.equivalence);
  if (er.x != rec.source || er.y != rec.target)
    throw InvalidData("perturbation '" + name + "': equivalence does not join the twisted complexes");
  if (er.kind == "he") {
    r.merge("", validate_he(b.he(rec.equivalence)));
    return r;
  }
  const SHEData she = b.she(rec.equivalence);
  r.merge("", validate_she(she));
  const Context c = she.context();
  const CurvedComplex yc = y.with_context(c);
  const GradedMap bk = beta.with_context(c) + she.k.times({0, 1});
  const GradedMap id = GradedMap::identity(yc.module());
  r.add("d(beta + eps K) + (beta + eps K)^2 = s + eps(1 - FG)",
        hom_diff(yc, bk) + bk * bk - id.scaled(rec.shift.with_context(c), 2) -
            (id - she.f * she.g).times({0, 1}));
  return r;
}

// ------------------------------------------------------------------ commands

struct Common {
  std::string in, out, name;
  int cap = 64;
};

int cmd_generate(const GenerateOptions& opts, const std::string& out_path, std::ostream& out) {
  Bundle b = generate_bundle(opts);
  if (out_path.empty())
    out << b.dump();
  else
    save(b, out_path);
  return kPass;
}

int cmd_verify(const Common& c, const std::string& what, std::ostream& out) {
  Bundle b = load(c.in);
  bool ok = true;
  json checks = verify_bundle(b, what, ok);
  json result = {{"command", "verify"}, {"ok", ok}, {"objects", checks}};
  if (c.out.empty())
    emit(out, result);
  else {
    std::ofstream f(c.out);
    if (!f) throw InvalidData("cannot write '" + c.out + "'");
    f << result.dump(2) << "\n";
  }
  return ok ? kPass : kVerificationFailure;
}

int cmd_twist(const Common& c, const std::string& complex, const std::string& map, const std::string& shift,
              std::ostream& out) {
  Bundle b = load(c.in);
  const CurvedComplex& x = valid_complex(b, complex);
  const auto& rec = b.map_record(map);
  if (rec.source != complex || rec.target != complex)
    throw InvalidData("map '" + map + "' is not an endomorphism of '" + complex + "'");
  const Scalar curvature = x.curvature() + shift_scalar(b.context(), shift);
  Report r;
  r.add("d(alpha) + alpha^2 = s", maurer_cartan_residual(x, rec.map, curvature));
  const std::string name = c.name.empty() ? "tw_" + complex : c.name;
  if (r.ok()) {
    b.put_complex(name, twist(x, rec.map, curvature));
    save(b, c.out);
  }
  emit(out, {{"command", "twist"}, {"ok", r.ok()}, {"name", name}, {"report", to_json(r)}});
  return r.ok() ? kPass : kVerificationFailure;
}

int cmd_cone(const Common& c, const std::string& map, std::ostream& out) {
  Bundle b = load(c.in);
  const auto& rec = b.map_record(map);
  const CurvedComplex& x = valid_complex(b, rec.source);
  const CurvedComplex& y = valid_complex(b, rec.target);
  Cone cn = cone(x, y, rec.map);
  Report r;
  r.add("d^2 = w", cn.complex.curvature_residual());
  const std::string name = c.name.empty() ? "cone_" + map : c.name;
  b.put_complex(name, cn.complex);
  save(b, c.out);
  emit(out, {{"command", "cone"}, {"ok", r.ok()}, {"name", name}, {"report", to_json(r)}});
  return r.ok() ? kPass : kVerificationFailure;
}

int cmd_promote(const Common& c, const std::string& he_name, int eps_order, std::ostream& out) {
  Bundle b = load(c.in);
  const auto& rec = b.equiv_record(he_name);
  HEData he = b.he(he_name);
  Promotion p = promote_he_to_she(he, eps_order);
  Report r = validate_she(p.she);
  HEData zero = at_eps_zero(p.she);
  const Context ctx = p.she.context();
  r.add("eps = 0 part: f = f0", zero.f - he.f.with_context(ctx));
  r.add("eps = 0 part: g = g0", zero.g - he.g.with_context(ctx));
  r.add("eps = 0 part: h = corrected h0", zero.h - p.h_corrected);
  r.add("eps = 0 part: k = k0", zero.k - he.k.with_context(ctx));
  const std::string name = c.name.empty() ? he_name + "_she" : c.name;
  b.put_she(name, rec.x, rec.y, p.she);
  b.put_map(name + ".h_corrected", rec.x, rec.x, p.h_corrected);
  b.put_map(name + ".m", rec.x, rec.y, p.m);
  save(b, c.out);
  emit(out, {{"command", "promote"}, {"ok", r.ok()}, {"name", name}, {"report", to_json(r)}});
  return r.ok() ? kPass : kVerificationFailure;
}

struct PerturbArgs {
  std::string mode, equiv, alpha, filtered, ideal, shift;
  std::optional<int> eps_order;
};

int cmd_perturb(const Common& c, const PerturbArgs& a, std::ostream& out) {
  Bundle b = load(c.in);
  const Context ctx = b.context();
  const auto& er = b.equiv_record(a.equiv);
  valid_complex(b, er.x);
  valid_complex(b, er.y);
  const auto& ar = b.map_record(a.alpha);
  if (ar.source != er.x || ar.target != er.x)
    throw InvalidData("twist '" + a.alpha + "' is not an endomorphism of '" + er.x + "'");

  IdealSpec ideal;
  Scalar s(ctx);
  if (!a.filtered.empty()) {
    const auto& fr = b.filtered_record(a.filtered);
    FilteredComplex fc = b.filtered(a.filtered);
    if (!(fc.layout().total() == b.complex(er.x).module()))
      throw InvalidData("filtered complex '" + a.filtered + "' does not decompose '" + er.x + "'");
    ideal = IdealSpec{a.ideal.empty() ? fr.ideal : parse_ideal_kind(a.ideal), fc.filtration()};
    s = fr.twist_curvature;
  } else {
    ideal.kind = a.ideal.empty() ? IdealKind::adic : parse_ideal_kind(a.ideal);
    if (ideal.kind != IdealKind::adic) throw InvalidData("--ideal " + a.ideal + " needs --filtered");
  }
  if (!a.shift.empty()) s = shift_scalar(ctx, a.shift);
  const bool curved = !s.is_zero();

  const std::string name = c.name.empty() ? "p" : c.name;
  Bundle::PerturbationRecord pr;
  pr.mode = a.mode;
  pr.base_source = er.x;
  pr.base_target = er.y;
  pr.source = name + ".source";
  pr.target = name + ".target";
  pr.alpha = a.alpha;
  pr.beta = name + ".beta";
  pr.shift = s;

  auto promoted = [&](int order) {
    if (er.kind == "she") return b.she(a.equiv);
    if (er.kind != "he") throw InvalidData("mode " + a.mode + " needs a he or she equivalence");
    return promote_he_to_she(b.he(a.equiv), order).she;
  };
  const int out_order = a.eps_order.value_or(ctx.eps_order);
  Report report;
  GradedMap beta;
  if (a.mode == "simple") {
    if (curved) throw InvalidData("mode simple is uncurved; use --mode curved");
    HEPerturbation p = simple_perturb(b.he(a.equiv), ar.map, ideal, c.cap);
    b.put_complex(pr.source, p.he.x);
    b.put_complex(pr.target, p.he.y);
    b.put_he(name, pr.source, pr.target, p.he);
    pr.equivalence = name;
    beta = p.beta;
    report = p.report;
  } else if (a.mode == "markl" || a.mode == "curved") {
    if (a.mode == "markl" && curved) throw InvalidData("mode markl is uncurved; use --mode curved");
    SHEData she = promoted(required_input_eps_order(ctx, curved, out_order));
    const Context sc = she.context();
    PerturbOptions opts{c.cap, out_order};
    SHEPerturbation p = curved_perturb(she, ar.map.with_context(sc), s.with_context(sc), ideal, opts);
    b.put_complex(pr.source, p.she.x);
    b.put_complex(pr.target, p.she.y);
    b.put_she(name, pr.source, pr.target, p.she);
    pr.equivalence = name;
    beta = p.beta;
    report = p.report;
  } else if (a.mode == "zhe") {
    ZHEData zhe;
    if (er.kind == "zhe") {
      zhe = b.zhe(a.equiv);
      if (!a.shift.empty() && !(zhe.z == s)) throw InvalidData("--shift disagrees with the equivalence's z");
      s = zhe.z;
      pr.shift = s;
    } else {
      SHEData she = promoted(ctx.z_order);
      zhe = specialize_she(she, s.with_context(she.context()));
      static_cast<Equivalence&>(zhe) = with_context(zhe, ctx);
      zhe.z = s;
    }
    ZHEPerturbation p = perturb_zhe(zhe, ar.map, ideal, c.cap);
    b.put_complex(pr.source, p.source);
    b.put_complex(pr.target, p.target);
    b.put_map(name + ".F", pr.source, pr.target, p.F);
    b.put_map(name + ".G", pr.target, pr.source, p.G);
    b.put_map(name + ".H", pr.source, pr.source, p.H);
    pr.fgh = {name + ".F", name + ".G", name + ".H"};
    beta = p.beta;
    report = p.report;
  } else {
    throw InvalidData("unknown mode '" + a.mode + "'");
  }
  b.put_map(pr.beta, er.y, er.y, beta);
  b.put_perturbation(name, pr);
  b.put_report(name, to_json(report));
  save(b, c.out);
  emit(out, {{"command", "perturb"}, {"mode", a.mode}, {"ok", report.ok()}, {"name", name},
             {"report", to_json(report)}});
  return report.ok() ? kPass : kVerificationFailure;
}

int cmd_reduce(const Common& c, const std::string& complex, const std::string& poset, std::ostream& out) {
  Bundle b = load(c.in);
  if (complex.empty() == poset.empty()) throw InvalidData("reduce needs exactly one of --complex, --poset");
  json result = {{"command", "reduce"}};
  bool ok = true;
  auto compare_homology = [&](const CurvedComplex& x, const CurvedComplex& y) {
    if (!x.curvature().is_zero()) return;
    auto hx = homology_ranks(x), hy = homology_ranks(y);
    result["homology"] = {{"source", ranks_json(hx)}, {"target", ranks_json(hy)}, {"agree", hx == hy}};
    ok = ok && hx == hy;
  };
  if (!complex.empty()) {
    const CurvedComplex& x = valid_complex(b, complex);
    Reduction r = reduce_complex(x, c.cap);
    const std::string name = c.name.empty() ? complex + "_min" : c.name;
    b.put_complex(name, r.reduced);
    b.put_he(name, complex, name, r.he);
    b.put_report(name, to_json(r.report));
    compare_homology(x, r.reduced);
    ok = ok && r.report.ok();
    result["name"] = name;
    result["passes"] = r.passes;
    result["report"] = to_json(r.report);
  } else {
    const auto& rec = b.filtered_record(poset);
    FilteredComplex fc = b.filtered(poset);
    if (rec.equivalences.size() != fc.summands.size())
      throw InvalidData("filtered complex '" + poset + "' needs one equivalence per summand");
    std::vector<HEData> hes;
    std::vector<std::string> ys;
    for (const auto& e : rec.equivalences) {
      hes.push_back(b.he(e));
      ys.push_back(b.equiv_record(e).y);
    }
    for (const auto& s : rec.summands) valid_complex(b, s);
    PosetReduction pr = poset_reduce(fc, hes, rec.ideal, c.cap);
    const std::string name = c.name.empty() ? poset + "_red" : c.name;
    b.put_complex(name + ".source", pr.he.x);
    b.put_complex(name + ".target", pr.he.y);
    b.put_he(name, name + ".source", name + ".target", pr.he);
    const IdealKind beta_kind =
        rec.ideal == IdealKind::triangular && fc.twist_curvature.is_zero() ? IdealKind::triangular : IdealKind::sum;
    b.put_filtered(name + ".reduced", pr.reduced, ys, beta_kind);
    b.put_report(name, to_json(pr.report));
    compare_homology(pr.he.x, pr.he.y);
    ok = ok && pr.report.ok();
    result["name"] = name;
    result["report"] = to_json(pr.report);
  }
  result["ok"] = ok;
  save(b, c.out);
  emit(out, result);
  return ok ? kPass : kVerificationFailure;
}

int cmd_homology(const Common& c, const std::string& complex, std::ostream& out) {
  Bundle b = load(c.in);
  const CurvedComplex& x = valid_complex(b, complex);
  emit(out, {{"command", "homology"}, {"complex", complex}, {"homology", ranks_json(homology_ranks(x))}});
  return kPass;
}

}  // namespace

Bundle generate_bundle(const GenerateOptions& o) {
  const Context ctx{o.z_order, o.eps_order};
  require_valid(ctx);
  if (o.pieces < 1 || o.pieces > 6) throw InvalidData("pieces must be between 1 and 6");
  Rng rng(o.seed);
  if (o.span < 1 || o.span > 6 || o.max_rank < 1 || o.max_rank > 4)
    throw InvalidData("span must be in [1, 6] and max rank in [1, 4]");
  // Curved summands pair P[1] with P, which adds one degree.
  if (o.ideal == IdealKind::sum && o.span > 5) throw InvalidData("span must be at most 5 for the sum ideal");
  const Shape piece{-(o.span / 2), o.span, o.max_rank, 2};
  FilteredInstance inst;
  switch (o.ideal) {
    case IdealKind::triangular:
      inst = random_triangular_instance(rng, ctx, o.pieces, piece);
      break;
    case IdealKind::sum:
      inst = random_curved_instance(rng, ctx, std::max(1, o.pieces / 2), piece);
      break;
    case IdealKind::adic: {
      inst.kind = IdealKind::adic;
      HEData he = random_he(rng, ctx, piece);
      inst.hes = {he};
      inst.fc.poset = Poset::chain(1);
      inst.fc.summands = {he.x};
      inst.fc.alpha = random_adic_twist(rng, he.x);
      inst.fc.twist_curvature = Scalar(ctx);
      break;
    }
  }
  Bundle b(ctx);
  std::vector<std::string> xs, hs;
  for (std::size_t i = 0; i < inst.hes.size(); ++i) {
    const std::string k = std::to_string(i);
    b.put_complex("X" + k, inst.hes[i].x);
    b.put_complex("Y" + k, inst.hes[i].y);
    b.put_he("he" + k, "X" + k, "Y" + k, inst.hes[i]);
    xs.push_back("X" + k);
    hs.push_back("he" + k);
  }
  HEData sum = direct_sum(inst.hes);
  b.put_complex("X", sum.x);
  b.put_complex("Y", sum.y);
  b.put_he("he", "X", "Y", sum);
  b.put_map("alpha", "X", "X", inst.fc.alpha);
  b.put_filtered("fc", inst.fc, xs, inst.kind, hs);
  b.put_report("generate", {{"seed", std::to_string(o.seed)}, {"ideal", to_string(o.ideal)}, {"pieces", o.pieces}});
  return b;
}

json verify_bundle(const Bundle& b, const std::string& what, bool& ok) {
  json out = json::object();
  ok = true;
  bool found = false;
  auto record = [&](const std::string& key, const Report& r) {
    out[key] = to_json(r);
    ok = ok && r.ok();
    found = true;
  };
  auto wanted = [&](const std::string& n) { return what.empty() || what == n; };
  for (const auto& [n, x] : b.complexes())
    if (wanted(n)) {
      Report r;
      r.add("d^2 = w", x.curvature_residual());
      record("complex/" + n, r);
    }
  for (const auto& [n, e] : b.equivalences())
    if (wanted(n)) record(e.kind + "/" + n, verify_equivalence(b, n));
  for (const auto& [n, f] : b.filtered_records())
    if (wanted(n)) record("filtered/" + n, verify_filtered(b, n));
  for (const auto& [n, p] : b.perturbations())
    if (wanted(n)) record("perturbation/" + n, verify_perturbation(b, n));
  if (!found && !what.empty()) throw InvalidData("nothing named '" + what + "' in the bundle");
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact curved homological perturbation toolkit", "hplkit"};
  app.require_subcommand(1);
  const std::vector<std::string> ideals{"adic", "triangular", "sum"};

  GenerateOptions gen_opts;
  std::string gen_ideal = "triangular", gen_out;
  auto* gen = app.add_subcommand("generate", "Write a deterministic random instance bundle");
  gen->add_option("--seed", gen_opts.seed, "Random seed");
  gen->add_option("--z-order", gen_opts.z_order, "z truncation order")->check(CLI::Range(1, 16));
  gen->add_option("--eps-order", gen_opts.eps_order, "eps truncation order")->check(CLI::Range(1, 16));
  gen->add_option("--ideal", gen_ideal, "Ideal containing the twist")->check(CLI::IsMember(ideals));
  gen->add_option("--pieces", gen_opts.pieces, "Number of summands")->check(CLI::Range(1, 6));
  gen->add_option("--span", gen_opts.span, "Degree span of each summand")->check(CLI::Range(1, 6));
  gen->add_option("--max-rank", gen_opts.max_rank, "Rank bound per degree of each summand")->check(CLI::Range(1, 4));
  gen->add_option("--out", gen_out, "Output bundle (default stdout)");

  Common common;
  auto add_common = [&](CLI::App* sub, bool writes) {
    sub->add_option("--in", common.in, "Input bundle")->required();
    sub->add_option("--out", common.out, writes ? "Updated bundle" : "Report file");
    if (writes) sub->add_option("--name", common.name, "Name for the new objects");
  };

  std::string what;
  auto* ver = app.add_subcommand("verify", "Check every equation of the objects in a bundle");
  add_common(ver, false);
  ver->add_option("--what", what, "Only this object");

  std::string complex, map, shift = "0";
  auto* tw = app.add_subcommand("twist", "Twist a complex by a Maurer-Cartan element");
  add_common(tw, true);
  tw->add_option("--complex", complex, "Complex to twist")->required();
  tw->add_option("--map", map, "Twist alpha")->required();
  tw->add_option("--shift", shift, "New curvature is w + shift * z");

  auto* cn = app.add_subcommand("cone", "Mapping cone of a closed degree 0 map");
  add_common(cn, true);
  cn->add_option("--map", map, "Closed degree 0 map")->required();

  std::string he_name;
  int promote_order = 6;
  auto* pro = app.add_subcommand("promote", "Lift a homotopy equivalence to a strong one");
  add_common(pro, true);
  pro->add_option("--he", he_name, "Homotopy equivalence record")->required();
  pro->add_option("--eps-order", promote_order, "eps truncation order of the result")->check(CLI::Range(1, 16));

  PerturbArgs pa;
  int perturb_order = 0;
  auto* per = app.add_subcommand("perturb", "Transfer a twist along an equivalence");
  add_common(per, true);
  per->add_option("--mode", pa.mode)->required()->check(CLI::IsMember({"simple", "markl", "curved", "zhe"}));
  per->add_option("--equiv", pa.equiv, "he, zhe or she record")->required();
  per->add_option("--alpha", pa.alpha, "Twist of the source")->required();
  per->add_option("--filtered", pa.filtered, "Filtered complex giving the triangular structure");
  per->add_option("--ideal", pa.ideal, "Override the ideal of the filtered record")->check(CLI::IsMember(ideals));
  per->add_option("--shift", pa.shift, "Twist curvature coefficient of z");
  per->add_option("--cap", common.cap, "Neumann series cap")->check(CLI::Range(1, 100000));
  auto* per_order = per->add_option("--eps-order", perturb_order, "Output eps order")->check(CLI::Range(1, 16));

  std::string poset;
  auto* red = app.add_subcommand("reduce", "Reduce a complex, or a filtered complex summand-wise");
  add_common(red, true);
  red->add_option("--complex", complex, "Uncurved complex to minimize");
  red->add_option("--poset", poset, "Filtered complex with one equivalence per summand");
  red->add_option("--cap", common.cap, "Neumann series cap")->check(CLI::Range(1, 100000));

  auto* hom = app.add_subcommand("homology", "Homology ranks of an uncurved complex");
  hom->add_option("--in", common.in, "Input bundle")->required();
  hom->add_option("--complex", complex, "Complex name")->required();

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kPass : kInputError;
  }

  try {
    if (gen->parsed()) {
      gen_opts.ideal = parse_ideal_kind(gen_ideal);
      return cmd_generate(gen_opts, gen_out, out);
    }
    if (ver->parsed()) return cmd_verify(common, what, out);
    if (tw->parsed()) return cmd_twist(common, complex, map, shift, out);
    if (cn->parsed()) return cmd_cone(common, map, out);
    if (pro->parsed()) return cmd_promote(common, he_name, promote_order, out);
    if (per->parsed()) {
      if (per_order->count()) pa.eps_order = perturb_order;
      return cmd_perturb(common, pa, out);
    }
    if (red->parsed()) return cmd_reduce(common, complex, poset, out);
    if (hom->parsed()) return cmd_homology(common, complex, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const json::exception& e) {
    err << "error: malformed bundle: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace hpl::cli
