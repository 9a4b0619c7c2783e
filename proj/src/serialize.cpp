#include "hpl/serialize.hpp"

#include "hpl/errors.hpp"

namespace hpl {

namespace {

int get_int(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key) || !j.at(key).is_number_integer())
    throw InvalidData(std::string("expected integer field '") + key + "'");
  return j.at(key).get<int>();
}

const json& get(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InvalidData(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::string get_string(const json& j, const char* key) {
  const json& v = get(j, key);
  if (!v.is_string()) throw InvalidData(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

}  // namespace

json to_json(const Rational& q) { return q.get_str(); }

Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (!j.is_string()) throw InvalidData("rational must be a \"num/den\" string");
  const std::string s = j.get<std::string>();
  const auto slash = s.find('/');
  mpz_class num, den = 1;
  if (num.set_str(s.substr(0, slash), 10) != 0 ||
      (slash != std::string::npos && den.set_str(s.substr(slash + 1), 10) != 0))
    throw InvalidData("malformed rational '" + s + "'");
  if (den == 0) throw InvalidData("zero denominator in '" + s + "'");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

json to_json(const Context& ctx) { return {{"z_order", ctx.z_order}, {"eps_order", ctx.eps_order}}; }

Context context_from_json(const json& j) {
  Context ctx{get_int(j, "z_order"), get_int(j, "eps_order")};
  require_valid(ctx);
  return ctx;
}

json to_json(const Scalar& s) {
  json terms = json::array();
  for (const auto& [m, c] : s.terms())
    terms.push_back({{"i", m.z}, {"j", m.eps}, {"num", c.get_num().get_str()}, {"den", c.get_den().get_str()}});
  return {{"context", to_json(s.context())}, {"terms", terms}};
}

Scalar scalar_from_json(const json& j, Context ctx) {
  Scalar out(ctx);
  for (const auto& t : get(j, "terms")) {
    Monomial m{get_int(t, "i"), get_int(t, "j")};
    if (m.z < 0 || m.eps < 0 || !m.fits(ctx)) throw InvalidData("scalar term outside the truncation");
    Rational c = rational_from_json(json(get_string(t, "num") + "/" + get_string(t, "den")));
    out.set_coeff(m, out.coeff(m) + c);
  }
  return out;
}

json to_json(const GradedModule& m) {
  json out = json::array();
  for (const auto& [d, r] : m.ranks()) out.push_back({{"degree", d}, {"rank", r}});
  return out;
}

GradedModule module_from_json(const json& j, Context ctx) {
  if (!j.is_array()) throw InvalidData("module must be a list of {degree, rank}");
  std::map<int, int> ranks;
  for (const auto& e : j) {
    const int d = get_int(e, "degree"), r = get_int(e, "rank");
    if (r < 0) throw InvalidData("negative rank");
    if (ranks.count(d)) throw InvalidData("degree listed twice in module");
    ranks[d] = r;
  }
  return GradedModule(ctx, ranks);
}

json to_json(const GradedMap& f) {
  json comps = json::array();
  for (const auto& [m, plain] : f.components()) {
    json blocks = json::array();
    for (const auto& [p, b] : plain) {
      json rows = json::array();
      for (std::size_t r = 0; r < b.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < b.cols(); ++c) row.push_back(to_json(b(r, c)));
        rows.push_back(row);
      }
      blocks.push_back({{"p", p}, {"rows", rows}});
    }
    comps.push_back({{"i", m.z}, {"j", m.eps}, {"blocks", blocks}});
  }
  return {{"degree", f.degree()}, {"components", comps}};
}

GradedMap map_from_json(const json& j, const GradedModule& src, const GradedModule& tgt) {
  GradedMap out(src, tgt, get_int(j, "degree"));
  for (const auto& c : get(j, "components")) {
    Monomial m{get_int(c, "i"), get_int(c, "j")};
    if (m.z < 0 || m.eps < 0 || !m.fits(src.context()))
      throw InvalidData("map component z^" + std::to_string(m.z) + " eps^" + std::to_string(m.eps) +
                        " is outside the truncation");
    for (const auto& b : get(c, "blocks")) {
      const int p = get_int(b, "p");
      const json& rows = get(b, "rows");
      const std::size_t nr = rows.size();
      const std::size_t nc = nr ? rows.at(0).size() : 0;
      Matrix mat(nr, nc);
      for (std::size_t r = 0; r < nr; ++r) {
        if (rows.at(r).size() != nc) throw InvalidData("ragged block rows");
        for (std::size_t k = 0; k < nc; ++k) mat(r, k) = rational_from_json(rows.at(r).at(k));
      }
      out.add_block(m, p, mat);
    }
  }
  return out;
}

json to_json(const CurvedComplex& x) {
  return {{"module", to_json(x.module())}, {"delta", to_json(x.delta())}, {"curvature", to_json(x.curvature())}};
}

CurvedComplex complex_from_json(const json& j, Context ctx) {
  GradedModule m = module_from_json(get(j, "module"), ctx);
  GradedMap delta = map_from_json(get(j, "delta"), m, m);
  if (delta.degree() != 1) throw InvalidData("differential must have degree 1");
  return CurvedComplex::unchecked(delta, scalar_from_json(get(j, "curvature"), ctx));
}

json to_json(const Report& r) {
  json checks = json::array();
  for (const auto& c : r.checks) {
    json e = {{"name", c.name}, {"ok", c.ok()}};
    if (!c.ok()) e["residual"] = to_json(c.residual);
    checks.push_back(e);
  }
  return {{"ok", r.ok()}, {"checks", checks}, {"notes", r.notes}};
}

// ---------------------------------------------------------------- Bundle

void Bundle::put_complex(const std::string& name, const CurvedComplex& x) {
  complexes_[name] = x.with_context(ctx_);
}

void Bundle::put_map(const std::string& name, const std::string& source, const std::string& target,
                     const GradedMap& f) {
  complex(source);
  complex(target);
  maps_[name] = MapRecord{source, target, f.with_context(ctx_)};
}

void Bundle::put_he(const std::string& name, const std::string& x, const std::string& y, const HEData& he) {
  complex(x);
  complex(y);
  equivs_[name] = EquivRecord{"he", x, y, 0, he.f.with_context(ctx_), he.g.with_context(ctx_),
                              he.h.with_context(ctx_), he.k.with_context(ctx_), Scalar(ctx_)};
}

void Bundle::put_zhe(const std::string& name, const std::string& x, const std::string& y, const ZHEData& zhe) {
  complex(x);
  complex(y);
  const Context c{ctx_.z_order, 1};
  equivs_[name] = EquivRecord{"zhe", x, y, 0, zhe.f.with_context(c), zhe.g.with_context(c),
                              zhe.h.with_context(c), zhe.k.with_context(c), zhe.z.with_context(ctx_)};
}

void Bundle::put_she(const std::string& name, const std::string& x, const std::string& y, const SHEData& she) {
  complex(x);
  complex(y);
  equivs_[name] = EquivRecord{"she", x, y, she.context().eps_order, she.f, she.g, she.h, she.k, Scalar(ctx_)};
}

void Bundle::put_filtered(const std::string& name, const FilteredComplex& fc,
                          const std::vector<std::string>& summands, IdealKind ideal,
                          const std::vector<std::string>& equivalences) {
  if (summands.size() != fc.summands.size()) throw ShapeMismatch("put_filtered: summand names do not match");
  for (const auto& s : summands) complex(s);
  for (const auto& e : equivalences) equiv_record(e);
  filtered_[name] = FilteredRecord{fc.poset, summands, equivalences, fc.alpha.with_context(ctx_),
                                   fc.twist_curvature.with_context(ctx_), ideal};
}

void Bundle::put_perturbation(const std::string& name, const PerturbationRecord& r) {
  for (const auto& c : {r.base_source, r.base_target, r.source, r.target}) complex(c);
  map_record(r.alpha);
  map_record(r.beta);
  if (!r.equivalence.empty()) equiv_record(r.equivalence);
  for (const auto& m : r.fgh) map_record(m);
  PerturbationRecord copy = r;
  copy.shift = r.shift.with_context(ctx_);
  perturbations_[name] = copy;
}

const Bundle::PerturbationRecord& Bundle::perturbation_record(const std::string& name) const {
  auto it = perturbations_.find(name);
  if (it == perturbations_.end()) throw InvalidData("unknown perturbation '" + name + "'");
  return it->second;
}

const CurvedComplex& Bundle::complex(const std::string& name) const {
  auto it = complexes_.find(name);
  if (it == complexes_.end()) throw InvalidData("unknown complex '" + name + "'");
  return it->second;
}

const Bundle::MapRecord& Bundle::map_record(const std::string& name) const {
  auto it = maps_.find(name);
  if (it == maps_.end()) throw InvalidData("unknown map '" + name + "'");
  return it->second;
}

const Bundle::EquivRecord& Bundle::equiv_record(const std::string& name) const {
  auto it = equivs_.find(name);
  if (it == equivs_.end()) throw InvalidData("unknown equivalence '" + name + "'");
  return it->second;
}

const Bundle::FilteredRecord& Bundle::filtered_record(const std::string& name) const {
  auto it = filtered_.find(name);
  if (it == filtered_.end()) throw InvalidData("unknown filtered complex '" + name + "'");
  return it->second;
}

Equivalence Bundle::load_equivalence(const EquivRecord& r, Context ctx) const {
  CurvedComplex x = complex(r.x).with_context(ctx), y = complex(r.y).with_context(ctx);
  auto fit = [&](const GradedMap& m, const GradedModule& s, const GradedModule& t) {
    return m.with_context(ctx).with_modules(s, t);
  };
  return Equivalence{x, y, fit(r.f, x.module(), y.module()), fit(r.g, y.module(), x.module()),
                     fit(r.h, x.module(), x.module()), fit(r.k, y.module(), y.module())};
}

HEData Bundle::he(const std::string& name) const {
  const auto& r = equiv_record(name);
  if (r.kind != "he") throw InvalidData("'" + name + "' is not a homotopy equivalence");
  return HEData{load_equivalence(r, ctx_)};
}

ZHEData Bundle::zhe(const std::string& name) const {
  const auto& r = equiv_record(name);
  if (r.kind != "zhe") throw InvalidData("'" + name + "' is not a z-homotopy equivalence");
  ZHEData out;
  static_cast<Equivalence&>(out) = load_equivalence(r, ctx_);
  out.z = r.z.with_context(ctx_);
  return out;
}

SHEData Bundle::she(const std::string& name) const {
  const auto& r = equiv_record(name);
  if (r.kind != "she") throw InvalidData("'" + name + "' is not a strong homotopy equivalence");
  return SHEData{load_equivalence(r, Context{ctx_.z_order, r.eps_order})};
}

FilteredComplex Bundle::filtered(const std::string& name) const {
  const auto& r = filtered_record(name);
  FilteredComplex fc;
  fc.poset = r.poset;
  for (const auto& s : r.summands) fc.summands.push_back(complex(s));
  if (fc.summands.empty()) throw InvalidData("filtered complex '" + name + "' has no summands");
  const GradedModule total = fc.layout().total();
  fc.alpha = r.alpha.with_modules(total, total);
  fc.twist_curvature = r.twist_curvature;
  return fc;
}

json Bundle::to_json() const {
  json j;
  j["context"] = hpl::to_json(ctx_);
  json cx = json::object();
  for (const auto& [n, x] : complexes_) cx[n] = hpl::to_json(x);
  j["complexes"] = cx;
  json maps = json::object();
  for (const auto& [n, r] : maps_)
    maps[n] = {{"source", r.source}, {"target", r.target}, {"map", hpl::to_json(r.map)}};
  j["maps"] = maps;
  json he = json::object(), zhe = json::object(), she = json::object();
  for (const auto& [n, r] : equivs_) {
    json e = {{"x", r.x},
              {"y", r.y},
              {"f", hpl::to_json(r.f)},
              {"g", hpl::to_json(r.g)},
              {"h", hpl::to_json(r.h)},
              {"k", hpl::to_json(r.k)}};
    if (r.kind == "he") he[n] = e;
    if (r.kind == "zhe") {
      e["z"] = hpl::to_json(r.z);
      zhe[n] = e;
    }
    if (r.kind == "she") {
      e["eps_order"] = r.eps_order;
      she[n] = e;
    }
  }
  j["he"] = he;
  j["zhe"] = zhe;
  j["she"] = she;
  json filtered = json::object();
  for (const auto& [n, r] : filtered_) {
    json covers = json::array();
    for (const auto& [a, b] : r.poset.covers())
      covers.push_back({r.poset.elements()[a], r.poset.elements()[b]});
    std::vector<GradedModule> parts;
    for (const auto& s : r.summands) parts.push_back(complex(s).module());
    Decomposition L(parts);
    const GradedMap alpha = r.alpha.with_modules(L.total(), L.total());
    json blocks = json::array();
    for (std::size_t i = 0; i < L.size(); ++i)
      for (std::size_t k = 0; k < L.size(); ++k) {
        GradedMap b = block(alpha, L, k, L, i);
        if (b.is_zero()) continue;
        blocks.push_back({{"from", r.poset.elements()[i]}, {"to", r.poset.elements()[k]}, {"map", hpl::to_json(b)}});
      }
    filtered[n] = {{"poset", {{"elements", r.poset.elements()}, {"covers", covers}}},
                   {"summands", r.summands},
                   {"equivalences", r.equivalences},
                   {"blocks", blocks},
                   {"twist_curvature", hpl::to_json(r.twist_curvature)},
                   {"ideal", to_string(r.ideal)}};
  }
  j["filtered"] = filtered;
  json perturbations = json::object();
  for (const auto& [n, r] : perturbations_)
    perturbations[n] = {{"mode", r.mode},
                        {"base_source", r.base_source},
                        {"base_target", r.base_target},
                        {"source", r.source},
                        {"target", r.target},
                        {"alpha", r.alpha},
                        {"beta", r.beta},
                        {"equivalence", r.equivalence},
                        {"fgh", r.fgh},
                        {"shift", hpl::to_json(r.shift)}};
  j["perturbations"] = perturbations;
  json reports = json::object();
  for (const auto& [n, r] : reports_) reports[n] = r;
  j["reports"] = reports;
  return j;
}

Bundle Bundle::from_json(const json& j) {
  if (!j.is_object()) throw InvalidData("bundle must be a JSON object");
  Bundle b(context_from_json(get(j, "context")));
  const json empty = json::object();
  auto section = [&](const char* key) -> const json& {
    if (!j.contains(key)) return empty;
    if (!j.at(key).is_object()) throw InvalidData(std::string("section '") + key + "' must be an object");
    return j.at(key);
  };
  for (const auto& [n, x] : section("complexes").items()) b.complexes_[n] = complex_from_json(x, b.ctx_);
  for (const auto& [n, r] : section("maps").items()) {
    const std::string s = get_string(r, "source"), t = get_string(r, "target");
    b.maps_[n] = MapRecord{s, t, map_from_json(get(r, "map"), b.complex(s).module(), b.complex(t).module())};
  }
  auto read_equiv = [&](const json& r, const std::string& kind, Context ctx) {
    EquivRecord e;
    e.kind = kind;
    e.x = get_string(r, "x");
    e.y = get_string(r, "y");
    const GradedModule X = b.complex(e.x).module().with_context(ctx);
    const GradedModule Y = b.complex(e.y).module().with_context(ctx);
    e.f = map_from_json(get(r, "f"), X, Y);
    e.g = map_from_json(get(r, "g"), Y, X);
    e.h = map_from_json(get(r, "h"), X, X);
    e.k = map_from_json(get(r, "k"), Y, Y);
    e.z = Scalar(b.ctx_);
    return e;
  };
  for (const auto& [n, r] : section("he").items()) b.equivs_[n] = read_equiv(r, "he", b.ctx_);
  for (const auto& [n, r] : section("zhe").items()) {
    EquivRecord e = read_equiv(r, "zhe", Context{b.ctx_.z_order, 1});
    e.z = scalar_from_json(get(r, "z"), b.ctx_);
    b.equivs_[n] = e;
  }
  for (const auto& [n, r] : section("she").items()) {
    const int order = get_int(r, "eps_order");
    EquivRecord e = read_equiv(r, "she", Context{b.ctx_.z_order, order});
    e.eps_order = order;
    b.equivs_[n] = e;
  }
  for (const auto& [n, r] : section("filtered").items()) {
    FilteredRecord fr;
    const json& pj = get(r, "poset");
    std::vector<std::string> elements = get(pj, "elements").get<std::vector<std::string>>();
    Poset names(elements, {});
    std::vector<std::pair<std::size_t, std::size_t>> covers;
    for (const auto& c : get(pj, "covers")) {
      if (!c.is_array() || c.size() != 2) throw InvalidData("poset cover must be a pair of element names");
      covers.emplace_back(names.index_of(c.at(0).get<std::string>()), names.index_of(c.at(1).get<std::string>()));
    }
    fr.poset = Poset(elements, covers);
    fr.summands = get(r, "summands").get<std::vector<std::string>>();
    if (fr.summands.size() != elements.size()) throw InvalidData("one summand per poset element required");
    if (r.contains("equivalences")) fr.equivalences = r.at("equivalences").get<std::vector<std::string>>();
    for (const auto& e : fr.equivalences) b.equiv_record(e);
    std::vector<GradedModule> parts;
    for (const auto& s : fr.summands) parts.push_back(b.complex(s).module());
    Decomposition L(parts);
    fr.alpha = GradedMap(L.total(), L.total(), 1);
    for (const auto& blk : get(r, "blocks")) {
      const std::size_t from = fr.poset.index_of(get_string(blk, "from"));
      const std::size_t to = fr.poset.index_of(get_string(blk, "to"));
      GradedMap m = map_from_json(get(blk, "map"), L.part(from), L.part(to));
      if (m.degree() != 1) throw InvalidData("twist blocks must have degree 1");
      fr.alpha += L.injection(to) * m * L.projection(from);
    }
    fr.twist_curvature = r.contains("twist_curvature") ? scalar_from_json(r.at("twist_curvature"), b.ctx_)
                                                       : Scalar(b.ctx_);
    fr.ideal = r.contains("ideal") ? parse_ideal_kind(r.at("ideal").get<std::string>()) : IdealKind::triangular;
    b.filtered_[n] = fr;
  }
  for (const auto& [n, r] : section("perturbations").items()) {
    PerturbationRecord pr;
    pr.mode = get_string(r, "mode");
    pr.base_source = get_string(r, "base_source");
    pr.base_target = get_string(r, "base_target");
    pr.source = get_string(r, "source");
    pr.target = get_string(r, "target");
    pr.alpha = get_string(r, "alpha");
    pr.beta = get_string(r, "beta");
    pr.equivalence = r.contains("equivalence") ? get_string(r, "equivalence") : "";
    if (r.contains("fgh")) pr.fgh = r.at("fgh").get<std::vector<std::string>>();
    pr.shift = r.contains("shift") ? scalar_from_json(r.at("shift"), b.ctx_) : Scalar(b.ctx_);
    b.put_perturbation(n, pr);
  }
  for (const auto& [n, r] : section("reports").items()) b.reports_[n] = r;
  return b;
}

std::string Bundle::dump() const { return to_json().dump(2) + "\n"; }

}  // namespace hpl
