#pragma once

#include <map>
#include <string>

#include <json.hpp>

#include "hpl/perturb.hpp"

namespace hpl {

using json = nlohmann::json;

// Rationals are "num/den" strings ("num" when den = 1).
json to_json(const Rational& q);
Rational rational_from_json(const json& j);

json to_json(const Context& ctx);
Context context_from_json(const json& j);

/// {context, terms: [{i, j, num, den}]}
json to_json(const Scalar& s);
Scalar scalar_from_json(const json& j, Context ctx);

/// [{degree, rank}]
json to_json(const GradedModule& m);
GradedModule module_from_json(const json& j, Context ctx);

/// {degree, components: [{i, j, blocks: [{p, rows}]}]}; modules come from the caller.
json to_json(const GradedMap& f);
GradedMap map_from_json(const json& j, const GradedModule& src, const GradedModule& tgt);

/// {module, delta, curvature}
json to_json(const CurvedComplex& x);
/// Not validated: delta^2 = curvature is left to the caller (verify reports it).
CurvedComplex complex_from_json(const json& j, Context ctx);

json to_json(const Report& r);

/// Named store of objects. Complexes live in the bundle context; maps refer to
/// complexes by name; each strong equivalence carries its own eps order.
class Bundle {
 public:
  struct MapRecord {
    std::string source, target;
    GradedMap map;
  };
  struct EquivRecord {
    std::string kind;  // "he", "zhe" or "she"
    std::string x, y;
    int eps_order = 0;  // she only
    GradedMap f, g, h, k;
    Scalar z{Context{}};  // zhe only
  };
  struct FilteredRecord {
    Poset poset;
    std::vector<std::string> summands;
    std::vector<std::string> equivalences;  // optional, one he per summand
    GradedMap alpha;
    Scalar twist_curvature{Context{}};
    IdealKind ideal = IdealKind::triangular;
  };

  /// Output of a perturbation: twisted complexes `source` = (base_source, alpha)
  /// and `target` = (base_target, beta), both of curvature w + shift, with the
  /// transferred data either as an equivalence record or as maps F, G, H.
  struct PerturbationRecord {
    std::string mode;
    std::string base_source, base_target, source, target;
    std::string alpha, beta;
    std::string equivalence;      // empty for mode zhe
    std::vector<std::string> fgh;  // mode zhe only
    Scalar shift{Context{}};
  };

  Bundle() = default;
  explicit Bundle(Context ctx) : ctx_(ctx) {}

  const Context& context() const { return ctx_; }

  void put_complex(const std::string& name, const CurvedComplex& x);
  void put_map(const std::string& name, const std::string& source, const std::string& target,
               const GradedMap& f);
  void put_he(const std::string& name, const std::string& x, const std::string& y, const HEData& he);
  void put_zhe(const std::string& name, const std::string& x, const std::string& y, const ZHEData& zhe);
  void put_she(const std::string& name, const std::string& x, const std::string& y, const SHEData& she);
  void put_filtered(const std::string& name, const FilteredComplex& fc, const std::vector<std::string>& summands,
                    IdealKind ideal, const std::vector<std::string>& equivalences = {});
  void put_perturbation(const std::string& name, const PerturbationRecord& r);
  void put_report(const std::string& name, const json& report) { reports_[name] = report; }

  bool has_complex(const std::string& name) const { return complexes_.count(name) > 0; }
  bool has_equivalence(const std::string& name) const { return equivs_.count(name) > 0; }
  const CurvedComplex& complex(const std::string& name) const;
  const MapRecord& map_record(const std::string& name) const;
  const EquivRecord& equiv_record(const std::string& name) const;
  const FilteredRecord& filtered_record(const std::string& name) const;
  const PerturbationRecord& perturbation_record(const std::string& name) const;

  HEData he(const std::string& name) const;
  ZHEData zhe(const std::string& name) const;
  SHEData she(const std::string& name) const;
  FilteredComplex filtered(const std::string& name) const;

  const std::map<std::string, CurvedComplex>& complexes() const { return complexes_; }
  const std::map<std::string, MapRecord>& maps() const { return maps_; }
  const std::map<std::string, EquivRecord>& equivalences() const { return equivs_; }
  const std::map<std::string, FilteredRecord>& filtered_records() const { return filtered_; }
  const std::map<std::string, PerturbationRecord>& perturbations() const { return perturbations_; }
  const std::map<std::string, json>& reports() const { return reports_; }

  json to_json() const;
  static Bundle from_json(const json& j);
  /// Pretty-printed JSON with sorted keys and a trailing newline.
  std::string dump() const;

 private:
  Equivalence load_equivalence(const EquivRecord& r, Context ctx) const;

  Context ctx_;
  std::map<std::string, CurvedComplex> complexes_;
  std::map<std::string, MapRecord> maps_;
  std::map<std::string, EquivRecord> equivs_;
  std::map<std::string, FilteredRecord> filtered_;
  std::map<std::string, PerturbationRecord> perturbations_;
  std::map<std::string, json> reports_;
};

}  // namespace hpl
