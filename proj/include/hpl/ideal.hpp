#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hpl/graded.hpp"

namespace hpl {

/// Finite poset given by named elements and cover relations (lower, upper).
class Poset {
 public:
  Poset() = default;
  /// Throws InvalidData on unknown indices or cycles.
  Poset(std::vector<std::string> elements, std::vector<std::pair<std::size_t, std::size_t>> covers);

  /// Elements "0" < "1" < ... < "n-1".
  static Poset chain(std::size_t n);

  std::size_t size() const { return elements_.size(); }
  const std::vector<std::string>& elements() const { return elements_; }
  const std::vector<std::pair<std::size_t, std::size_t>>& covers() const { return covers_; }
  std::size_t index_of(const std::string& name) const;
  /// Strict order i < j.
  bool less(std::size_t i, std::size_t j) const { return less_[i][j]; }

  friend bool operator==(const Poset& a, const Poset& b) {
    return a.elements_ == b.elements_ && a.less_ == b.less_;
  }

 private:
  std::vector<std::string> elements_;
  std::vector<std::pair<std::size_t, std::size_t>> covers_;
  std::vector<std::vector<bool>> less_;
};

/// Direct-sum decomposition indexed by a poset: part i of the layout is X_i.
struct Filtration {
  Poset poset;
  Decomposition layout;
};

enum class IdealKind { adic, triangular, sum };

std::string to_string(IdealKind kind);
IdealKind parse_ideal_kind(const std::string& s);

/// Two-sided ideal used to invert id + u by a terminating series.
///   adic:       the z^0 eps^0 component vanishes
///   triangular: every component is strictly lower triangular (block X_i -> X_j only for i < j)
///   sum:        the z^0 eps^0 component is strictly lower triangular
struct IdealSpec {
  IdealKind kind = IdealKind::adic;
  std::optional<Filtration> filtration;

  static IdealSpec adic() { return {}; }
  static IdealSpec triangular(Filtration f) { return {IdealKind::triangular, std::move(f)}; }
  static IdealSpec sum(Filtration f) { return {IdealKind::sum, std::move(f)}; }

  /// The part of u lying outside the ideal; zero iff u is a member.
  GradedMap violation(const GradedMap& u) const;
  bool contains(const GradedMap& u) const { return violation(u).is_zero(); }
};

IdealSpec with_context(const IdealSpec& ideal, Context ctx);

/// Blocks X_i -> X_j of u with i not < j. With plain_only, only the z^0 eps^0 part is inspected.
GradedMap triangular_violation(const GradedMap& u, const Filtration& f, bool plain_only);

/// (id + u)^{-1} = sum_k (-u)^k for u in the ideal. Throws NotInIdeal, or
/// NeumannCapExceeded when (-u)^cap is still nonzero.
GradedMap neumann_inverse(const GradedMap& u, const IdealSpec& ideal, int cap = 64);

}  // namespace hpl
