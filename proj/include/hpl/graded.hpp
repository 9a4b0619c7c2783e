#pragma once

#include <map>
#include <vector>

#include "hpl/matrix.hpp"
#include "hpl/scalar.hpp"

namespace hpl {

/// Finite-rank free graded module: one rank per cohomological degree.
class GradedModule {
 public:
  GradedModule() = default;
  explicit GradedModule(Context ctx, std::map<int, int> ranks = {});

  const Context& context() const { return ctx_; }
  const std::map<int, int>& ranks() const { return ranks_; }
  int rank(int degree) const;
  int total_rank() const;
  bool empty() const { return ranks_.empty(); }

  /// X[n], with X[n]^k = X^{k+n}.
  GradedModule shifted(int n) const;
  GradedModule with_context(Context ctx) const;

  friend GradedModule operator+(const GradedModule& a, const GradedModule& b);
  friend bool operator==(const GradedModule&, const GradedModule&) = default;

 private:
  Context ctx_;
  std::map<int, int> ranks_;
};

/// Source degree -> block matrix of one plain (coefficient-free) component.
using PlainMap = std::map<int, Matrix>;

/// Homogeneous morphism of total degree `degree` between graded modules. The
/// z^i eps^j component is a plain map of degree `degree - 2(i+j)`; its block at
/// source degree p has shape rank_target(p + degree - 2(i+j)) x rank_source(p).
/// Zero blocks and empty components are never stored, so equality is exact.
class GradedMap {
 public:
  GradedMap() = default;
  GradedMap(GradedModule source, GradedModule target, int degree);

  static GradedMap identity(const GradedModule& m);
  static GradedMap zero(const GradedModule& source, const GradedModule& target, int degree) {
    return GradedMap(source, target, degree);
  }

  const GradedModule& source() const { return src_; }
  const GradedModule& target() const { return tgt_; }
  const Context& context() const { return src_.context(); }
  int degree() const { return degree_; }
  const std::map<Monomial, PlainMap>& components() const { return comps_; }

  int target_degree(Monomial m, int source_degree) const {
    return source_degree + degree_ - m.degree();
  }
  /// Stored block, or a zero matrix of the right shape.
  Matrix block(Monomial m, int source_degree) const;
  void set_block(Monomial m, int source_degree, Matrix b);
  void add_block(Monomial m, int source_degree, const Matrix& b);

  bool is_zero() const { return comps_.empty(); }
  bool has_eps() const;
  bool has_z() const;
  int max_eps() const;

  GradedMap operator-() const;
  GradedMap& operator+=(const GradedMap& o);
  GradedMap& operator-=(const GradedMap& o);
  friend GradedMap operator+(GradedMap a, const GradedMap& b) { return a += b; }
  friend GradedMap operator-(GradedMap a, const GradedMap& b) { return a -= b; }
  /// Composition f * g = f o g. Components convolve with truncation.
  friend GradedMap operator*(const GradedMap& f, const GradedMap& g);
  friend GradedMap operator*(const Rational& c, const GradedMap& f);
  friend bool operator==(const GradedMap&, const GradedMap&) = default;

  /// Multiply by a central scalar homogeneous of degree `scalar_degree`.
  GradedMap scaled(const Scalar& s, int scalar_degree) const;
  /// Multiply by the monomial m (shifts every component; degree grows by m.degree()).
  GradedMap times(Monomial m) const;

  /// The eps^j part, returned with its eps exponent removed (degree drops by 2j).
  GradedMap eps_coefficient(int j) const;
  /// Components with eps exponent >= 1, divided by eps.
  GradedMap eps_tail() const;
  /// Sum of eps_coefficient(j) * eps^j for j < n.
  GradedMap eps_truncated(int n) const;

  /// Same blocks, re-read as a map X[a] -> Y[b]; degree becomes degree + a - b.
  GradedMap reindexed(int a, int b) const;
  GradedMap with_context(Context ctx) const;
  /// Changes the modules for a map whose blocks already fit them.
  GradedMap with_modules(const GradedModule& source, const GradedModule& target) const;

  /// Applies the ring map z -> z, eps -> shift + eps (shift eps-free, in (z)).
  GradedMap substitute_eps(const Scalar& shift) const;
  /// Applies eps -> s for an eps-free degree-2 scalar s.
  GradedMap specialize_eps(const Scalar& s) const;

 private:
  void check_compatible(const GradedMap& o, const char* where) const;
  void prune(Monomial m);

  GradedModule src_;
  GradedModule tgt_;
  int degree_ = 0;
  std::map<Monomial, PlainMap> comps_;
};

/// Ordered direct-sum decomposition of a graded module into parts.
class Decomposition {
 public:
  Decomposition() = default;
  explicit Decomposition(std::vector<GradedModule> parts);

  std::size_t size() const { return parts_.size(); }
  const GradedModule& part(std::size_t i) const { return parts_.at(i); }
  const std::vector<GradedModule>& parts() const { return parts_; }
  const GradedModule& total() const { return total_; }

  /// Row offset of part i inside degree `degree` of the total module.
  int offset(std::size_t i, int degree) const;
  GradedMap injection(std::size_t i) const;
  GradedMap projection(std::size_t i) const;

 private:
  std::vector<GradedModule> parts_;
  GradedModule total_;
};

/// The (row, col) block of f, a map part(col) of `cols` -> part(row) of `rows`.
GradedMap block(const GradedMap& f, const Decomposition& rows, std::size_t row,
                const Decomposition& cols, std::size_t col);

/// Inverse of `block`: sum of injection(row) * b * projection(col).
/// `blocks[row][col]` may be empty (GradedMap with default modules) for zero.
GradedMap assemble(const Decomposition& rows, const Decomposition& cols, int degree,
                   const std::vector<std::vector<GradedMap>>& blocks);

/// Block-diagonal map from per-part maps.
GradedMap block_diagonal(const Decomposition& rows, const Decomposition& cols,
                         const std::vector<GradedMap>& diag);

}  // namespace hpl
