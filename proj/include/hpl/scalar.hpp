#pragma once

#include <compare>
#include <map>
#include <string>

#include <gmpxx.h>

#include "hpl/errors.hpp"

namespace hpl {

using Rational = mpq_class;

/// Truncation orders of the coefficient ring Q[z, eps]/(z^z_order, eps^eps_order).
struct Context {
  int z_order = 4;
  int eps_order = 4;

  friend bool operator==(const Context&, const Context&) = default;
};

void require_valid(const Context& ctx);
void require_same(const Context& a, const Context& b, const char* where);

/// Exponent pair of z^z * eps^eps. Both variables have cohomological degree 2.
struct Monomial {
  int z = 0;
  int eps = 0;

  int degree() const { return 2 * (z + eps); }
  bool fits(const Context& ctx) const { return z < ctx.z_order && eps < ctx.eps_order; }

  friend auto operator<=>(const Monomial&, const Monomial&) = default;
  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend Monomial operator+(Monomial a, Monomial b) { return {a.z + b.z, a.eps + b.eps}; }
};

/// Element of the truncated central algebra. Zero coefficients and monomials
/// beyond the truncation orders are never stored.
class Scalar {
 public:
  explicit Scalar(Context ctx);

  static Scalar constant(Context ctx, const Rational& c);
  static Scalar monomial(Context ctx, Monomial m, const Rational& c = 1);
  static Scalar z(Context ctx) { return monomial(ctx, {1, 0}); }
  static Scalar eps(Context ctx) { return monomial(ctx, {0, 1}); }

  const Context& context() const { return ctx_; }
  const std::map<Monomial, Rational>& terms() const { return terms_; }
  Rational coeff(Monomial m) const;
  void set_coeff(Monomial m, const Rational& c);

  bool is_zero() const { return terms_.empty(); }
  bool has_z() const;
  bool has_eps() const;
  /// True when every stored monomial has cohomological degree `deg` (vacuous for 0).
  bool is_homogeneous(int deg) const;

  Scalar with_context(Context ctx) const;

  Scalar operator-() const;
  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Rational& c, const Scalar& a);
  friend bool operator==(const Scalar&, const Scalar&) = default;

  std::string to_string() const;

 private:
  Context ctx_;
  std::map<Monomial, Rational> terms_;
};

Scalar pow(const Scalar& a, int n);

/// Ring homomorphism fixing z and sending eps to shift + eps. `shift` must be
/// eps-free with zero constant term.
Scalar substitute_eps(const Scalar& a, const Scalar& shift);

/// eps -> z + eps on an eps-only series. Throws Error if `a` contains z.
Scalar binomial_substitute(const Scalar& a);

/// Binomial coefficient as an exact integer.
mpz_class binomial(int n, int k);

}  // namespace hpl
