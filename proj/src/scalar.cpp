#include "hpl/scalar.hpp"

#include <sstream>

namespace hpl {

void require_valid(const Context& ctx) {
  if (ctx.z_order < 1 || ctx.eps_order < 1)
    throw Error("truncation orders must be at least 1");
}

void require_same(const Context& a, const Context& b, const char* where) {
  if (!(a == b)) {
    std::ostringstream os;
    os << where << ": context mismatch (z^" << a.z_order << ", eps^" << a.eps_order
       << ") vs (z^" << b.z_order << ", eps^" << b.eps_order << ")";
    throw ContextMismatch(os.str());
  }
}

Scalar::Scalar(Context ctx) : ctx_(ctx) { require_valid(ctx_); }

Scalar Scalar::constant(Context ctx, const Rational& c) { return monomial(ctx, {0, 0}, c); }

Scalar Scalar::monomial(Context ctx, Monomial m, const Rational& c) {
  Scalar s(ctx);
  s.set_coeff(m, c);
  return s;
}

Rational Scalar::coeff(Monomial m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Scalar::set_coeff(Monomial m, const Rational& c) {
  if (m.z < 0 || m.eps < 0) throw Error("negative exponent in scalar");
  Rational v = c;
  v.canonicalize();
  if (v == 0 || !m.fits(ctx_)) {
    terms_.erase(m);
    return;
  }
  terms_[m] = v;
}

bool Scalar::has_z() const {
  for (const auto& [m, c] : terms_)
    if (m.z > 0) return true;
  return false;
}

bool Scalar::has_eps() const {
  for (const auto& [m, c] : terms_)
    if (m.eps > 0) return true;
  return false;
}

bool Scalar::is_homogeneous(int deg) const {
  for (const auto& [m, c] : terms_)
    if (m.degree() != deg) return false;
  return true;
}

Scalar Scalar::with_context(Context ctx) const {
  Scalar out(ctx);
  for (const auto& [m, c] : terms_) out.set_coeff(m, c);
  return out;
}

Scalar Scalar::operator-() const {
  Scalar out = *this;
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  require_same(a.ctx_, b.ctx_, "scalar_add");
  Scalar out = a;
  for (const auto& [m, c] : b.terms_) out.set_coeff(m, out.coeff(m) + c);
  return out;
}

Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

Scalar operator*(const Scalar& a, const Scalar& b) {
  require_same(a.ctx_, b.ctx_, "scalar_mul");
  Scalar out(a.ctx_);
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) {
      Monomial m = ma + mb;
      if (m.fits(a.ctx_)) out.set_coeff(m, out.coeff(m) + ca * cb);
    }
  return out;
}

Scalar operator*(const Rational& c, const Scalar& a) {
  Scalar out(a.ctx_);
  for (const auto& [m, v] : a.terms_) out.set_coeff(m, c * v);
  return out;
}

std::string Scalar::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    bool unit = (c == 1) && (m.z || m.eps);
    if (!unit) os << c.get_str();
    if (m.z) os << (unit ? "" : "*") << "z" << (m.z > 1 ? "^" + std::to_string(m.z) : "");
    if (m.eps) os << ((unit && !m.z) ? "" : "*") << "eps" << (m.eps > 1 ? "^" + std::to_string(m.eps) : "");
  }
  return os.str();
}

Scalar pow(const Scalar& a, int n) {
  if (n < 0) throw Error("negative power of a scalar");
  Scalar out = Scalar::constant(a.context(), 1);
  for (int i = 0; i < n; ++i) out = out * a;
  return out;
}

Scalar substitute_eps(const Scalar& a, const Scalar& shift) {
  require_same(a.context(), shift.context(), "substitute_eps");
  if (shift.has_eps() || shift.coeff({0, 0}) != 0)
    throw Error("eps substitution shift must be eps-free with zero constant term");
  const Context& ctx = a.context();
  Scalar base = shift + Scalar::eps(ctx);
  Scalar out(ctx);
  for (const auto& [m, c] : a.terms()) {
    Scalar term = Scalar::monomial(ctx, {m.z, 0}, c) * pow(base, m.eps);
    out = out + term;
  }
  return out;
}

Scalar binomial_substitute(const Scalar& a) {
  if (a.has_z()) throw Error("binomial_substitute: input contains z");
  return substitute_eps(a, Scalar::z(a.context()));
}

mpz_class binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

}  // namespace hpl
