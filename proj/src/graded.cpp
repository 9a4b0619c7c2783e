#include "hpl/graded.hpp"

#include <sstream>

namespace hpl {

// ---------------------------------------------------------------- GradedModule

GradedModule::GradedModule(Context ctx, std::map<int, int> ranks) : ctx_(ctx) {
  require_valid(ctx_);
  for (const auto& [deg, r] : ranks) {
    if (r < 0) throw ShapeMismatch("negative rank in graded module");
    if (r > 0) ranks_[deg] = r;
  }
}

int GradedModule::rank(int degree) const {
  auto it = ranks_.find(degree);
  return it == ranks_.end() ? 0 : it->second;
}

int GradedModule::total_rank() const {
  int n = 0;
  for (const auto& [d, r] : ranks_) n += r;
  return n;
}

GradedModule GradedModule::shifted(int n) const {
  std::map<int, int> out;
  for (const auto& [d, r] : ranks_) out[d - n] = r;
  return GradedModule(ctx_, std::move(out));
}

GradedModule GradedModule::with_context(Context ctx) const { return GradedModule(ctx, ranks_); }

GradedModule operator+(const GradedModule& a, const GradedModule& b) {
  require_same(a.ctx_, b.ctx_, "direct sum of modules");
  std::map<int, int> out = a.ranks_;
  for (const auto& [d, r] : b.ranks_) out[d] += r;
  return GradedModule(a.ctx_, std::move(out));
}

// ------------------------------------------------------------------ GradedMap

GradedMap::GradedMap(GradedModule source, GradedModule target, int degree)
    : src_(std::move(source)), tgt_(std::move(target)), degree_(degree) {
  require_same(src_.context(), tgt_.context(), "graded map");
}

GradedMap GradedMap::identity(const GradedModule& m) {
  GradedMap id(m, m, 0);
  for (const auto& [d, r] : m.ranks()) id.comps_[{0, 0}][d] = Matrix::identity(r);
  return id;
}

Matrix GradedMap::block(Monomial m, int source_degree) const {
  auto c = comps_.find(m);
  if (c != comps_.end()) {
    auto b = c->second.find(source_degree);
    if (b != c->second.end()) return b->second;
  }
  return Matrix(tgt_.rank(target_degree(m, source_degree)), src_.rank(source_degree));
}

void GradedMap::set_block(Monomial m, int source_degree, Matrix b) {
  const auto rows = static_cast<std::size_t>(tgt_.rank(target_degree(m, source_degree)));
  const auto cols = static_cast<std::size_t>(src_.rank(source_degree));
  if (b.rows() != rows || b.cols() != cols) {
    std::ostringstream os;
    os << "block at source degree " << source_degree << " (z^" << m.z << " eps^" << m.eps
       << ") has shape " << b.rows() << "x" << b.cols() << ", expected " << rows << "x" << cols;
    throw ShapeMismatch(os.str());
  }
  if (m.z < 0 || m.eps < 0) throw ShapeMismatch("negative monomial exponent");
  if (!m.fits(context()) || b.empty() || b.is_zero()) {
    auto c = comps_.find(m);
    if (c != comps_.end()) {
      c->second.erase(source_degree);
      if (c->second.empty()) comps_.erase(c);
    }
    return;
  }
  comps_[m][source_degree] = std::move(b);
}

void GradedMap::add_block(Monomial m, int source_degree, const Matrix& b) {
  if (!m.fits(context()) || b.empty()) return;
  auto c = comps_.find(m);
  if (c != comps_.end()) {
    auto it = c->second.find(source_degree);
    if (it != c->second.end()) {
      set_block(m, source_degree, it->second + b);
      return;
    }
  }
  set_block(m, source_degree, b);
}

void GradedMap::prune(Monomial m) {
  auto c = comps_.find(m);
  if (c == comps_.end()) return;
  for (auto it = c->second.begin(); it != c->second.end();)
    it = it->second.is_zero() ? c->second.erase(it) : std::next(it);
  if (c->second.empty()) comps_.erase(c);
}

bool GradedMap::has_eps() const {
  for (const auto& [m, p] : comps_)
    if (m.eps > 0) return true;
  return false;
}

bool GradedMap::has_z() const {
  for (const auto& [m, p] : comps_)
    if (m.z > 0) return true;
  return false;
}

int GradedMap::max_eps() const {
  int e = -1;
  for (const auto& [m, p] : comps_) e = std::max(e, m.eps);
  return e;
}

void GradedMap::check_compatible(const GradedMap& o, const char* where) const {
  if (!(src_ == o.src_) || !(tgt_ == o.tgt_) || degree_ != o.degree_) {
    std::ostringstream os;
    os << where << ": incompatible maps (degrees " << degree_ << " and " << o.degree_ << ")";
    throw ShapeMismatch(os.str());
  }
}

GradedMap GradedMap::operator-() const {
  GradedMap out = *this;
  for (auto& [m, p] : out.comps_)
    for (auto& [d, b] : p) b = -b;
  return out;
}

GradedMap& GradedMap::operator+=(const GradedMap& o) {
  check_compatible(o, "map addition");
  for (const auto& [m, p] : o.comps_) {
    auto& mine = comps_[m];
    for (const auto& [d, b] : p) {
      auto it = mine.find(d);
      if (it == mine.end()) mine.emplace(d, b);
      else it->second += b;
    }
    prune(m);
  }
  return *this;
}

GradedMap& GradedMap::operator-=(const GradedMap& o) { return *this += -o; }

GradedMap operator*(const GradedMap& f, const GradedMap& g) {
  if (!(f.src_ == g.tgt_)) throw ShapeMismatch("compose: source of f is not the target of g");
  GradedMap out(g.src_, f.tgt_, f.degree_ + g.degree_);
  const Context& ctx = f.context();
  for (const auto& [mf, pf] : f.comps_)
    for (const auto& [mg, pg] : g.comps_) {
      Monomial m = mf + mg;
      if (!m.fits(ctx)) continue;
      for (const auto& [p, bg] : pg) {
        auto bf = pf.find(g.target_degree(mg, p));
        if (bf == pf.end()) continue;
        out.add_block(m, p, bf->second * bg);
      }
    }
  return out;
}

GradedMap operator*(const Rational& c, const GradedMap& f) {
  if (c == 0) return GradedMap(f.src_, f.tgt_, f.degree_);
  GradedMap out = f;
  for (auto& [m, p] : out.comps_)
    for (auto& [d, b] : p) b = c * b;
  return out;
}

GradedMap GradedMap::times(Monomial mono) const {
  GradedMap out(src_, tgt_, degree_ + mono.degree());
  for (const auto& [m, p] : comps_) {
    Monomial n = m + mono;
    if (!n.fits(context())) continue;
    out.comps_[n] = p;
  }
  return out;
}

GradedMap GradedMap::scaled(const Scalar& s, int scalar_degree) const {
  require_same(s.context(), context(), "scalar times map");
  if (!s.is_homogeneous(scalar_degree))
    throw Error("scalar " + s.to_string() + " is not homogeneous of degree " +
                std::to_string(scalar_degree));
  GradedMap out(src_, tgt_, degree_ + scalar_degree);
  for (const auto& [mono, c] : s.terms()) out += c * times(mono);
  return out;
}

GradedMap GradedMap::eps_coefficient(int j) const {
  GradedMap out(src_, tgt_, degree_ - 2 * j);
  for (const auto& [m, p] : comps_)
    if (m.eps == j) out.comps_[{m.z, 0}] = p;
  return out;
}

GradedMap GradedMap::eps_tail() const {
  GradedMap out(src_, tgt_, degree_ - 2);
  for (const auto& [m, p] : comps_)
    if (m.eps >= 1) out.comps_[{m.z, m.eps - 1}] = p;
  return out;
}

GradedMap GradedMap::eps_truncated(int n) const {
  GradedMap out(src_, tgt_, degree_);
  for (const auto& [m, p] : comps_)
    if (m.eps < n) out.comps_[m] = p;
  return out;
}

GradedMap GradedMap::reindexed(int a, int b) const {
  GradedMap out(src_.shifted(a), tgt_.shifted(b), degree_ + a - b);
  for (const auto& [m, p] : comps_)
    for (const auto& [d, blk] : p) out.comps_[m][d - a] = blk;
  return out;
}

GradedMap GradedMap::with_context(Context ctx) const {
  GradedMap out(src_.with_context(ctx), tgt_.with_context(ctx), degree_);
  for (const auto& [m, p] : comps_)
    if (m.fits(ctx)) out.comps_[m] = p;
  return out;
}

GradedMap GradedMap::with_modules(const GradedModule& source, const GradedModule& target) const {
  GradedMap out(source, target, degree_);
  for (const auto& [m, p] : comps_)
    for (const auto& [d, blk] : p) out.set_block(m, d, blk);
  return out;
}

GradedMap GradedMap::substitute_eps(const Scalar& shift) const {
  require_same(shift.context(), context(), "substitute_eps");
  if (shift.has_eps() || !shift.is_homogeneous(2))
    throw Error("eps substitution shift must be an eps-free degree 2 scalar");
  const Context& ctx = context();
  Scalar base = shift + Scalar::eps(ctx);
  GradedMap out(src_, tgt_, degree_);
  std::map<int, Scalar> powers;
  for (const auto& [m, p] : comps_) {
    auto it = powers.find(m.eps);
    if (it == powers.end()) it = powers.emplace(m.eps, pow(base, m.eps)).first;
    for (const auto& [mono, c] : it->second.terms()) {
      Monomial n{m.z + mono.z, mono.eps};
      if (!n.fits(ctx)) continue;
      for (const auto& [d, blk] : p) out.add_block(n, d, c * blk);
    }
  }
  return out;
}

GradedMap GradedMap::specialize_eps(const Scalar& s) const {
  require_same(s.context(), context(), "specialize_eps");
  if (s.has_eps() || !s.is_homogeneous(2))
    throw Error("eps specialization needs an eps-free degree 2 scalar");
  GradedMap out(src_, tgt_, degree_);
  std::map<int, Scalar> powers;
  for (const auto& [m, p] : comps_) {
    auto it = powers.find(m.eps);
    if (it == powers.end()) it = powers.emplace(m.eps, pow(s, m.eps)).first;
    for (const auto& [mono, c] : it->second.terms()) {
      Monomial n{m.z + mono.z, 0};
      if (!n.fits(context())) continue;
      for (const auto& [d, blk] : p) out.add_block(n, d, c * blk);
    }
  }
  return out;
}

// -------------------------------------------------------------- Decomposition

Decomposition::Decomposition(std::vector<GradedModule> parts) : parts_(std::move(parts)) {
  if (parts_.empty()) throw ShapeMismatch("decomposition needs at least one part");
  total_ = GradedModule(parts_.front().context());
  for (const auto& p : parts_) total_ = total_ + p;
}

int Decomposition::offset(std::size_t i, int degree) const {
  int off = 0;
  for (std::size_t t = 0; t < i; ++t) off += parts_.at(t).rank(degree);
  return off;
}

GradedMap Decomposition::injection(std::size_t i) const {
  const GradedModule& p = parts_.at(i);
  GradedMap out(p, total_, 0);
  for (const auto& [d, r] : p.ranks()) {
    Matrix b(total_.rank(d), r);
    b.set_block(offset(i, d), 0, Matrix::identity(r));
    out.set_block({0, 0}, d, std::move(b));
  }
  return out;
}

GradedMap Decomposition::projection(std::size_t i) const {
  const GradedModule& p = parts_.at(i);
  GradedMap out(total_, p, 0);
  for (const auto& [d, r] : p.ranks()) {
    Matrix b(r, total_.rank(d));
    b.set_block(0, offset(i, d), Matrix::identity(r));
    out.set_block({0, 0}, d, std::move(b));
  }
  return out;
}

GradedMap block(const GradedMap& f, const Decomposition& rows, std::size_t row,
                const Decomposition& cols, std::size_t col) {
  if (row >= rows.size() || col >= cols.size()) throw ShapeMismatch("unknown summand index");
  return rows.projection(row) * f * cols.injection(col);
}

GradedMap assemble(const Decomposition& rows, const Decomposition& cols, int degree,
                   const std::vector<std::vector<GradedMap>>& blocks) {
  GradedMap out(cols.total(), rows.total(), degree);
  for (std::size_t r = 0; r < blocks.size() && r < rows.size(); ++r)
    for (std::size_t c = 0; c < blocks[r].size() && c < cols.size(); ++c) {
      const GradedMap& b = blocks[r][c];
      if (b.is_zero()) continue;
      if (!(b.source() == cols.part(c)) || !(b.target() == rows.part(r)) || b.degree() != degree)
        throw ShapeMismatch("assemble: block does not fit its position");
      out += rows.injection(r) * b * cols.projection(c);
    }
  return out;
}

GradedMap block_diagonal(const Decomposition& rows, const Decomposition& cols,
                         const std::vector<GradedMap>& diag) {
  if (diag.size() != rows.size() || diag.size() != cols.size())
    throw ShapeMismatch("block_diagonal: wrong number of blocks");
  std::vector<std::vector<GradedMap>> blocks(diag.size(), std::vector<GradedMap>(diag.size()));
  for (std::size_t i = 0; i < diag.size(); ++i) blocks[i][i] = diag[i];
  int degree = diag.empty() ? 0 : diag.front().degree();
  return assemble(rows, cols, degree, blocks);
}

}  // namespace hpl
