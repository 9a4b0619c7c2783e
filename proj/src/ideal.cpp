#include "hpl/ideal.hpp"

#include <algorithm>

#include "hpl/errors.hpp"

namespace hpl {

Poset::Poset(std::vector<std::string> elements,
             std::vector<std::pair<std::size_t, std::size_t>> covers)
    : elements_(std::move(elements)), covers_(std::move(covers)) {
  const std::size_t n = elements_.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (elements_[i] == elements_[j]) throw InvalidData("poset: duplicate element " + elements_[i]);
  less_.assign(n, std::vector<bool>(n, false));
  for (const auto& [a, b] : covers_) {
    if (a >= n || b >= n) throw InvalidData("poset: cover refers to an unknown element");
    less_[a][b] = true;
  }
  // Warshall closure.
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (less_[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (less_[k][j]) less_[i][j] = true;
  for (std::size_t i = 0; i < n; ++i)
    if (less_[i][i]) throw InvalidData("poset: cover relations contain a cycle through " + elements_[i]);
}

Poset Poset::chain(std::size_t n) {
  std::vector<std::string> names;
  std::vector<std::pair<std::size_t, std::size_t>> covers;
  for (std::size_t i = 0; i < n; ++i) {
    names.push_back(std::to_string(i));
    if (i > 0) covers.emplace_back(i - 1, i);
  }
  return Poset(std::move(names), std::move(covers));
}

std::size_t Poset::index_of(const std::string& name) const {
  auto it = std::find(elements_.begin(), elements_.end(), name);
  if (it == elements_.end()) throw InvalidData("poset: unknown element " + name);
  return static_cast<std::size_t>(it - elements_.begin());
}

std::string to_string(IdealKind kind) {
  switch (kind) {
    case IdealKind::adic: return "adic";
    case IdealKind::triangular: return "triangular";
    case IdealKind::sum: return "sum";
  }
  return "?";
}

IdealKind parse_ideal_kind(const std::string& s) {
  if (s == "adic") return IdealKind::adic;
  if (s == "triangular") return IdealKind::triangular;
  if (s == "sum") return IdealKind::sum;
  throw InvalidData("unknown ideal kind: " + s);
}

namespace {

GradedMap plain_part(const GradedMap& u) {
  GradedMap out(u.source(), u.target(), u.degree());
  auto it = u.components().find({0, 0});
  if (it != u.components().end())
    for (const auto& [d, blk] : it->second) out.set_block({0, 0}, d, blk);
  return out;
}

}  // namespace

GradedMap triangular_violation(const GradedMap& u, const Filtration& f, bool plain_only) {
  const Decomposition& L = f.layout;
  if (!(u.source() == L.total()) || !(u.target() == L.total()))
    throw ShapeMismatch("triangularity test: map does not act on the filtered module");
  if (L.size() != f.poset.size()) throw ShapeMismatch("filtration: layout and poset sizes differ");
  const GradedMap v = plain_only ? plain_part(u) : u;
  GradedMap out(u.source(), u.target(), u.degree());
  for (std::size_t i = 0; i < L.size(); ++i)
    for (std::size_t j = 0; j < L.size(); ++j) {
      if (f.poset.less(i, j)) continue;
      GradedMap b = block(v, L, j, L, i);
      if (!b.is_zero()) out += L.injection(j) * b * L.projection(i);
    }
  return out;
}

GradedMap IdealSpec::violation(const GradedMap& u) const {
  if (kind == IdealKind::adic) return plain_part(u);
  if (!filtration) throw InvalidData("ideal " + to_string(kind) + " needs a filtration");
  return triangular_violation(u, *filtration, kind == IdealKind::sum);
}

IdealSpec with_context(const IdealSpec& ideal, Context ctx) {
  IdealSpec out{ideal.kind, std::nullopt};
  if (ideal.filtration) {
    std::vector<GradedModule> parts;
    for (const auto& p : ideal.filtration->layout.parts()) parts.push_back(p.with_context(ctx));
    out.filtration = Filtration{ideal.filtration->poset, Decomposition(std::move(parts))};
  }
  return out;
}

GradedMap neumann_inverse(const GradedMap& u, const IdealSpec& ideal, int cap) {
  if (!(u.source() == u.target()) || u.degree() != 0)
    throw ShapeMismatch("neumann_inverse: u must be a degree 0 endomorphism");
  if (!ideal.contains(u)) throw NotInIdeal("neumann_inverse: u is not in the " + to_string(ideal.kind) + " ideal");
  const GradedMap minus_u = -u;
  GradedMap term = GradedMap::identity(u.source());
  GradedMap out = term;
  for (int k = 1; k <= cap; ++k) {
    term = term * minus_u;
    if (term.is_zero()) return out;
    out += term;
  }
  throw NeumannCapExceeded("neumann_inverse: series did not terminate within " + std::to_string(cap) +
                           " terms");
}

}  // namespace hpl
