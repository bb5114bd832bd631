#include "graphmf/filling.hpp"

#include "graphmf/errors.hpp"

namespace graphmf {
namespace {

using Poly = std::vector<Rational>;

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

Poly poly_add(const Poly& a, const Poly& b) {
  Poly s(std::max(a.size(), b.size()), Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) s[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) s[i] += b[i];
  trim(s);
  return s;
}

Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly p(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) p[i + j] += a[i] * b[j];
  trim(p);
  return p;
}

// f(g(x)) by Horner's rule.
Poly poly_compose(const Poly& f, const Poly& g) {
  Poly out;
  for (std::size_t i = f.size(); i-- > 0;) out = poly_add(poly_mul(out, g), Poly{f[i]});
  return out;
}

}  // namespace

BoundExpr BoundExpr::polynomial(std::vector<Rational> coeffs) {
  for (auto& c : coeffs) {
    c.canonicalize();
    if (c < 0) throw InputError("bound coefficients must be non-negative");
  }
  trim(coeffs);
  BoundExpr b;
  b.kind_ = Kind::Poly;
  b.coeffs_ = std::move(coeffs);
  return b;
}

BoundExpr BoundExpr::linear() { return polynomial({0, 1}); }
BoundExpr BoundExpr::quadratic() { return polynomial({0, 0, 1}); }

BoundExpr BoundExpr::exponential() {
  BoundExpr b;
  b.kind_ = Kind::Exp;
  return b;
}

BoundExpr BoundExpr::named(const std::string& name) {
  if (name == "linear") return linear();
  if (name == "quadratic") return quadratic();
  if (name == "exponential") return exponential();
  throw InputError("unknown bound class '" + name + "'");
}

long BoundExpr::degree() const {
  if (kind_ == Kind::Exp) throw InputError("exponential bound has no polynomial degree");
  return static_cast<long>(coeffs_.size()) - 1;
}

Rational BoundExpr::evaluate(const Rational& x) const {
  if (kind_ == Kind::Exp) throw InputError("exponential bound has no closed evaluation");
  Rational acc = 0;
  for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + coeffs_[i];
  return acc;
}

BoundExpr add(const BoundExpr& a, const BoundExpr& b) {
  if (a.is_exponential() || b.is_exponential()) return BoundExpr::exponential();
  return BoundExpr::polynomial(poly_add(a.coeffs(), b.coeffs()));
}

BoundExpr compose_dehn_bound(const std::vector<BoundExpr>& piece_bounds, const Int& lambda,
                             const Int& C, const Int& K) {
  if (piece_bounds.empty()) throw InputError("compose_dehn_bound: no piece bounds");
  if (lambda <= 0 || C <= 0) throw InputError("compose_dehn_bound: lambda and C must be positive");
  if (K < 0) throw InputError("compose_dehn_bound: K must be non-negative");
  BoundExpr f = piece_bounds.front();
  for (std::size_t i = 1; i < piece_bounds.size(); ++i) f = add(f, piece_bounds[i]);
  if (f.is_exponential()) return f;
  const Poly inner{Rational(0), Rational(lambda * K + 1), Rational(lambda * C)};
  const Poly outer{Rational(0), Rational(lambda)};
  return BoundExpr::polynomial(poly_mul(outer, poly_compose(f.coeffs(), inner)));
}

}  // namespace graphmf
