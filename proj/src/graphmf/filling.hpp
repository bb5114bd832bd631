#pragma once

#include <string>
#include <vector>

#include "graphmf/matrix.hpp"

namespace graphmf {

/// Non-decreasing upper bound in L: a polynomial with non-negative rational
/// coefficients (index = degree) or the exponential class.
class BoundExpr {
 public:
  enum class Kind { Poly, Exp };

  static BoundExpr polynomial(std::vector<Rational> coeffs);
  static BoundExpr linear();
  static BoundExpr quadratic();
  static BoundExpr exponential();
  /// "linear", "quadratic" or "exponential".
  static BoundExpr named(const std::string& name);

  Kind kind() const noexcept { return kind_; }
  bool is_exponential() const noexcept { return kind_ == Kind::Exp; }
  /// Canonical coefficients, no trailing zeros; empty for the zero polynomial and for Exp.
  const std::vector<Rational>& coeffs() const noexcept { return coeffs_; }
  /// Degree of a polynomial; -1 for the zero polynomial. Throws for Exp.
  long degree() const;
  Rational evaluate(const Rational& x) const;

  friend bool operator==(const BoundExpr& a, const BoundExpr& b) {
    return a.kind_ == b.kind_ && a.coeffs_ == b.coeffs_;
  }

 private:
  Kind kind_ = Kind::Poly;
  std::vector<Rational> coeffs_;
};

BoundExpr add(const BoundExpr& a, const BoundExpr& b);

/// G(L) = lambda * L * F(lambda*C*L^2 + lambda*K*L + L), F the sum of the piece bounds.
BoundExpr compose_dehn_bound(const std::vector<BoundExpr>& piece_bounds, const Int& lambda,
                             const Int& C, const Int& K);

}  // namespace graphmf
