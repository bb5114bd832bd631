#include "graphmf/normal_form.hpp"

#include <utility>

#include "graphmf/errors.hpp"

namespace graphmf {
namespace {

// (ci, cj) <- (s*ci + t*cj, u*ci + v*cj) applied to the columns of m.
void combine_columns(IntMatrix& m, std::size_t ci, std::size_t cj, const Int& s, const Int& t,
                     const Int& u, const Int& v) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Int a = m(r, ci);
    Int b = m(r, cj);
    m(r, ci) = s * a + t * b;
    m(r, cj) = u * a + v * b;
  }
}

void axpy_column(IntMatrix& m, std::size_t dst, std::size_t src, const Int& factor) {
  if (factor == 0) return;
  for (std::size_t r = 0; r < m.rows(); ++r) m(r, dst) += factor * m(r, src);
}

void negate_column(IntMatrix& m, std::size_t c) {
  for (std::size_t r = 0; r < m.rows(); ++r) m(r, c) = -m(r, c);
}

Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace

ColumnHermiteForm column_hermite_form(const IntMatrix& m) {
  ColumnHermiteForm out;
  out.form = m;
  out.transform = IntMatrix::identity(m.cols());
  IntMatrix& h = out.form;
  IntMatrix& u = out.transform;
  const std::size_t ncols = m.cols();
  std::size_t col = 0;

  for (std::size_t row = 0; row < m.rows() && col < ncols; ++row) {
    for (std::size_t j = col + 1; j < ncols; ++j) {
      if (h(row, j) == 0) continue;
      Int a = h(row, col);
      Int b = h(row, j);
      Int g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
      Int bu = -b / g;
      Int av = a / g;
      combine_columns(h, col, j, s, t, bu, av);
      combine_columns(u, col, j, s, t, bu, av);
    }
    if (h(row, col) == 0) continue;
    if (h(row, col) < 0) {
      negate_column(h, col);
      negate_column(u, col);
    }
    const Int pivot = h(row, col);
    for (std::size_t j = 0; j < col; ++j) {
      Int q = floor_div(h(row, j), pivot);
      if (q == 0) continue;
      axpy_column(h, j, col, -q);
      axpy_column(u, j, col, -q);
    }
    out.pivot_rows.push_back(row);
    ++col;
  }
  out.rank = col;
  return out;
}

std::vector<Int> smith_invariant_factors(const IntMatrix& m) {
  IntMatrix a = m;
  const std::size_t nr = a.rows();
  const std::size_t nc = a.cols();
  std::vector<Int> factors;

  for (std::size_t t = 0; t < nr && t < nc; ++t) {
    for (;;) {
      // Move a smallest non-zero entry of the trailing block to (t, t).
      std::size_t pr = nr, pc = nc;
      for (std::size_t r = t; r < nr; ++r)
        for (std::size_t c = t; c < nc; ++c) {
          if (a(r, c) == 0) continue;
          if (pr == nr || abs(a(r, c)) < abs(a(pr, pc))) {
            pr = r;
            pc = c;
          }
        }
      if (pr == nr) return factors;
      if (pr != t)
        for (std::size_t c = 0; c < nc; ++c) std::swap(a(t, c), a(pr, c));
      if (pc != t)
        for (std::size_t r = 0; r < nr; ++r) std::swap(a(r, t), a(r, pc));

      bool dirty = false;
      const Int p = a(t, t);
      for (std::size_t r = t + 1; r < nr; ++r) {
        if (a(r, t) == 0) continue;
        Int q = floor_div(a(r, t), p);
        for (std::size_t c = t; c < nc; ++c) a(r, c) -= q * a(t, c);
        if (a(r, t) != 0) dirty = true;
      }
      for (std::size_t c = t + 1; c < nc; ++c) {
        if (a(t, c) == 0) continue;
        Int q = floor_div(a(t, c), p);
        for (std::size_t r = t; r < nr; ++r) a(r, c) -= q * a(r, t);
        if (a(t, c) != 0) dirty = true;
      }
      if (dirty) continue;

      // Row and column are clear; enforce divisibility of the trailing block.
      bool divisible = true;
      for (std::size_t r = t + 1; r < nr && divisible; ++r)
        for (std::size_t c = t + 1; c < nc; ++c) {
          if (!mpz_divisible_p(a(r, c).get_mpz_t(), p.get_mpz_t())) {
            for (std::size_t cc = t; cc < nc; ++cc) a(t, cc) += a(r, cc);
            divisible = false;
            break;
          }
        }
      if (!divisible) continue;
      factors.push_back(abs(p));
      break;
    }
  }
  return factors;
}

std::optional<IntegerSolution> solve_integer_system(const IntMatrix& a, const Vector& b) {
  if (b.size() != a.rows()) throw InputError("solve_integer_system: right-hand side length mismatch");
  const ColumnHermiteForm hf = column_hermite_form(a);
  Vector residual = b;
  Vector y(a.cols(), Int(0));
  for (std::size_t j = 0; j < hf.rank; ++j) {
    const std::size_t pr = hf.pivot_rows[j];
    const Int& pivot = hf.form(pr, j);
    if (!mpz_divisible_p(residual[pr].get_mpz_t(), pivot.get_mpz_t())) return std::nullopt;
    y[j] = residual[pr] / pivot;
    for (std::size_t r = pr; r < a.rows(); ++r) residual[r] -= y[j] * hf.form(r, j);
  }
  if (!is_zero(residual)) return std::nullopt;

  IntegerSolution sol;
  sol.particular = hf.transform * y;
  for (std::size_t c = hf.rank; c < a.cols(); ++c) sol.kernel_basis.push_back(hf.transform.column(c));
  return sol;
}

}  // namespace graphmf
