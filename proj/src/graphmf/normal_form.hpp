#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "graphmf/matrix.hpp"

namespace graphmf {

/// Column-style Hermite normal form `form = input * transform`.
///
/// The first `rank` columns of `form` are non-zero and in echelon shape: column j
/// has its pivot in row `pivot_rows[j]` (strictly increasing), every entry above a
/// pivot is zero, pivots are positive, and entries of a pivot row lying left of the
/// pivot are reduced into [0, pivot). The remaining columns are zero, so the matching
/// columns of `transform` span the integer kernel of the input.
struct ColumnHermiteForm {
  IntMatrix form;
  IntMatrix transform;
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_rows;
};

ColumnHermiteForm column_hermite_form(const IntMatrix& m);

/// Non-zero invariant factors d1 | d2 | ... of the Smith normal form (rank many, all positive).
std::vector<Int> smith_invariant_factors(const IntMatrix& m);

/// All integer solutions of a * x = b: `particular + span(kernel_basis)`.
struct IntegerSolution {
  Vector particular;
  std::vector<Vector> kernel_basis;
};

std::optional<IntegerSolution> solve_integer_system(const IntMatrix& a, const Vector& b);

}  // namespace graphmf
