#include "graphmf/lattice.hpp"

#include "graphmf/errors.hpp"
#include "graphmf/normal_form.hpp"

namespace graphmf {

Lattice Lattice::from_generators(std::size_t ambient_rank, const std::vector<Vector>& generators) {
  for (const auto& g : generators)
    if (g.size() != ambient_rank)
      throw InputError("lattice generator has length " + std::to_string(g.size()) +
                       ", expected " + std::to_string(ambient_rank));
  if (generators.empty()) return Lattice(ambient_rank, {});
  const ColumnHermiteForm hf =
      column_hermite_form(IntMatrix::from_columns(generators, ambient_rank));
  std::vector<Vector> basis;
  basis.reserve(hf.rank);
  for (std::size_t c = 0; c < hf.rank; ++c) basis.push_back(hf.form.column(c));
  return Lattice(ambient_rank, std::move(basis));
}

Lattice Lattice::zero(std::size_t ambient_rank) { return Lattice(ambient_rank, {}); }

Lattice Lattice::full(std::size_t ambient_rank) {
  return coordinate(ambient_rank, 0, ambient_rank);
}

Lattice Lattice::coordinate(std::size_t ambient_rank, std::size_t first, std::size_t count) {
  if (first + count > ambient_rank) throw InputError("Lattice::coordinate: range out of bounds");
  std::vector<Vector> basis;
  for (std::size_t i = 0; i < count; ++i) {
    Vector e = zero_vector(ambient_rank);
    e[first + i] = 1;
    basis.push_back(std::move(e));
  }
  return Lattice(ambient_rank, std::move(basis));
}

IntMatrix Lattice::basis_matrix() const { return IntMatrix::from_columns(basis_, ambient_); }

bool Lattice::is_full() const {
  if (rank() != ambient_) return false;
  for (std::size_t i = 0; i < ambient_; ++i)
    if (basis_[i][i] != 1) return false;
  return true;
}

std::optional<Vector> Lattice::coordinates_of(const Vector& v) const {
  if (v.size() != ambient_) throw InputError("vector length does not match lattice ambient rank");
  if (basis_.empty()) {
    if (graphmf::is_zero(v)) return Vector{};
    return std::nullopt;
  }
  auto sol = solve_integer_system(basis_matrix(), v);
  if (!sol) return std::nullopt;
  return sol->particular;
}

bool Lattice::contains(const Vector& v) const { return coordinates_of(v).has_value(); }

namespace {

void require_same_ambient(const Lattice& a, const Lattice& b, const char* op) {
  if (a.ambient_rank() != b.ambient_rank())
    throw InputError(std::string(op) + ": ambient rank mismatch (" +
                     std::to_string(a.ambient_rank()) + " vs " +
                     std::to_string(b.ambient_rank()) + ")");
}

}  // namespace

Lattice intersect(const Lattice& a, const Lattice& b) {
  require_same_ambient(a, b, "intersect");
  const std::size_t m = a.ambient_rank();
  if (a.is_zero() || b.is_zero()) return Lattice::zero(m);
  // Kernel of [A | -B]: pairs (x, y) with A x = B y.
  const std::size_t ra = a.rank();
  const std::size_t rb = b.rank();
  IntMatrix stacked(m, ra + rb);
  for (std::size_t c = 0; c < ra; ++c)
    for (std::size_t r = 0; r < m; ++r) stacked(r, c) = a.basis()[c][r];
  for (std::size_t c = 0; c < rb; ++c)
    for (std::size_t r = 0; r < m; ++r) stacked(r, ra + c) = -b.basis()[c][r];
  const Lattice k = kernel(stacked);
  const IntMatrix abasis = a.basis_matrix();
  std::vector<Vector> gens;
  for (const auto& kv : k.basis()) {
    Vector x(kv.begin(), kv.begin() + static_cast<std::ptrdiff_t>(ra));
    gens.push_back(abasis * x);
  }
  return Lattice::from_generators(m, gens);
}

Lattice sum(const Lattice& a, const Lattice& b) {
  require_same_ambient(a, b, "sum");
  std::vector<Vector> gens = a.basis();
  gens.insert(gens.end(), b.basis().begin(), b.basis().end());
  return Lattice::from_generators(a.ambient_rank(), gens);
}

Lattice saturate(const Lattice& a) {
  const std::size_t m = a.ambient_rank();
  if (a.is_zero()) return a;
  if (a.rank() == m) return Lattice::full(m);
  // Integer annihilator of a, then the vectors it annihilates.
  const Lattice annihilator = kernel(a.basis_matrix().transpose());
  return kernel(annihilator.basis_matrix().transpose());
}

Lattice image(const Lattice& a, const IntMatrix& m) {
  if (m.cols() != a.ambient_rank()) throw InputError("image: matrix columns do not match ambient rank");
  std::vector<Vector> gens;
  gens.reserve(a.rank());
  for (const auto& v : a.basis()) gens.push_back(m * v);
  return Lattice::from_generators(m.rows(), gens);
}

Lattice kernel(const IntMatrix& m) {
  const ColumnHermiteForm hf = column_hermite_form(m);
  std::vector<Vector> gens;
  for (std::size_t c = hf.rank; c < m.cols(); ++c) gens.push_back(hf.transform.column(c));
  return Lattice::from_generators(m.cols(), gens);
}

bool is_sublattice(const Lattice& sub, const Lattice& sup) {
  require_same_ambient(sub, sup, "is_sublattice");
  for (const auto& v : sub.basis())
    if (!sup.contains(v)) return false;
  return true;
}

std::optional<Int> index_in(const Lattice& sub, const Lattice& sup) {
  if (!is_sublattice(sub, sup)) throw InputError("index_in: first lattice is not a sublattice of the second");
  if (sub.rank() != sup.rank()) return std::nullopt;
  const std::size_t r = sub.rank();
  IntMatrix change(r, r);
  for (std::size_t c = 0; c < r; ++c) {
    const Vector coords = *sup.coordinates_of(sub.basis()[c]);
    for (std::size_t i = 0; i < r; ++i) change(i, c) = coords[i];
  }
  return abs(determinant(change));
}

}  // namespace graphmf
