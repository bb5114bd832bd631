#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "graphmf/matrix.hpp"

namespace graphmf {

/// A sublattice of Z^m held in column Hermite normal form.
///
/// Two lattices are equal iff their stored bases agree entry-wise. The zero lattice
/// has an empty basis. Values are immutable once built.
class Lattice {
 public:
  Lattice() = default;
  /// HNF-canonical span of `generators`; throws InputError on a length mismatch.
  static Lattice from_generators(std::size_t ambient_rank, const std::vector<Vector>& generators);
  static Lattice zero(std::size_t ambient_rank);
  static Lattice full(std::size_t ambient_rank);
  /// span{e_first, ..., e_{first+count-1}} (0-based coordinates).
  static Lattice coordinate(std::size_t ambient_rank, std::size_t first, std::size_t count);

  std::size_t ambient_rank() const noexcept { return ambient_; }
  std::size_t rank() const noexcept { return basis_.size(); }
  const std::vector<Vector>& basis() const noexcept { return basis_; }
  /// ambient_rank x rank matrix whose columns are the basis.
  IntMatrix basis_matrix() const;

  bool is_zero() const noexcept { return basis_.empty(); }
  bool is_full() const;
  bool contains(const Vector& v) const;
  /// Integer coordinates of `v` in the stored basis, if `v` lies in the lattice.
  std::optional<Vector> coordinates_of(const Vector& v) const;

  friend bool operator==(const Lattice& a, const Lattice& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }

 private:
  Lattice(std::size_t ambient, std::vector<Vector> basis)
      : ambient_(ambient), basis_(std::move(basis)) {}

  std::size_t ambient_ = 0;
  std::vector<Vector> basis_;
};

Lattice intersect(const Lattice& a, const Lattice& b);
Lattice sum(const Lattice& a, const Lattice& b);
/// {v : k v in a for some k != 0}; Z^m / saturate(a) is torsion-free.
Lattice saturate(const Lattice& a);
/// m applied to every vector of a (m has a.ambient_rank() columns).
Lattice image(const Lattice& a, const IntMatrix& m);
/// {v : m v = 0} as a sublattice of Z^{m.cols()}.
Lattice kernel(const IntMatrix& m);
bool is_sublattice(const Lattice& sub, const Lattice& sup);
/// [sup : sub]; std::nullopt when the index is infinite (rank drop).
/// Throws InputError if sub is not contained in sup.
std::optional<Int> index_in(const Lattice& sub, const Lattice& sup);

}  // namespace graphmf
