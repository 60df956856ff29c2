#pragma once

#include "exalg/factor.hpp"

#include <cstdint>

namespace exalg {

/// Dense enumeration of a finite tower ring with cached operation tables.
/// Backs the index-coded orbit kernels; the serial references work on RElem
/// values directly and never touch these tables.
class FiniteRingEnum {
 public:
  explicit FiniteRingEnum(RingPtr ring);

  const RingPtr& ring() const { return ring_; }
  long size() const { return static_cast<long>(elems_.size()); }
  const RElem& elem(long idx) const { return elems_[idx]; }
  long index(const RElem& e) const;

  long add(long a, long b) const { return add_[a * size() + b]; }
  long mul(long a, long b) const { return mul_[a * size() + b]; }
  long neg_idx(long a) const { return neg_[a]; }
  bool unit(long a) const { return unit_[a] != 0; }

 private:
  RingPtr ring_;
  std::vector<RElem> elems_;
  std::vector<long> add_, mul_, neg_;
  std::vector<char> unit_;
};

/// Mixed-radix row code: sum of element indices weighted by size^position.
using RowCode = std::uint64_t;

std::vector<RElem> decode_row(const FiniteRingEnum& R, int n, RowCode code);
RowCode encode_row(const FiniteRingEnum& R, const std::vector<RElem>& row);

/// All rows of R^n generating the unit ideal, as sorted codes; with `rel`,
/// filtered to rows congruent to e1 modulo the ideal. OpenMP-parallel.
std::vector<RowCode> enum_um(int n, const FiniteRingEnum& R,
                             const std::optional<Ideal>& rel = {});
/// Reference implementation: brute-force coefficient search per row.
std::vector<RowCode> enum_um_serial(int n, const FiniteRingEnum& R,
                                    const std::optional<Ideal>& rel = {});

enum class OrbitFamily { Linear, Symplectic, Orthogonal };

struct OrbitTable {
  int n = 0;
  std::vector<RowCode> rows;       // sorted
  std::vector<int> orbit_of;      // parallel to rows
  std::vector<RowCode> reps;       // canonical = least row code in the orbit
  std::vector<long> sizes;
  std::vector<char> completable;   // per orbit; empty when not computed
  std::vector<std::vector<int>> table;  // multiplication on completable orbits

  int orbit_count() const { return static_cast<int>(reps.size()); }
  int orbit_of_code(RowCode c) const;
};

/// Fixed-point closure of the rows under right multiplication by every
/// elementary generator (all ring parameters); with `rel`, by the relative
/// generator set e(a) and g e(a) g^-1 for single atoms g, a in the ideal.
/// OpenMP-parallel frontier expansion over an atomic visited bitmap.
OrbitTable orbit_bfs(const std::vector<RowCode>& rows, int n, const FiniteRingEnum& R,
                     OrbitFamily family, const std::optional<Ideal>& rel = {});
/// Reference implementation on RElem rows and ordered sets.
OrbitTable orbit_bfs_serial(const std::vector<RowCode>& rows, int n,
                            const FiniteRingEnum& R, OrbitFamily family,
                            const std::optional<Ideal>& rel = {});

/// Completion of a relative unimodular row to a matrix in SL_n(A, A+) with
/// first row v, through the excision ring; exhaustive fallback below a guard.
std::optional<Mat> complete_relative(const std::vector<RElem>& v, const Ideal& augmentation);

/// Orbit decomposition of the relative unimodular rows with the induced
/// multiplication table [u][v] = [e1 a_u a_v] on completable orbits.
OrbitTable orbit_group(const FiniteRingEnum& A, const Ideal& augmentation, int n);

}  // namespace exalg
