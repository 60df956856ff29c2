#pragma once

#include "exalg/words.hpp"

namespace exalg {

enum class ReduceFamily { Linear, Symplectic };

GroupKind reduce_group(ReduceFamily f);
AtomFamily reduce_atom_family(ReduceFamily f);

/// Word w with e1 * eval(w) = v, over local rings (pivot search) or finite
/// semilocal rings (bounded brute-force coefficient search). The symplectic
/// family emits SpSE atoms only.
Word complete_unimodular(const std::vector<RElem>& v, ReduceFamily family);

/// Factors a member of SL_n(R) / Sp_2m(R) into elementary generators over a
/// local (or finite semilocal) ring: pivot the first row to e1, clear the
/// first column (symplectic: also normalize the sigma-partner row), recurse.
Word reduce_local(const Mat& a, ReduceFamily family);

/// LinE factorization over Euclidean rings: gcd chains on the first column,
/// row clearing, recursion; the unit diagonal is swept up by Whitehead-style
/// 2x2 blocks at the end.
Word reduce_euclidean(const Mat& a);

/// Five-factor split of [alpha(X), beta(X)] over R[X] with R local:
/// s, t s^-1 t^-1, and three conjugate correction factors each carrying an
/// elementary proof obtained from reduce_local at X = 0.
Certificate commutator_split(const Mat& alphaX, const Mat& betaX, ReduceFamily family);

/// sigma in S(n, R, I) over local R: lift to the excision ring, reduce there,
/// relativize against the retraction, push through (r,i) |-> r+i.
RelWord relativize_excision(const Mat& sigma, const Ideal& ideal, ReduceFamily family);

struct HomotopyWitness {
  Mat gamma;   // over R[X], gamma(0) = I
  Mat target;  // gamma(1)
};

/// Checks gamma(0) = I and records gamma(1) as the homotopy target.
HomotopyWitness make_homotopy_witness(const Mat& gammaX);

/// Entrywise Swan-Weibel map on a graded tower member: sigma(T) with
/// sigma(0) = I (fails when sigma is not congruent to I mod the augmentation
/// ideal) and sigma(1) = sigma.
HomotopyWitness graded_homotopy(const Mat& sigma, const Ideal& augmentation);

/// delta(X) = [gamma(X), beta] with delta(0) = I; over Euclidean polynomial
/// rings also an explicit elementary word for [gamma(1), beta]. Elsewhere a
/// predicate-level certificate flagged non-constructive.
Certificate homotopy_commutator(const HomotopyWitness& witness, const Mat& beta);

// ---- orthogonal-group toolbox (requires 2 a unit) -----------------------------

struct SODecomposition {
  RElem u;    // alpha = hyperbolic_diag(u) * eval(word)
  Word word;  // OrthO atoms
};

/// alpha in SO_2m(R), R local, m >= 2: pivot the isotropic first row to e1,
/// normalize the sigma-partner, recurse on the perpendicular complement,
/// then fold the per-plane units into the first plane by hyperbolic pairs.
SODecomposition so_decompose_local(const Mat& a);

struct SquareClass {
  RElem rep;  // unit representative
};

/// u a unit: decides membership in (R*)^2 by enumeration over finite rings,
/// by residue tests in supported local rings, and by sign/square tests in QQ.
bool is_square_unit(const RElem& u);
bool square_class_equal(const SquareClass& a, const SquareClass& b);
inline bool square_class_trivial(const SquareClass& c) { return is_square_unit(c.rep); }

/// Square class of the hyperbolic unit of so_decompose_local.
SquareClass spinor_norm(const Mat& a);

/// Reflection x |-> x - 2 v B(v,x)/B(v,v) w.r.t. phi_m; orthogonal, det -1.
Mat reflection(const RingPtr& ring, const std::vector<RElem>& v);

/// OrthO word evaluating to diag(u, u^-1, u^-1, u) ⊥ I_{2m-4}.
Word whitehead_orth(const RElem& u, int m);

/// Word (or RelWord, when rel is given) evaluating exactly to a^2.
Certificate square_in_eo(const Mat& a, const std::optional<Ideal>& rel = {});

}  // namespace exalg
