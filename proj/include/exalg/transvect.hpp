#pragma once

#include "exalg/matrix.hpp"

namespace exalg {

enum class ModuleForm { None, Symplectic, Orthogonal };

/// Finitely generated projective module presented as the image of an
/// idempotent; elements are ambient columns p with E p = p, functionals are
/// ambient rows f with f E = f. Automorphisms act on the ambient and fix
/// ker E.
struct ProjModule {
  RingPtr ring;
  int N = 0;
  Mat idempotent;
  ModuleForm form = ModuleForm::None;
  std::optional<Mat> gram;
};

/// Validates E^2 = E; with a Gram matrix, checks alternating/symmetric shape
/// and invertibility on the image via the complementary-summand extension
/// E^t G E + (I-E)^t (I-E).
ProjModule make_proj_module(RingPtr ring, Mat idempotent, ModuleForm form = ModuleForm::None,
                            std::optional<Mat> gram = {});

bool module_contains(const ProjModule& m, const std::vector<RElem>& p);
bool functional_on(const ProjModule& m, const std::vector<RElem>& f);
/// <x, y> = x^t G y.
RElem form_value(const ProjModule& m, const std::vector<RElem>& x, const std::vector<RElem>& y);

/// m is unimodular in M iff its order ideal contains 1; decided from the
/// entries of E m where the ring supports it.
bool module_elem_unimodular(const ProjModule& m, const std::vector<RElem>& p);

struct TransvectionSpec {
  enum class Kind { Linear, Symplectic, Orthogonal } kind;
  std::vector<RElem> q_or_u;  // linear: q;      pairs: u
  std::vector<RElem> f_or_v;  // linear: f(row); pairs: v
};

/// Ambient matrix of the transvection; checks the defining constraints
/// (f(q) = 0, orthogonality, isotropy) and the exact isometry predicate.
Mat make_transvection(const ProjModule& m, const TransvectionSpec& spec);
/// The paper's explicit inverse formulas, for composition checks.
Mat make_transvection_inverse(const ProjModule& m, const TransvectionSpec& spec);

enum class ExtensionKind { DserLinear, SymplecticPair, OrthogonalPair };

/// Outcome of building an elementary transvection on M+R (linear) or
/// M ⊥ R^2 (pairs). Formula/predicate mismatches are reported, not patched:
/// `accepted` is false and `diagnostic` names the failure.
struct ExtensionResult {
  Mat map;  // the literal mapped automorphism on the extended ambient
  bool accepted = false;
  std::string diagnostic;
};

/// `which` selects the first or second displayed formula of each kind.
/// For DserLinear, which=1 takes q as an element x of M, which=2 takes q as
/// functional coefficients (the functional is q^t E).
ExtensionResult elementary_on_extension(const ProjModule& m, ExtensionKind kind, int which,
                                        const std::vector<RElem>& q);

/// Gram matrix of the extension M ⊥ R^2 used by the pair kinds.
Mat extension_gram(const ProjModule& m, ExtensionKind kind);

}  // namespace exalg
