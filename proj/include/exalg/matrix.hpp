#pragma once

#include "exalg/hom.hpp"
#include "exalg/ring.hpp"

namespace exalg {

/// Dense square matrix over a tower ring; immutable by convention after filling.
class Mat {
 public:
  Mat() = default;
  Mat(RingPtr ring, int n) : ring_(std::move(ring)), n_(n), a_(n * n, zero(ring_)) {}

  const RingPtr& ring() const { return ring_; }
  int n() const { return n_; }

  const RElem& at(int i, int j) const { return a_[i * n_ + j]; }
  RElem& at(int i, int j) { return a_[i * n_ + j]; }

  bool operator==(const Mat& o) const;

 private:
  RingPtr ring_;
  int n_ = 0;
  std::vector<RElem> a_;
};

Mat identity(const RingPtr& r, int n);
Mat mat_mul(const Mat& a, const Mat& b);
inline Mat operator*(const Mat& a, const Mat& b) { return mat_mul(a, b); }
Mat mat_add(const Mat& a, const Mat& b);
Mat mat_sub(const Mat& a, const Mat& b);
Mat transpose(const Mat& a);
Mat scalar_mul(const RElem& c, const Mat& a);
bool is_identity(const Mat& a);

/// v * a for a row vector v of length a.n().
std::vector<RElem> row_mul(const std::vector<RElem>& v, const Mat& a);

/// Characteristic polynomial of det(lambda*I - A), leading coefficient first.
/// Division-free (Berkowitz iteration), valid over rings with zero divisors.
std::vector<RElem> char_poly(const Mat& a);
RElem det(const Mat& a);
/// Adjugate-based exact inverse; throws when det is not a unit.
Mat inverse(const Mat& a);
Mat mat_pow(const Mat& a, const Int& e);

/// Entrywise image under a ring homomorphism.
Mat hom_apply(const RingHom& h, const Mat& a);
Mat embed_mat(const RingPtr& target, const Mat& a);

// ---- standard forms and groups -----------------------------------------------

/// sigma(2i) = 2i-1, sigma(2i-1) = 2i, on 1-based indices.
int sigma_index(int i);

/// psi_m: perpendicular sum of [[0,1],[-1,0]] blocks (alternating).
Mat symplectic_form(const RingPtr& r, int m);
/// phi_m: perpendicular sum of [[0,1],[1,0]] blocks (symmetric).
Mat orthogonal_form(const RingPtr& r, int m);

/// diag(u, u^-1) on the first hyperbolic plane, identity elsewhere.
Mat hyperbolic_diag(const RingPtr& r, int n, const RElem& u);

enum class GroupKind { SL, Sp, SO, O };

std::string group_name(GroupKind g);
GroupKind group_from_name(const std::string& s);

struct MemberReport {
  bool ok = false;
  std::string reason;  // set when !ok
};

/// Membership in SL/Sp/SO/O by exact determinant and form equations; with
/// `rel`, additionally a == I entrywise modulo the ideal.
MemberReport is_member(const Mat& a, GroupKind g, const std::optional<Ideal>& rel = {});

}  // namespace exalg
