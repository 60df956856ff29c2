#pragma once

#include "exalg/numeric.hpp"

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace exalg {

class Ring;
using RingPtr = std::shared_ptr<const Ring>;

/// Bad input or broken precondition (CLI maps these to exit code 2).
struct contract_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The question is not decidable in this tower member.
struct unsupported_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class RingKind {
  Integers,
  Modular,
  PrimeField,
  Rationals,
  Polynomial,
  LocalizedAtPrime,
  Quotient,
  Excision,
};

/// Reduced fraction, den > 0, gcd(num, den) = 1.
struct Rat {
  Int num{0};
  Int den{1};
  bool operator==(const Rat&) const = default;
};

/// Canonical-form ring element. Payload meaning depends on the owning ring:
///   Int  — Integers, Modular, PrimeField (residue in [0, n))
///   Rat  — Rationals, LocalizedAtPrime (reduced, p does not divide den)
///   Vec  — Polynomial/Quotient: coefficients low to high, no trailing zeros;
///          Excision: exactly {r, i} with i in the ideal
class RElem {
 public:
  using Vec = std::vector<RElem>;
  using Payload = std::variant<Int, Rat, Vec>;

  RElem() = default;
  RElem(RingPtr r, Payload v) : ring_(std::move(r)), v_(std::move(v)) {}

  const RingPtr& ring() const { return ring_; }
  const Payload& payload() const { return v_; }
  bool valid() const { return ring_ != nullptr; }

  const Int& as_int() const { return std::get<Int>(v_); }
  const Rat& as_rat() const { return std::get<Rat>(v_); }
  const Vec& as_vec() const { return std::get<Vec>(v_); }

 private:
  RingPtr ring_;
  Payload v_;
};

/// Finitely generated ideal of a tower ring.
struct Ideal {
  RingPtr ring;
  std::vector<RElem> gens;
};

class Ring : public std::enable_shared_from_this<Ring> {
 public:
  RingKind kind{RingKind::Integers};
  Int n{0};                            // Modular n / PrimeField p / LocalizedAtPrime p
  RingPtr base;                        // Polynomial: coefficient ring; Quotient: the polynomial ring; Excision: base
  std::string var;                     // Polynomial variable
  std::vector<RElem> modulus_coeffs;   // Quotient: modulus coefficients over the coefficient ring
  std::optional<Ideal> exc_ideal;      // Excision

  static RingPtr integers();
  static RingPtr rationals();
  static RingPtr modular(const Int& n);
  static RingPtr prime_field(const Int& p);
  static RingPtr polynomial(RingPtr coeff, const std::string& var);
  static RingPtr localized_at_prime(const Int& p);
  static RingPtr quotient(RingPtr poly_ring, const RElem& modulus);
  static RingPtr excision(RingPtr base, Ideal ideal);

  bool equal(const Ring& o) const;

  bool is_field() const { return field_; }
  bool is_local() const { return local_; }
  bool is_euclidean() const { return euclidean_; }
  bool is_finite() const { return size_.has_value(); }
  const Int& cardinality() const;

  /// Coefficient ring of a Polynomial, or of a Quotient's polynomial base.
  const RingPtr& coeff_ring() const;
  /// Quotient only: modulus as an element of the polynomial base.
  RElem modulus_elem() const;
  int quot_degree() const { return static_cast<int>(modulus_coeffs.size()) - 1; }

  /// Elements of the excision ideal, enumerated once (finite excision rings only).
  const std::vector<RElem>& excision_ideal_elems() const;

  std::string name() const;

 private:
  bool field_ = false;
  bool local_ = false;
  bool euclidean_ = false;
  std::optional<Int> size_;
  std::vector<RElem> ideal_elems_;  // Excision, finite case

  void finalize();
  friend RingPtr finish_ring(std::shared_ptr<Ring> r);
};

// ---- construction -----------------------------------------------------------

RElem zero(const RingPtr& r);
RElem one(const RingPtr& r);
/// Canonical image of an integer in any tower ring.
RElem from_int(const RingPtr& r, const Int& v);
RElem make_fraction(const RingPtr& r, Int num, Int den);
/// Coefficient vector (low to high) for Polynomial or Quotient rings.
RElem make_poly(const RingPtr& r, std::vector<RElem> coeffs);
/// Excision pair (r, i); checks i against the ideal.
RElem make_pair(const RingPtr& r, RElem rc, RElem ic);
/// Generator named `name` anywhere in the tower, embedded into r.
RElem var_elem(const RingPtr& r, const std::string& name);
/// Embed an element of a ring lower in the tower into r.
RElem embed(const RingPtr& r, const RElem& sub);

// ---- arithmetic -------------------------------------------------------------

RElem add(const RElem& a, const RElem& b);
RElem sub(const RElem& a, const RElem& b);
RElem mul(const RElem& a, const RElem& b);
RElem neg(const RElem& a);
RElem pow_elem(const RElem& a, const Int& e);

inline RElem operator+(const RElem& a, const RElem& b) { return add(a, b); }
inline RElem operator-(const RElem& a, const RElem& b) { return sub(a, b); }
inline RElem operator*(const RElem& a, const RElem& b) { return mul(a, b); }
inline RElem operator-(const RElem& a) { return neg(a); }

bool is_zero(const RElem& a);
bool is_one(const RElem& a);
bool operator==(const RElem& a, const RElem& b);
inline bool operator!=(const RElem& a, const RElem& b) { return !(a == b); }
/// Total order on canonical payloads (used for deterministic representatives).
int compare(const RElem& a, const RElem& b);

/// Inverse when `a` is a unit, nullopt otherwise. Total; never throws on non-units.
std::optional<RElem> unit_inverse(const RElem& a);
inline bool is_unit(const RElem& a) { return unit_inverse(a).has_value(); }
bool is_nilpotent(const RElem& a);

/// Exact membership where decidable; throws unsupported_error otherwise.
bool ideal_contains(const Ideal& ideal, const RElem& a);
bool ideal_is_proper(const Ideal& ideal);

// ---- Euclidean structure ----------------------------------------------------

bool euclidean_supported(const Ring& r);
/// 0 for zero elements, strictly monotone under proper division.
Int euclidean_size(const RElem& a);
/// (q, r) with a = q*b + r and size(r) < size(b).
std::pair<RElem, RElem> euclidean_divmod(const RElem& a, const RElem& b);
RElem euclidean_gcd(RElem a, RElem b);

// ---- polynomial views -------------------------------------------------------

int poly_degree(const RElem& a);          // -1 for zero
RElem poly_coeff(const RElem& a, int d);  // coefficient in the coefficient ring
RElem poly_eval(const RElem& a, const RElem& x);  // x in the coefficient ring

// ---- enumeration of finite rings ---------------------------------------------

RElem elem_at(const RingPtr& r, const Int& index);
Int index_of(const RElem& a);

// ---- text form ----------------------------------------------------------------

std::string to_string(const RElem& a);
/// Inverse of to_string; accepts +,-,*,/,^, parentheses, tower variables,
/// and "(r, i)" pairs for excision rings.
RElem parse_elem(const RingPtr& r, const std::string& text);

void require_same_ring(const RElem& a, const RElem& b);

}  // namespace exalg
