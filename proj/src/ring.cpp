#include "exalg/ring.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace exalg {

namespace {

constexpr long kEnumGuard = 4096;  // element count above which ring-level
                                   // enumeration decisions are refused

[[noreturn]] void fail(const std::string& msg) { throw contract_error(msg); }

bool vec_payload(const RElem& a) {
  return std::holds_alternative<RElem::Vec>(a.payload());
}

Rat reduce_rat(Int num, Int den) {
  if (den == 0) fail("zero denominator");
  if (num == 0) return {0, 1};
  if (den < 0) {
    den = -den;
    num = -num;
  }
  Int g = int_gcd(num < 0 ? Int(-num) : num, den);
  return {num / g, den / g};
}

// --- raw coefficient-vector arithmetic over an explicit coefficient ring ----

using Coeffs = std::vector<RElem>;

void trim(Coeffs& c) {
  while (!c.empty() && is_zero(c.back())) c.pop_back();
}

Coeffs cadd(const RingPtr& k, const Coeffs& a, const Coeffs& b) {
  Coeffs out(std::max(a.size(), b.size()), zero(k));
  for (size_t i = 0; i < out.size(); ++i) {
    if (i < a.size()) out[i] = out[i] + a[i];
    if (i < b.size()) out[i] = out[i] + b[i];
  }
  trim(out);
  return out;
}

Coeffs cneg(const Coeffs& a) {
  Coeffs out = a;
  for (auto& c : out) c = neg(c);
  return out;
}

Coeffs cmul(const RingPtr& k, const Coeffs& a, const Coeffs& b) {
  if (a.empty() || b.empty()) return {};
  Coeffs out(a.size() + b.size() - 1, zero(k));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) out[i + j] = out[i + j] + a[i] * b[j];
  trim(out);
  return out;
}

// Division by a monic divisor works over any coefficient ring.
std::pair<Coeffs, Coeffs> cdivmod_monic(const RingPtr& k, Coeffs a, const Coeffs& f) {
  if (f.empty()) fail("division by zero polynomial");
  if (!is_one(f.back())) fail("divisor is not monic");
  Coeffs q;
  if (a.size() >= f.size()) q.assign(a.size() - f.size() + 1, zero(k));
  while (a.size() >= f.size()) {
    RElem c = a.back();
    size_t shift = a.size() - f.size();
    q[shift] = c;
    for (size_t i = 0; i < f.size(); ++i)
      a[shift + i] = a[shift + i] - c * f[i];
    trim(a);
    if (a.size() >= shift + f.size()) fail("monic division did not reduce degree");
  }
  trim(q);
  return {q, a};
}

// Field-coefficient long division.
std::pair<Coeffs, Coeffs> cdivmod_field(const RingPtr& k, Coeffs a, const Coeffs& f) {
  if (f.empty()) fail("polynomial division by zero");
  auto lead_inv = unit_inverse(f.back());
  if (!lead_inv) fail("leading coefficient is not invertible");
  Coeffs q;
  if (a.size() >= f.size()) q.assign(a.size() - f.size() + 1, zero(k));
  while (a.size() >= f.size()) {
    RElem c = a.back() * *lead_inv;
    size_t shift = a.size() - f.size();
    q[shift] = c;
    for (size_t i = 0; i < f.size(); ++i)
      a[shift + i] = a[shift + i] - c * f[i];
    trim(a);
    if (a.size() >= shift + f.size()) fail("long division did not reduce degree");
  }
  trim(q);
  return {q, a};
}

Coeffs cgcd_field(const RingPtr& k, Coeffs a, Coeffs b) {
  while (!b.empty()) {
    auto [q, r] = cdivmod_field(k, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  // normalize monic
  if (!a.empty()) {
    RElem inv = *unit_inverse(a.back());
    for (auto& c : a) c = c * inv;
  }
  return a;
}

const Coeffs& coeffs_of(const RElem& a) { return a.as_vec(); }

}  // namespace

// ---- Ring factories ---------------------------------------------------------

RingPtr finish_ring(std::shared_ptr<Ring> r) {
  r->finalize();
  return r;
}

RingPtr Ring::integers() {
  auto r = std::make_shared<Ring>();
  r->kind = RingKind::Integers;
  return finish_ring(r);
}

RingPtr Ring::rationals() {
  auto r = std::make_shared<Ring>();
  r->kind = RingKind::Rationals;
  return finish_ring(r);
}

RingPtr Ring::modular(const Int& n) {
  if (n < 2) fail("Modular requires n >= 2");
  auto r = std::make_shared<Ring>();
  r->kind = RingKind::Modular;
  r->n = n;
  return finish_ring(r);
}

RingPtr Ring::prime_field(const Int& p) {
  if (!is_prime(p)) fail("PrimeField requires a prime p");
  auto r = std::make_shared<Ring>();
  r->kind = RingKind::PrimeField;
  r->n = p;
  return finish_ring(r);
}

namespace {
bool tower_has_var(const Ring& r, const std::string& name) {
  if (r.kind == RingKind::Polynomial) {
    if (r.var == name) return true;
    return tower_has_var(*r.base, name);
  }
  if (r.kind == RingKind::Quotient || r.kind == RingKind::Excision)
    return tower_has_var(*r.base, name);
  return false;
}
}  // namespace

RingPtr Ring::polynomial(RingPtr coeff, const std::string& v) {
  if (!coeff) fail("polynomial ring needs a coefficient ring");
  if (v.empty() || !std::isalpha(static_cast<unsigned char>(v[0])))
    fail("variable name must start with a letter");
  if (tower_has_var(*coeff, v)) fail("variable name already used in the tower: " + v);
  auto r = std::make_shared<Ring>();
  r->kind = RingKind::Polynomial;
  r->base = std::move(coeff);
  r->var = v;
  return finish_ring(r);
}

RingPtr Ring::localized_at_prime(const Int& p) {
  if (!is_prime(p)) fail("LocalizedAtPrime requires a prime p");
  auto r = std::make_shared<Ring>();
  r->kind = RingKind::LocalizedAtPrime;
  r->n = p;
  return finish_ring(r);
}

RingPtr Ring::quotient(RingPtr poly_ring, const RElem& modulus) {
  if (!poly_ring || poly_ring->kind != RingKind::Polynomial)
    fail("Quotient base must be a polynomial ring");
  if (!modulus.valid() || !modulus.ring()->equal(*poly_ring))
    fail("Quotient modulus must live in the base polynomial ring");
  Coeffs mc = modulus.as_vec();
  if (static_cast<int>(mc.size()) < 2) fail("Quotient modulus must have degree >= 1");
  const RingPtr& k = poly_ring->base;
  if (!is_one(mc.back())) {
    if (!k->is_field()) fail("Quotient modulus must be monic over a non-field coefficient ring");
    RElem inv = *unit_inverse(mc.back());
    for (auto& c : mc) c = c * inv;
  }
  auto r = std::make_shared<Ring>();
  r->kind = RingKind::Quotient;
  r->base = std::move(poly_ring);
  r->modulus_coeffs = std::move(mc);
  return finish_ring(r);
}

RingPtr Ring::excision(RingPtr base, Ideal ideal) {
  if (!base) fail("excision needs a base ring");
  if (base->kind == RingKind::Excision) fail("nested excision rings are not supported");
  if (!ideal.ring || !ideal.ring->equal(*base)) fail("excision ideal must live in the base ring");
  if (!ideal_is_proper(ideal)) fail("excision ideal must be proper");
  auto r = std::make_shared<Ring>();
  r->kind = RingKind::Excision;
  r->base = std::move(base);
  r->exc_ideal = std::move(ideal);
  return finish_ring(r);
}

// ---- capability flags -------------------------------------------------------

namespace {

// Non-units closed under addition, decided by enumeration. Guarded.
bool local_by_enumeration(const RingPtr& r) {
  const Int& sz = r->cardinality();
  if (sz > kEnumGuard)
    throw unsupported_error("locality undecided: ring too large to enumerate");
  std::vector<RElem> nonunits;
  for (Int i = 0; i < sz; ++i) {
    RElem e = elem_at(r, i);
    if (!is_unit(e)) nonunits.push_back(e);
  }
  for (const auto& a : nonunits)
    for (const auto& b : nonunits)
      if (is_unit(a + b)) return false;
  return true;
}

bool field_by_enumeration(const RingPtr& r) {
  const Int& sz = r->cardinality();
  if (sz > kEnumGuard) throw unsupported_error("field test: ring too large to enumerate");
  for (Int i = 0; i < sz; ++i) {
    RElem e = elem_at(r, i);
    if (!is_zero(e) && !is_unit(e)) return false;
  }
  return true;
}

}  // namespace

void Ring::finalize() {
  auto self = [this] {
    return std::const_pointer_cast<const Ring>(shared_from_this());
  };
  switch (kind) {
    case RingKind::Integers:
      euclidean_ = true;
      break;
    case RingKind::Rationals:
      field_ = local_ = euclidean_ = true;
      break;
    case RingKind::Modular: {
      size_ = n;
      field_ = is_prime(n);
      euclidean_ = field_;
      // local iff n is a prime power
      Int m = n;
      Int p = 2;
      while (p * p <= m && m % p != 0) p = (p == 2) ? Int(3) : Int(p + 2);
      if (m % p != 0) p = m;  // n prime
      while (m % p == 0) m /= p;
      local_ = (m == 1);
      break;
    }
    case RingKind::PrimeField:
      size_ = n;
      field_ = local_ = euclidean_ = true;
      break;
    case RingKind::LocalizedAtPrime:
      local_ = true;
      break;
    case RingKind::Polynomial:
      euclidean_ = base->is_field();
      break;
    case RingKind::Quotient: {
      const RingPtr& k = coeff_ring();
      if (k->is_finite()) {
        Int s = 1;
        for (int i = 0; i < quot_degree(); ++i) s *= k->cardinality();
        size_ = s;
      }
      // t^k fast path: pure monomial modulus over a field is local
      bool monomial = true;
      for (int i = 0; i + 1 < static_cast<int>(modulus_coeffs.size()); ++i)
        if (!is_zero(modulus_coeffs[i])) monomial = false;
      if (monomial && k->is_field() && quot_degree() >= 1) {
        local_ = true;
        field_ = (quot_degree() == 1);
      } else if (size_ && *size_ <= kEnumGuard) {
        auto r = self();
        field_ = field_by_enumeration(r);
        local_ = field_ || local_by_enumeration(r);
      }
      euclidean_ = field_;
      break;
    }
    case RingKind::Excision: {
      local_ = base->is_local();
      if (base->is_finite() && base->cardinality() <= kEnumGuard) {
        auto r = self();
        for (Int i = 0; i < base->cardinality(); ++i) {
          RElem e = elem_at(base, i);
          if (ideal_contains(*exc_ideal, e)) ideal_elems_.push_back(e);
        }
        size_ = base->cardinality() * Int(ideal_elems_.size());
      }
      break;
    }
  }
}

const Int& Ring::cardinality() const {
  if (!size_) throw unsupported_error("ring is not finite (or too large): " + name());
  return *size_;
}

const RingPtr& Ring::coeff_ring() const {
  if (kind == RingKind::Polynomial) return base;
  if (kind == RingKind::Quotient) return base->base;
  fail("coeff_ring: not a polynomial or quotient ring");
}

RElem Ring::modulus_elem() const {
  if (kind != RingKind::Quotient) fail("modulus_elem: not a quotient ring");
  return RElem(base, modulus_coeffs);
}

const std::vector<RElem>& Ring::excision_ideal_elems() const {
  if (kind != RingKind::Excision) fail("not an excision ring");
  if (!size_) throw unsupported_error("excision ideal is not enumerable here");
  return ideal_elems_;
}

bool Ring::equal(const Ring& o) const {
  if (kind != o.kind) return false;
  switch (kind) {
    case RingKind::Integers:
    case RingKind::Rationals:
      return true;
    case RingKind::Modular:
    case RingKind::PrimeField:
    case RingKind::LocalizedAtPrime:
      return n == o.n;
    case RingKind::Polynomial:
      return var == o.var && base->equal(*o.base);
    case RingKind::Quotient: {
      if (!base->equal(*o.base)) return false;
      if (modulus_coeffs.size() != o.modulus_coeffs.size()) return false;
      for (size_t i = 0; i < modulus_coeffs.size(); ++i)
        if (!(modulus_coeffs[i] == o.modulus_coeffs[i])) return false;
      return true;
    }
    case RingKind::Excision: {
      if (!base->equal(*o.base)) return false;
      if (exc_ideal->gens.size() != o.exc_ideal->gens.size()) return false;
      for (size_t i = 0; i < exc_ideal->gens.size(); ++i)
        if (!(exc_ideal->gens[i] == o.exc_ideal->gens[i])) return false;
      return true;
    }
  }
  return false;
}

std::string Ring::name() const {
  switch (kind) {
    case RingKind::Integers: return "ZZ";
    case RingKind::Rationals: return "QQ";
    case RingKind::Modular: return "Z/" + int_str(n);
    case RingKind::PrimeField: return "F_" + int_str(n);
    case RingKind::LocalizedAtPrime: return "Z_(" + int_str(n) + ")";
    case RingKind::Polynomial: return base->name() + "[" + var + "]";
    case RingKind::Quotient:
      return base->name() + "/(" + to_string(modulus_elem()) + ")";
    case RingKind::Excision: {
      std::string g;
      for (size_t i = 0; i < exc_ideal->gens.size(); ++i)
        g += (i ? "," : "") + to_string(exc_ideal->gens[i]);
      return base->name() + "(+)(" + g + ")";
    }
  }
  return "?";
}

// ---- element construction ---------------------------------------------------

void require_same_ring(const RElem& a, const RElem& b) {
  if (!a.valid() || !b.valid() || !a.ring()->equal(*b.ring()))
    fail("ring mismatch between operands");
}

RElem zero(const RingPtr& r) {
  switch (r->kind) {
    case RingKind::Integers:
    case RingKind::Modular:
    case RingKind::PrimeField:
      return RElem(r, Int(0));
    case RingKind::Rationals:
    case RingKind::LocalizedAtPrime:
      return RElem(r, Rat{0, 1});
    case RingKind::Polynomial:
    case RingKind::Quotient:
      return RElem(r, RElem::Vec{});
    case RingKind::Excision:
      return RElem(r, RElem::Vec{zero(r->base), zero(r->base)});
  }
  fail("zero: bad ring");
}

RElem one(const RingPtr& r) { return from_int(r, 1); }

RElem from_int(const RingPtr& r, const Int& v) {
  switch (r->kind) {
    case RingKind::Integers:
      return RElem(r, v);
    case RingKind::Modular:
    case RingKind::PrimeField:
      return RElem(r, mod_floor(v, r->n));
    case RingKind::Rationals:
    case RingKind::LocalizedAtPrime:
      return RElem(r, Rat{v, 1});
    case RingKind::Polynomial:
    case RingKind::Quotient: {
      RElem c = from_int(r->coeff_ring(), v);
      if (is_zero(c)) return zero(r);
      return RElem(r, RElem::Vec{c});
    }
    case RingKind::Excision:
      return RElem(r, RElem::Vec{from_int(r->base, v), zero(r->base)});
  }
  fail("from_int: bad ring");
}

RElem make_fraction(const RingPtr& r, Int num, Int den) {
  if (r->kind != RingKind::Rationals && r->kind != RingKind::LocalizedAtPrime)
    fail("fractions only exist in QQ and localizations");
  Rat q = reduce_rat(std::move(num), std::move(den));
  if (r->kind == RingKind::LocalizedAtPrime && q.den % r->n == 0)
    fail("denominator lies in the prime of the localization");
  return RElem(r, q);
}

RElem make_poly(const RingPtr& r, std::vector<RElem> coeffs) {
  if (r->kind != RingKind::Polynomial && r->kind != RingKind::Quotient)
    fail("make_poly: not a polynomial or quotient ring");
  const RingPtr& k = r->coeff_ring();
  for (const auto& c : coeffs)
    if (!c.valid() || !c.ring()->equal(*k)) fail("coefficient outside the coefficient ring");
  trim(coeffs);
  if (r->kind == RingKind::Quotient) {
    auto [q, rem] = cdivmod_monic(k, std::move(coeffs), r->modulus_coeffs);
    (void)q;
    coeffs = std::move(rem);
  }
  return RElem(r, std::move(coeffs));
}

RElem make_pair(const RingPtr& r, RElem rc, RElem ic) {
  if (r->kind != RingKind::Excision) fail("make_pair: not an excision ring");
  if (!rc.ring()->equal(*r->base) || !ic.ring()->equal(*r->base))
    fail("excision components must live in the base ring");
  if (!ideal_contains(*r->exc_ideal, ic))
    fail("second excision component is not in the ideal");
  return RElem(r, RElem::Vec{std::move(rc), std::move(ic)});
}

RElem embed(const RingPtr& r, const RElem& sub) {
  if (sub.ring()->equal(*r)) return sub;
  switch (r->kind) {
    case RingKind::Polynomial:
    case RingKind::Quotient: {
      RElem c = embed(r->coeff_ring(), sub);
      if (is_zero(c)) return zero(r);
      return RElem(r, RElem::Vec{c});
    }
    case RingKind::Excision:
      return make_pair(r, embed(r->base, sub), zero(r->base));
    default:
      fail("cannot embed " + sub.ring()->name() + " into " + r->name());
  }
}

RElem var_elem(const RingPtr& r, const std::string& name) {
  switch (r->kind) {
    case RingKind::Polynomial:
      if (r->var == name) return RElem(r, RElem::Vec{zero(r->base), one(r->base)});
      return embed(r, var_elem(r->base, name));
    case RingKind::Quotient: {
      if (r->base->var == name)
        return make_poly(r, {zero(r->coeff_ring()), one(r->coeff_ring())});
      return embed(r, var_elem(r->coeff_ring(), name));
    }
    case RingKind::Excision:
      return make_pair(r, var_elem(r->base, name), zero(r->base));
    default:
      fail("no variable named '" + name + "' in " + r->name());
  }
}

// ---- arithmetic -------------------------------------------------------------

RElem add(const RElem& a, const RElem& b) {
  require_same_ring(a, b);
  const RingPtr& r = a.ring();
  switch (r->kind) {
    case RingKind::Integers:
      return RElem(r, a.as_int() + b.as_int());
    case RingKind::Modular:
    case RingKind::PrimeField:
      return RElem(r, mod_floor(a.as_int() + b.as_int(), r->n));
    case RingKind::Rationals:
    case RingKind::LocalizedAtPrime: {
      const Rat &x = a.as_rat(), &y = b.as_rat();
      return RElem(r, reduce_rat(x.num * y.den + y.num * x.den, x.den * y.den));
    }
    case RingKind::Polynomial:
      return RElem(r, cadd(r->coeff_ring(), a.as_vec(), b.as_vec()));
    case RingKind::Quotient:
      return RElem(r, cadd(r->coeff_ring(), a.as_vec(), b.as_vec()));
    case RingKind::Excision:
      return RElem(r, RElem::Vec{a.as_vec()[0] + b.as_vec()[0], a.as_vec()[1] + b.as_vec()[1]});
  }
  fail("add: bad ring");
}

RElem neg(const RElem& a) {
  const RingPtr& r = a.ring();
  switch (r->kind) {
    case RingKind::Integers:
      return RElem(r, Int(-a.as_int()));
    case RingKind::Modular:
    case RingKind::PrimeField:
      return RElem(r, mod_floor(-a.as_int(), r->n));
    case RingKind::Rationals:
    case RingKind::LocalizedAtPrime:
      return RElem(r, Rat{-a.as_rat().num, a.as_rat().den});
    case RingKind::Polynomial:
    case RingKind::Quotient:
      return RElem(r, cneg(a.as_vec()));
    case RingKind::Excision:
      return RElem(r, RElem::Vec{neg(a.as_vec()[0]), neg(a.as_vec()[1])});
  }
  fail("neg: bad ring");
}

RElem sub(const RElem& a, const RElem& b) { return add(a, neg(b)); }

RElem mul(const RElem& a, const RElem& b) {
  require_same_ring(a, b);
  const RingPtr& r = a.ring();
  switch (r->kind) {
    case RingKind::Integers:
      return RElem(r, a.as_int() * b.as_int());
    case RingKind::Modular:
    case RingKind::PrimeField:
      return RElem(r, mod_floor(a.as_int() * b.as_int(), r->n));
    case RingKind::Rationals:
    case RingKind::LocalizedAtPrime: {
      const Rat &x = a.as_rat(), &y = b.as_rat();
      return RElem(r, reduce_rat(x.num * y.num, x.den * y.den));
    }
    case RingKind::Polynomial:
      return RElem(r, cmul(r->coeff_ring(), a.as_vec(), b.as_vec()));
    case RingKind::Quotient: {
      Coeffs prod = cmul(r->coeff_ring(), a.as_vec(), b.as_vec());
      auto [q, rem] = cdivmod_monic(r->coeff_ring(), std::move(prod), r->modulus_coeffs);
      (void)q;
      return RElem(r, std::move(rem));
    }
    case RingKind::Excision: {
      // (r,i)(s,j) = (rs, rj + si + ij)
      const RElem &x = a.as_vec()[0], &i = a.as_vec()[1];
      const RElem &y = b.as_vec()[0], &j = b.as_vec()[1];
      return RElem(r, RElem::Vec{x * y, x * j + y * i + i * j});
    }
  }
  fail("mul: bad ring");
}

RElem pow_elem(const RElem& a, const Int& e) {
  if (e < 0) fail("pow_elem: negative exponent");
  RElem acc = one(a.ring());
  RElem base = a;
  Int k = e;
  while (k > 0) {
    if (k % 2 == 1) acc = acc * base;
    base = base * base;
    k /= 2;
  }
  return acc;
}

bool is_zero(const RElem& a) {
  const RingPtr& r = a.ring();
  switch (r->kind) {
    case RingKind::Integers:
    case RingKind::Modular:
    case RingKind::PrimeField:
      return a.as_int() == 0;
    case RingKind::Rationals:
    case RingKind::LocalizedAtPrime:
      return a.as_rat().num == 0;
    case RingKind::Polynomial:
    case RingKind::Quotient:
      return a.as_vec().empty();
    case RingKind::Excision:
      return is_zero(a.as_vec()[0]) && is_zero(a.as_vec()[1]);
  }
  return false;
}

bool is_one(const RElem& a) { return a == one(a.ring()); }

bool operator==(const RElem& a, const RElem& b) {
  if (!a.valid() || !b.valid()) return a.valid() == b.valid();
  if (!a.ring()->equal(*b.ring())) return false;
  return compare(a, b) == 0;
}

int compare(const RElem& a, const RElem& b) {
  const auto& pa = a.payload();
  const auto& pb = b.payload();
  if (pa.index() != pb.index()) return pa.index() < pb.index() ? -1 : 1;
  if (std::holds_alternative<Int>(pa)) {
    const Int &x = std::get<Int>(pa), &y = std::get<Int>(pb);
    return x < y ? -1 : (x == y ? 0 : 1);
  }
  if (std::holds_alternative<Rat>(pa)) {
    const Rat &x = std::get<Rat>(pa), &y = std::get<Rat>(pb);
    Int l = x.num * y.den, r = y.num * x.den;
    return l < r ? -1 : (l == r ? 0 : 1);
  }
  const auto &x = std::get<RElem::Vec>(pa), &y = std::get<RElem::Vec>(pb);
  if (x.size() != y.size()) return x.size() < y.size() ? -1 : 1;
  for (size_t i = 0; i < x.size(); ++i)
    if (int c = compare(x[i], y[i])) return c;
  return 0;
}

// ---- units and nilpotents ---------------------------------------------------

namespace {

// extended gcd over Int: g = gcd(a,b), g = xa + yb
std::tuple<Int, Int, Int> ext_gcd(Int a, Int b) {
  Int x0 = 1, y0 = 0, x1 = 0, y1 = 1;
  while (b != 0) {
    Int q = a / b;
    Int t = a - q * b;
    a = b;
    b = t;
    t = x0 - q * x1;
    x0 = x1;
    x1 = t;
    t = y0 - q * y1;
    y0 = y1;
    y1 = t;
  }
  return {a, x0, y0};
}

// extended Euclid in k[X] for field k: returns (g, u) with u*a = g mod f
std::optional<Coeffs> poly_inverse_mod(const RingPtr& k, const Coeffs& a, const Coeffs& f) {
  Coeffs r0 = f, r1 = a;
  Coeffs s0 = {}, s1 = {one(k)};
  while (!r1.empty()) {
    auto [q, r2] = cdivmod_field(k, r0, r1);
    Coeffs s2 = cadd(k, s0, cneg(cmul(k, q, s1)));
    r0 = std::move(r1);
    r1 = std::move(r2);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (r0.size() != 1) return std::nullopt;  // gcd not a unit constant
  RElem inv_lead = *unit_inverse(r0[0]);
  for (auto& c : s0) c = c * inv_lead;
  return s0;
}

}  // namespace

bool is_nilpotent(const RElem& a) {
  if (is_zero(a)) return true;
  const RingPtr& r = a.ring();
  switch (r->kind) {
    case RingKind::Integers:
    case RingKind::Rationals:
      return false;
    case RingKind::PrimeField:
      return false;
    case RingKind::LocalizedAtPrime:
      return false;
    case RingKind::Modular:
    case RingKind::Quotient: {
      // nilpotency index in the tower is tiny; square until stable
      RElem x = a;
      for (int k = 0; k < 24; ++k) {
        if (is_zero(x)) return true;
        x = x * x;
      }
      return false;
    }
    case RingKind::Polynomial: {
      for (const auto& c : a.as_vec())
        if (!is_nilpotent(c)) return false;
      return true;
    }
    case RingKind::Excision: {
      const RElem &x = a.as_vec()[0], &i = a.as_vec()[1];
      return is_nilpotent(x) && is_nilpotent(x + i);
    }
  }
  return false;
}

std::optional<RElem> unit_inverse(const RElem& a) {
  const RingPtr& r = a.ring();
  switch (r->kind) {
    case RingKind::Integers: {
      if (a.as_int() == 1 || a.as_int() == -1) return a;
      return std::nullopt;
    }
    case RingKind::Modular:
    case RingKind::PrimeField: {
      auto [g, x, y] = ext_gcd(a.as_int(), r->n);
      (void)y;
      if (g == 1 || g == -1) return RElem(r, mod_floor(g == 1 ? x : -x, r->n));
      return std::nullopt;
    }
    case RingKind::Rationals: {
      const Rat& q = a.as_rat();
      if (q.num == 0) return std::nullopt;
      return RElem(r, reduce_rat(q.den, q.num));
    }
    case RingKind::LocalizedAtPrime: {
      const Rat& q = a.as_rat();
      if (q.num == 0 || q.num % r->n == 0) return std::nullopt;
      return RElem(r, reduce_rat(q.den, q.num));
    }
    case RingKind::Polynomial: {
      // unit iff constant term is a unit and all higher coefficients are
      // nilpotent; inverse via the finite geometric series
      const Coeffs& c = a.as_vec();
      if (c.empty()) return std::nullopt;
      auto c0inv = unit_inverse(c[0]);
      if (!c0inv) return std::nullopt;
      for (size_t i = 1; i < c.size(); ++i)
        if (!is_nilpotent(c[i])) return std::nullopt;
      RElem u0 = embed(r, *c0inv);
      RElem b = one(r) - u0 * a;  // nilpotent
      RElem sum = one(r);
      RElem powb = b;
      for (int k = 0; k < 256 && !is_zero(powb); ++k) {
        sum = sum + powb;
        powb = powb * b;
      }
      if (!is_zero(powb)) return std::nullopt;
      RElem inv = u0 * sum;
      if (!is_one(inv * a)) return std::nullopt;
      return inv;
    }
    case RingKind::Quotient: {
      const RingPtr& k = r->coeff_ring();
      if (k->is_field()) {
        auto inv = poly_inverse_mod(k, a.as_vec(), r->modulus_coeffs);
        if (!inv) return std::nullopt;
        return make_poly(r, std::move(*inv));
      }
      if (r->is_finite() && r->cardinality() <= kEnumGuard) {
        for (Int i = 0; i < r->cardinality(); ++i) {
          RElem x = elem_at(r, i);
          if (is_one(x * a)) return x;
        }
        return std::nullopt;
      }
      throw unsupported_error("unit decision unsupported in " + r->name());
    }
    case RingKind::Excision: {
      // (r,i) is a unit iff r and r+i are; inverse (r^-1, -i r^-1 (r+i)^-1)
      const RElem &x = a.as_vec()[0], &i = a.as_vec()[1];
      auto xi = unit_inverse(x);
      if (!xi) return std::nullopt;
      auto si = unit_inverse(x + i);
      if (!si) return std::nullopt;
      RElem j = neg(i * *xi * *si);
      return make_pair(r, *xi, j);
    }
  }
  return std::nullopt;
}

// ---- ideals -----------------------------------------------------------------

bool ideal_is_proper(const Ideal& ideal) {
  return !ideal_contains(ideal, one(ideal.ring));
}

namespace {

Int modular_ideal_gcd(const Ideal& ideal) {
  Int g = ideal.ring->n;
  for (const auto& e : ideal.gens) g = int_gcd(g, e.as_int());
  return g;
}

}  // namespace

bool ideal_contains(const Ideal& ideal, const RElem& a) {
  const RingPtr& r = ideal.ring;
  if (!a.ring()->equal(*r)) fail("ideal membership: element from the wrong ring");
  switch (r->kind) {
    case RingKind::Integers: {
      Int g = 0;
      for (const auto& e : ideal.gens) g = int_gcd(g, e.as_int());
      if (g == 0) return a.as_int() == 0;
      return a.as_int() % g == 0;
    }
    case RingKind::Modular: {
      Int g = modular_ideal_gcd(ideal);
      if (g == 0) return a.as_int() == 0;
      return a.as_int() % g == 0;
    }
    case RingKind::PrimeField:
    case RingKind::Rationals: {
      for (const auto& e : ideal.gens)
        if (!is_zero(e)) return true;  // unit ideal
      return is_zero(a);
    }
    case RingKind::LocalizedAtPrime: {
      // ideals are 0 or (p^e) with e the least numerator valuation of the generators
      bool all_zero = true;
      int e = 0;
      bool have = false;
      for (const auto& g : ideal.gens) {
        if (is_zero(g)) continue;
        all_zero = false;
        auto [v, rest] = p_valuation(r->n, g.as_rat().num);
        (void)rest;
        if (!have || v < e) e = v, have = true;
      }
      if (all_zero) return is_zero(a);
      if (is_zero(a)) return true;
      auto [va, rest] = p_valuation(r->n, a.as_rat().num);
      (void)rest;
      return va >= e;
    }
    case RingKind::Polynomial: {
      const RingPtr& k = r->base;
      if (!k->is_field())
        throw unsupported_error("ideal membership in " + r->name() + " is undecidable here");
      Coeffs g;
      for (const auto& e : ideal.gens) g = cgcd_field(k, g, e.as_vec());
      if (g.empty()) return is_zero(a);
      auto [q, rem] = cdivmod_field(k, a.as_vec(), g);
      (void)q;
      return rem.empty();
    }
    case RingKind::Quotient: {
      const RingPtr& k = r->coeff_ring();
      if (k->is_field()) {
        Coeffs g = r->modulus_coeffs;
        for (const auto& e : ideal.gens) g = cgcd_field(k, g, e.as_vec());
        if (g.empty()) return is_zero(a);
        auto [q, rem] = cdivmod_field(k, a.as_vec(), g);
        (void)q;
        return rem.empty();
      }
      throw unsupported_error("ideal membership in " + r->name() + " is undecidable here");
    }
    case RingKind::Excision: {
      // supported ideals have all generators of the form (0, i)
      std::vector<RElem> base_gens;
      for (const auto& g : ideal.gens) {
        if (!is_zero(g.as_vec()[0]))
          throw unsupported_error("excision ideals must be contained in 0 (+) I");
        base_gens.push_back(g.as_vec()[1]);
      }
      if (!is_zero(a.as_vec()[0])) return false;
      Ideal sub{r->base, base_gens};
      return ideal_contains(sub, a.as_vec()[1]);
    }
  }
  return false;
}

// ---- Euclidean structure ----------------------------------------------------

bool euclidean_supported(const Ring& r) { return r.is_euclidean(); }

Int euclidean_size(const RElem& a) {
  const RingPtr& r = a.ring();
  if (is_zero(a)) return 0;
  switch (r->kind) {
    case RingKind::Integers:
      return a.as_int() < 0 ? Int(-a.as_int()) : a.as_int();
    case RingKind::Polynomial:
      return Int(a.as_vec().size());  // degree + 1
    default:
      if (r->is_field()) return 1;
      throw unsupported_error("no Euclidean structure on " + r->name());
  }
}

std::pair<RElem, RElem> euclidean_divmod(const RElem& a, const RElem& b) {
  require_same_ring(a, b);
  const RingPtr& r = a.ring();
  if (is_zero(b)) fail("euclidean division by zero");
  if (r->kind == RingKind::Integers) {
    Int bv = b.as_int();
    Int q = a.as_int() / bv;
    Int rem = a.as_int() - q * bv;
    // symmetric remainder keeps gcd chains short
    Int ab = bv < 0 ? Int(-bv) : bv;
    if (rem * 2 > ab) {
      rem -= ab;
      q += (bv > 0) ? 1 : -1;
    } else if (rem * 2 <= -ab) {
      rem += ab;
      q -= (bv > 0) ? 1 : -1;
    }
    return {RElem(r, q), RElem(r, rem)};
  }
  if (r->kind == RingKind::Polynomial && r->base->is_field()) {
    auto [q, rem] = cdivmod_field(r->base, a.as_vec(), b.as_vec());
    return {RElem(r, std::move(q)), RElem(r, std::move(rem))};
  }
  if (r->is_field()) {
    auto inv = unit_inverse(b);
    return {a * *inv, zero(r)};
  }
  throw unsupported_error("no Euclidean division on " + r->name());
}

RElem euclidean_gcd(RElem a, RElem b) {
  while (!is_zero(b)) {
    auto [q, rem] = euclidean_divmod(a, b);
    (void)q;
    a = std::move(b);
    b = std::move(rem);
  }
  // normalize by a unit: nonnegative over ZZ, monic over k[X]
  const RingPtr& r = a.ring();
  if (r->kind == RingKind::Integers && a.as_int() < 0) return neg(a);
  if (r->kind == RingKind::Polynomial && !is_zero(a)) {
    if (auto inv = unit_inverse(a.as_vec().back())) return a * embed(r, *inv);
  }
  return a;
}

// ---- polynomial views -------------------------------------------------------

int poly_degree(const RElem& a) {
  if (!vec_payload(a)) fail("poly_degree: not a polynomial element");
  return static_cast<int>(a.as_vec().size()) - 1;
}

RElem poly_coeff(const RElem& a, int d) {
  const RingPtr& r = a.ring();
  if (r->kind != RingKind::Polynomial && r->kind != RingKind::Quotient)
    fail("poly_coeff: not a polynomial element");
  const auto& v = a.as_vec();
  if (d < 0 || d >= static_cast<int>(v.size())) return zero(r->coeff_ring());
  return v[d];
}

RElem poly_eval(const RElem& a, const RElem& x) {
  const RingPtr& r = a.ring();
  if (r->kind != RingKind::Polynomial) fail("poly_eval: not a polynomial ring element");
  const RingPtr& k = r->base;
  if (!x.ring()->equal(*k)) fail("poly_eval: point must be in the coefficient ring");
  RElem acc = zero(k);
  const auto& v = a.as_vec();
  for (size_t i = v.size(); i-- > 0;) acc = acc * x + v[i];
  return acc;
}

// ---- enumeration ------------------------------------------------------------

RElem elem_at(const RingPtr& r, const Int& index) {
  switch (r->kind) {
    case RingKind::Modular:
    case RingKind::PrimeField:
      return RElem(r, mod_floor(index, r->n));
    case RingKind::Quotient: {
      const RingPtr& k = r->coeff_ring();
      Int ks = k->cardinality();
      Int idx = index;
      Coeffs c;
      for (int d = 0; d < r->quot_degree(); ++d) {
        c.push_back(elem_at(k, idx % ks));
        idx /= ks;
      }
      trim(c);
      return RElem(r, std::move(c));
    }
    case RingKind::Excision: {
      const auto& ie = r->excision_ideal_elems();
      Int m(ie.size());
      Int ri = index / m, ii = index % m;
      return RElem(r, RElem::Vec{elem_at(r->base, ri), ie[static_cast<size_t>(ii)]});
    }
    default:
      throw unsupported_error("cannot enumerate " + r->name());
  }
}

Int index_of(const RElem& a) {
  const RingPtr& r = a.ring();
  switch (r->kind) {
    case RingKind::Modular:
    case RingKind::PrimeField:
      return a.as_int();
    case RingKind::Quotient: {
      const RingPtr& k = r->coeff_ring();
      Int ks = k->cardinality();
      Int idx = 0;
      const auto& v = a.as_vec();
      for (size_t d = v.size(); d-- > 0;) idx = idx * ks + index_of(v[d]);
      return idx;
    }
    case RingKind::Excision: {
      const auto& ie = r->excision_ideal_elems();
      Int ri = index_of(a.as_vec()[0]);
      for (size_t t = 0; t < ie.size(); ++t)
        if (ie[t] == a.as_vec()[1]) return ri * Int(ie.size()) + Int(t);
      fail("excision component not indexed");
    }
    default:
      throw unsupported_error("cannot index elements of " + r->name());
  }
}

// ---- text form ----------------------------------------------------------------

namespace {

bool needs_parens(const std::string& s) {
  return s.find_first_of("+-*/^,") != std::string::npos;
}

std::string coeff_str(const RElem& c) {
  std::string s = to_string(c);
  return needs_parens(s) ? "(" + s + ")" : s;
}

}  // namespace

std::string to_string(const RElem& a) {
  const RingPtr& r = a.ring();
  switch (r->kind) {
    case RingKind::Integers:
    case RingKind::Modular:
    case RingKind::PrimeField:
      return int_str(a.as_int());
    case RingKind::Rationals:
    case RingKind::LocalizedAtPrime: {
      const Rat& q = a.as_rat();
      if (q.den == 1) return int_str(q.num);
      return int_str(q.num) + "/" + int_str(q.den);
    }
    case RingKind::Polynomial:
    case RingKind::Quotient: {
      const auto& v = a.as_vec();
      if (v.empty()) return "0";
      std::string x = (r->kind == RingKind::Polynomial) ? r->var : r->base->var;
      std::string out;
      for (size_t d = v.size(); d-- > 0;) {
        if (is_zero(v[d])) continue;
        if (!out.empty()) out += "+";
        if (d == 0) {
          out += coeff_str(v[d]);
        } else {
          std::string xs = (d == 1) ? x : x + "^" + std::to_string(d);
          if (is_one(v[d]))
            out += xs;
          else
            out += coeff_str(v[d]) + "*" + xs;
        }
      }
      return out;
    }
    case RingKind::Excision:
      return "(" + to_string(a.as_vec()[0]) + ", " + to_string(a.as_vec()[1]) + ")";
  }
  return "?";
}

// --- small recursive-descent expression parser -------------------------------

namespace {

struct Parser {
  const std::string& s;
  size_t pos = 0;

  void skip() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool eat(char c) {
    skip();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  char peek() {
    skip();
    return pos < s.size() ? s[pos] : '\0';
  }

  RElem parse_expr(const RingPtr& r) {
    RElem acc = parse_term(r);
    for (;;) {
      if (eat('+'))
        acc = acc + parse_term(r);
      else if (eat('-'))
        acc = acc - parse_term(r);
      else
        return acc;
    }
  }

  RElem parse_term(const RingPtr& r) {
    RElem acc = parse_factor(r);
    for (;;) {
      if (eat('*')) {
        acc = acc * parse_factor(r);
      } else if (eat('/')) {
        RElem d = parse_factor(r);
        if (r->kind == RingKind::Rationals || r->kind == RingKind::LocalizedAtPrime) {
          auto inv = unit_inverse(d);
          if (!inv) fail("division by a non-unit in " + r->name());
          acc = acc * *inv;
        } else {
          auto inv = unit_inverse(d);
          if (!inv) fail("division by a non-unit in " + r->name());
          acc = acc * *inv;
        }
      } else {
        return acc;
      }
    }
  }

  RElem parse_factor(const RingPtr& r) {
    RElem base = parse_primary(r);
    if (eat('^')) {
      skip();
      size_t start = pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
      if (start == pos) fail("expected an exponent");
      Int e(s.substr(start, pos - start));
      return pow_elem(base, e);
    }
    return base;
  }

  RElem parse_primary(const RingPtr& r) {
    skip();
    if (pos >= s.size()) fail("unexpected end of element expression");
    char c = s[pos];
    if (c == '-') {
      ++pos;
      return neg(parse_primary(r));
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
      return from_int(r, Int(s.substr(start, pos - start)));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      size_t start = pos;
      while (pos < s.size() &&
             (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
        ++pos;
      return var_elem(r, s.substr(start, pos - start));
    }
    if (c == '(') {
      ++pos;
      if (r->kind == RingKind::Excision) {
        RElem rc = parse_expr(r->base);
        if (!eat(',')) fail("excision element expects '(r, i)'");
        RElem ic = parse_expr(r->base);
        if (!eat(')')) fail("expected ')'");
        return make_pair(r, std::move(rc), std::move(ic));
      }
      RElem inner = parse_expr(r);
      if (!eat(')')) fail("expected ')'");
      return inner;
    }
    fail(std::string("unexpected character '") + c + "' in element expression");
  }
};

}  // namespace

RElem parse_elem(const RingPtr& r, const std::string& text) {
  Parser p{text};
  RElem e = p.parse_expr(r);
  p.skip();
  if (p.pos != text.size()) fail("trailing characters in element expression: " + text);
  return e;
}

}  // namespace exalg
