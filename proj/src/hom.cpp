#include "exalg/hom.hpp"

namespace exalg {

namespace {
[[noreturn]] void fail(const std::string& msg) { throw contract_error(msg); }
}  // namespace

RingHom RingHom::eval_variable(RingPtr poly_ring, RElem point) {
  if (poly_ring->kind != RingKind::Polynomial) fail("eval_variable: domain must be R[X]");
  if (!point.ring()->equal(*poly_ring->base)) fail("eval_variable: point must lie in R");
  RingHom h;
  h.kind = HomKind::EvalVariable;
  h.domain = poly_ring;
  h.codomain = poly_ring->base;
  h.point = std::move(point);
  return h;
}

RingHom RingHom::reduce_mod(RingPtr domain, Ideal ideal) {
  if (!ideal.ring->equal(*domain)) fail("reduce_mod: ideal from the wrong ring");
  RingHom h;
  h.kind = HomKind::ReduceModIdeal;
  h.domain = domain;
  switch (domain->kind) {
    case RingKind::Integers: {
      Int g = 0;
      for (const auto& e : ideal.gens) g = int_gcd(g, e.as_int());
      if (g < 2) fail("reduce_mod: ideal must be proper and nonzero");
      h.codomain = Ring::modular(g);
      break;
    }
    case RingKind::Modular: {
      Int g = domain->n;
      for (const auto& e : ideal.gens) g = int_gcd(g, e.as_int());
      if (g < 2) fail("reduce_mod: ideal must be proper");
      h.codomain = Ring::modular(g);
      break;
    }
    case RingKind::Polynomial: {
      if (!domain->base->is_field())
        throw unsupported_error("reduce_mod needs field coefficients for polynomial rings");
      RElem g = zero(domain);
      for (const auto& e : ideal.gens) g = euclidean_gcd(g, e);
      if (is_zero(g) || poly_degree(g) < 1)
        fail("reduce_mod: polynomial ideal must be generated by positive degree");
      h.codomain = Ring::quotient(domain, g);
      break;
    }
    default:
      throw unsupported_error("reduce_mod unsupported for " + domain->name());
  }
  h.ideal = std::move(ideal);
  return h;
}

RingHom RingHom::excision_retraction(RingPtr excision_ring) {
  if (excision_ring->kind != RingKind::Excision) fail("excision_retraction: not an excision ring");
  RingHom h;
  h.kind = HomKind::ExcisionRetraction;
  h.codomain = excision_ring->base;
  h.domain = std::move(excision_ring);
  return h;
}

RingHom RingHom::excision_sum(RingPtr excision_ring) {
  if (excision_ring->kind != RingKind::Excision) fail("excision_sum: not an excision ring");
  RingHom h;
  h.kind = HomKind::ExcisionSum;
  h.codomain = excision_ring->base;
  h.domain = std::move(excision_ring);
  return h;
}

RingHom RingHom::inclusion(RingPtr base, RingPtr poly_ring) {
  if (poly_ring->kind != RingKind::Polynomial || !poly_ring->base->equal(*base))
    fail("inclusion: codomain must be a polynomial ring over the domain");
  RingHom h;
  h.kind = HomKind::Inclusion;
  h.domain = std::move(base);
  h.codomain = std::move(poly_ring);
  return h;
}

namespace {

// Accepts the explicitly graded tower members: k[t] graded by degree, and
// k[t]/(t^m) with the induced grading.
void check_graded(const RingPtr& a) {
  if (a->kind == RingKind::Polynomial) return;
  if (a->kind == RingKind::Quotient) {
    const auto& mc = a->modulus_coeffs;
    for (size_t i = 0; i + 1 < mc.size(); ++i)
      if (!is_zero(mc[i]))
        fail("ring is not explicitly graded (quotient modulus must be t^m): " + a->name());
    return;
  }
  fail("ring is not explicitly graded: " + a->name());
}

}  // namespace

RingHom RingHom::swan_weibel(RingPtr graded_ring, const std::string& hvar) {
  check_graded(graded_ring);
  RingHom h;
  h.kind = HomKind::SwanWeibelPhi;
  h.codomain = Ring::polynomial(graded_ring, hvar);
  h.domain = std::move(graded_ring);
  return h;
}

RingHom RingHom::localization(const Int& p) {
  RingHom h;
  h.kind = HomKind::LocalizationMap;
  h.domain = Ring::integers();
  h.codomain = Ring::localized_at_prime(p);
  return h;
}

RElem hom_apply(const RingHom& h, const RElem& a) {
  if (!a.ring()->equal(*h.domain)) fail("hom_apply: element from the wrong ring");
  switch (h.kind) {
    case HomKind::EvalVariable:
      return poly_eval(a, *h.point);
    case HomKind::ReduceModIdeal: {
      switch (h.domain->kind) {
        case RingKind::Integers:
        case RingKind::Modular:
          return from_int(h.codomain, a.as_int());
        case RingKind::Polynomial:
          return make_poly(h.codomain, a.as_vec());
        default:
          break;
      }
      fail("reduce_mod: unsupported domain");
    }
    case HomKind::ExcisionRetraction:
      return a.as_vec()[0];
    case HomKind::ExcisionSum:
      return a.as_vec()[0] + a.as_vec()[1];
    case HomKind::Inclusion:
      return embed(h.codomain, a);
    case HomKind::SwanWeibelPhi: {
      // a = sum a_d t^d  |->  sum (a_d t^d) T^d
      const RingPtr& A = h.domain;
      RElem t = (A->kind == RingKind::Polynomial) ? var_elem(A, A->var)
                                                  : var_elem(A, A->base->var);
      std::vector<RElem> out;
      int deg = static_cast<int>(a.as_vec().size()) - 1;
      for (int d = 0; d <= deg; ++d) {
        RElem comp = embed(A, poly_coeff(a, d)) * pow_elem(t, d);
        out.push_back(std::move(comp));
      }
      return make_poly(h.codomain, std::move(out));
    }
    case HomKind::LocalizationMap:
      return make_fraction(h.codomain, a.as_int(), 1);
  }
  fail("hom_apply: bad homomorphism");
}

}  // namespace exalg
