#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "exalg/hom.hpp"
#include "support.hpp"

using namespace exalg;
using exalg::test::Rng;

namespace {

Ideal principal(const RingPtr& r, long g) { return Ideal{r, {from_int(r, g)}}; }

std::vector<RingPtr> tower_sample() {
  RingPtr z = Ring::integers();
  RingPtr f2 = Ring::prime_field(2);
  RingPtr f5 = Ring::prime_field(5);
  RingPtr z8 = Ring::modular(8);
  RingPtr z9 = Ring::modular(9);
  RingPtr f5x = Ring::polynomial(f5, "X");
  RingPtr f2t = Ring::polynomial(f2, "t");
  RingPtr f2t3 = Ring::quotient(f2t, parse_elem(f2t, "t^3"));
  RingPtr loc5 = Ring::localized_at_prime(5);
  RingPtr exc = Ring::excision(z9, principal(z9, 3));
  return {z, Ring::rationals(), f5, z8, z9, f5x, f2t3, loc5, exc};
}

}  // namespace

TEST_CASE("excision arithmetic follows the defining product") {
  RingPtr z = Ring::integers();
  RingPtr e = Ring::excision(z, principal(z, 2));
  RElem a = make_pair(e, from_int(z, 1), from_int(z, 2));
  RElem sq = a * a;
  CHECK(sq == make_pair(e, from_int(z, 1), from_int(z, 8)));  // (rs, rj+si+ij)
}

TEST_CASE("modular reduction is forced") {
  RingPtr z8 = Ring::modular(8);
  CHECK(from_int(z8, 3) * from_int(z8, 3) == one(z8));
}

TEST_CASE("additive identity on random elements") {
  Rng rng(7);
  for (const auto& r : tower_sample()) {
    for (int t = 0; t < 20; ++t) {
      RElem a = test::random_elem(r, rng);
      CHECK(a + zero(r) == a);
      CHECK(a - a == zero(r));
    }
  }
}

TEST_CASE("ring axioms hold on random triples") {
  Rng rng(11);
  for (const auto& r : tower_sample()) {
    for (int t = 0; t < 200; ++t) {
      RElem a = test::random_elem(r, rng);
      RElem b = test::random_elem(r, rng);
      RElem c = test::random_elem(r, rng);
      CHECK((a + b) + c == a + (b + c));
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a * b == b * a);
      CHECK(a + b == b + a);
      CHECK(a * one(r) == a);
    }
  }
}

TEST_CASE("unit detection and inverses") {
  RingPtr z8 = Ring::modular(8);
  auto inv3 = unit_inverse(from_int(z8, 3));
  REQUIRE(inv3.has_value());
  CHECK(*inv3 == from_int(z8, 3));
  CHECK(!unit_inverse(from_int(z8, 2)).has_value());

  RingPtr z9 = Ring::modular(9);
  RingPtr e = Ring::excision(z9, principal(z9, 3));
  RElem a = make_pair(e, from_int(z9, 4), from_int(z9, 3));
  auto ia = unit_inverse(a);
  REQUIRE(ia.has_value());
  CHECK(*ia == make_pair(e, from_int(z9, 7), from_int(z9, 6)));
  CHECK(a * *ia == one(e));
}

TEST_CASE("excision units match the local maximal ideal") {
  RingPtr z9 = Ring::modular(9);
  RingPtr e = Ring::excision(z9, principal(z9, 3));
  CHECK(e->is_local());
  Rng rng(3);
  for (int t = 0; t < 200; ++t) {
    RElem x = test::random_elem(e, rng);
    bool r_unit = is_unit(x.as_vec()[0]);
    CHECK(is_unit(x) == r_unit);  // i lies in the maximal ideal already
  }
}

TEST_CASE("polynomial units over rings with nilpotents") {
  RingPtr z4x = Ring::polynomial(Ring::modular(4), "X");
  RElem u = parse_elem(z4x, "1+2*X");
  auto inv = unit_inverse(u);
  REQUIRE(inv.has_value());
  CHECK(u * *inv == one(z4x));
  CHECK(!unit_inverse(parse_elem(z4x, "X")).has_value());
}

TEST_CASE("ideal membership across the tower") {
  RingPtr z8 = Ring::modular(8);
  CHECK(ideal_contains(principal(z8, 2), from_int(z8, 6)));
  CHECK(!ideal_contains(principal(z8, 2), from_int(z8, 3)));

  RingPtr f2x = Ring::polynomial(Ring::prime_field(2), "X");
  Ideal ix{f2x, {parse_elem(f2x, "X")}};
  CHECK(ideal_contains(ix, parse_elem(f2x, "X^2")));
  CHECK(!ideal_contains(ix, parse_elem(f2x, "X+1")));

  RingPtr z = Ring::integers();
  CHECK(!ideal_contains(principal(z, 2), one(z)));
  CHECK(ideal_is_proper(principal(z, 2)));
  CHECK(!ideal_is_proper(principal(z, 1)));

  RingPtr loc5 = Ring::localized_at_prime(5);
  Ideal i5{loc5, {make_fraction(loc5, 5, 2)}};
  CHECK(ideal_contains(i5, make_fraction(loc5, 10, 3)));
  CHECK(!ideal_contains(i5, make_fraction(loc5, 2, 3)));
}

TEST_CASE("capability flags are derivable and consistent") {
  CHECK(Ring::prime_field(7)->is_local());
  CHECK(Ring::modular(8)->is_local());
  CHECK(!Ring::modular(6)->is_local());
  CHECK(Ring::localized_at_prime(5)->is_local());
  CHECK(Ring::integers()->is_euclidean());
  CHECK(!Ring::integers()->is_local());
  RingPtr f5x = Ring::polynomial(Ring::prime_field(5), "X");
  CHECK(f5x->is_euclidean());
  CHECK(!f5x->is_local());
  RingPtr zx = Ring::polynomial(Ring::integers(), "X");
  CHECK(!zx->is_euclidean());
  RingPtr f2t = Ring::polynomial(Ring::prime_field(2), "t");
  RingPtr f2t3 = Ring::quotient(f2t, parse_elem(f2t, "t^3"));
  CHECK(f2t3->is_local());
  CHECK(!f2t3->is_field());
  RingPtr f4 = Ring::quotient(f2t, parse_elem(f2t, "t^2+t+1"));
  CHECK(f4->is_field());
  RingPtr z9 = Ring::modular(9);
  CHECK(Ring::excision(z9, principal(z9, 3))->is_local());
}

TEST_CASE("construction validation") {
  CHECK_THROWS_AS(Ring::modular(1), contract_error);
  CHECK_THROWS_AS(Ring::prime_field(6), contract_error);
  CHECK_THROWS_AS(Ring::localized_at_prime(4), contract_error);
  RingPtr z9 = Ring::modular(9);
  RingPtr e = Ring::excision(z9, principal(z9, 3));
  CHECK_THROWS_AS(Ring::excision(e, Ideal{e, {zero(e)}}), contract_error);
  CHECK_THROWS_AS(Ring::excision(z9, principal(z9, 1)), contract_error);
  RingPtr zx = Ring::polynomial(Ring::integers(), "X");
  CHECK_THROWS_AS(Ring::quotient(zx, parse_elem(zx, "2*X+1")), contract_error);  // not monic
  CHECK_THROWS_AS(Ring::polynomial(zx, "X"), contract_error);  // shadowed variable
  RingPtr exc2 = Ring::excision(z9, principal(z9, 3));
  CHECK_THROWS_AS(make_pair(exc2, from_int(z9, 1), from_int(z9, 2)), contract_error);
}

TEST_CASE("canonical text form round-trips") {
  Rng rng(19);
  RingPtr f2 = Ring::prime_field(2);
  RingPtr f2t = Ring::polynomial(f2, "t");
  RingPtr f2t3 = Ring::quotient(f2t, parse_elem(f2t, "t^3"));
  RingPtr nested = Ring::polynomial(f2t3, "T");
  auto rings = tower_sample();
  rings.push_back(nested);
  for (const auto& r : rings) {
    for (int t = 0; t < 40; ++t) {
      RElem a = test::random_elem(r, rng);
      CAPTURE(r->name());
      CAPTURE(to_string(a));
      CHECK(parse_elem(r, to_string(a)) == a);
    }
  }
  CHECK(to_string(parse_elem(nested, "(1+t)*T^2+t*T+1")) == "(t+1)*T^2+t*T+1");
}

TEST_CASE("excision retraction and sum are homomorphisms with the right kernel") {
  Rng rng(23);
  RingPtr z9 = Ring::modular(9);
  RingPtr e = Ring::excision(z9, principal(z9, 3));
  RingHom pi = RingHom::excision_retraction(e);
  RingHom f = RingHom::excision_sum(e);
  for (int t = 0; t < 300; ++t) {
    RElem a = test::random_elem(e, rng);
    RElem b = test::random_elem(e, rng);
    for (const auto* h : {&pi, &f}) {
      CHECK(hom_apply(*h, a + b) == hom_apply(*h, a) + hom_apply(*h, b));
      CHECK(hom_apply(*h, a * b) == hom_apply(*h, a) * hom_apply(*h, b));
    }
  }
  CHECK(hom_apply(f, one(e)) == one(z9));
  CHECK(hom_apply(pi, one(e)) == one(z9));
  // ker pi = 0 (+) I; f restricted to it is the identity onto I
  for (long i : {0L, 3L, 6L}) {
    RElem k = make_pair(e, zero(z9), from_int(z9, i));
    CHECK(is_zero(hom_apply(pi, k)));
    CHECK(hom_apply(f, k) == from_int(z9, i));
  }
  // spec example: f(4,3) = 7
  CHECK(hom_apply(f, make_pair(e, from_int(z9, 4), from_int(z9, 3))) == from_int(z9, 7));
}

TEST_CASE("swan-weibel map scales graded components") {
  RingPtr f2 = Ring::prime_field(2);
  RingPtr f2t = Ring::polynomial(f2, "t");
  RingPtr a = Ring::quotient(f2t, parse_elem(f2t, "t^3"));
  RingHom phi = RingHom::swan_weibel(a, "T");
  CHECK(hom_apply(phi, parse_elem(a, "1+t")) == parse_elem(phi.codomain, "1+t*T"));
  CHECK(hom_apply(phi, parse_elem(a, "1+t+t^2")) == parse_elem(phi.codomain, "1+t*T+t^2*T^2"));
  Rng rng(5);
  RingHom at1 = RingHom::eval_variable(phi.codomain, one(a));
  for (int t = 0; t < 100; ++t) {
    RElem x = test::random_elem(a, rng);
    RElem y = test::random_elem(a, rng);
    CHECK(hom_apply(phi, x * y) == hom_apply(phi, x) * hom_apply(phi, y));
    CHECK(hom_apply(phi, x + y) == hom_apply(phi, x) + hom_apply(phi, y));
    CHECK(hom_apply(at1, hom_apply(phi, x)) == x);  // phi at T = 1 is the identity
  }
  RingPtr zx = Ring::polynomial(Ring::integers(), "X");
  CHECK_THROWS(RingHom::swan_weibel(Ring::modular(8), "T"));
  CHECK_NOTHROW(RingHom::swan_weibel(zx, "T"));
}

TEST_CASE("eval and inclusion homomorphisms") {
  RingPtr f5 = Ring::prime_field(5);
  RingPtr f5x = Ring::polynomial(f5, "X");
  RingHom at0 = RingHom::eval_variable(f5x, zero(f5));
  CHECK(hom_apply(at0, parse_elem(f5x, "1+X")) == one(f5));
  RingHom emb = RingHom::inclusion(f5, f5x);
  Rng rng(29);
  for (int t = 0; t < 100; ++t) {
    RElem x = test::random_elem(f5, rng);
    RElem y = test::random_elem(f5, rng);
    CHECK(hom_apply(emb, x * y) == hom_apply(emb, x) * hom_apply(emb, y));
    CHECK(hom_apply(at0, hom_apply(emb, x)) == x);
  }
  RingHom red = RingHom::reduce_mod(Ring::integers(), principal(Ring::integers(), 8));
  CHECK(red.codomain->equal(*Ring::modular(8)));
  CHECK(hom_apply(red, from_int(Ring::integers(), 11)) == from_int(red.codomain, 3));
}

TEST_CASE("euclidean division and gcd") {
  RingPtr z = Ring::integers();
  auto [q, r] = euclidean_divmod(from_int(z, -17), from_int(z, 5));
  CHECK(from_int(z, -17) == q * from_int(z, 5) + r);
  CHECK(euclidean_size(r) < euclidean_size(from_int(z, 5)));
  CHECK(euclidean_gcd(from_int(z, 12), from_int(z, 18)) == from_int(z, 6));

  RingPtr f5x = Ring::polynomial(Ring::prime_field(5), "X");
  RElem a = parse_elem(f5x, "X^3+2*X+1");
  RElem b = parse_elem(f5x, "X^2+1");
  auto [pq, pr] = euclidean_divmod(a, b);
  CHECK(a == pq * b + pr);
  CHECK(euclidean_size(pr) < euclidean_size(b));
}

TEST_CASE("localized fractions stay reduced with denominators outside the prime") {
  RingPtr loc5 = Ring::localized_at_prime(5);
  RElem a = make_fraction(loc5, 10, 4);
  CHECK(to_string(a) == "5/2");
  CHECK_THROWS_AS(make_fraction(loc5, 1, 5), contract_error);
  CHECK(is_unit(make_fraction(loc5, 2, 3)));
  CHECK(!is_unit(make_fraction(loc5, 5, 3)));
  // equality by cross-multiplication after reduction
  CHECK(make_fraction(loc5, 6, 4) == make_fraction(loc5, 3, 2));
}

TEST_CASE("finite enumeration covers every element exactly once") {
  RingPtr f2t = Ring::polynomial(Ring::prime_field(2), "t");
  RingPtr a = Ring::quotient(f2t, parse_elem(f2t, "t^3"));
  CHECK(a->cardinality() == 8);
  std::vector<RElem> seen;
  for (Int i = 0; i < 8; ++i) {
    RElem e = elem_at(a, i);
    CHECK(index_of(e) == i);
    for (const auto& s : seen) CHECK(!(s == e));
    seen.push_back(e);
  }
  RingPtr z9 = Ring::modular(9);
  RingPtr exc = Ring::excision(z9, Ideal{z9, {from_int(z9, 3)}});
  CHECK(exc->cardinality() == 27);  // 9 base values x 3 ideal values
}
