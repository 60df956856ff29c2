#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "exalg/transvect.hpp"
#include "support.hpp"

using namespace exalg;
using exalg::test::Rng;

namespace {

Mat random_gl(const RingPtr& r, int n, Rng& rng) {
  // random elementary product: invertible with an exact inverse
  return eval_word(test::random_word(r, n, AtomFamily::LinE, 6, rng));
}

// rank-k idempotent conjugated by a random change of basis
ProjModule random_module(const RingPtr& r, int n, int rank, Rng& rng) {
  Mat p = random_gl(r, n, rng);
  Mat d(r, n);
  for (int i = 0; i < rank; ++i) d.at(i, i) = one(r);
  Mat e = mat_mul(mat_mul(p, d), inverse(p));
  return make_proj_module(r, e);
}

std::vector<RElem> module_vec(const ProjModule& m, Rng& rng) {
  std::vector<RElem> x;
  for (int i = 0; i < m.N; ++i) x.push_back(test::random_elem(m.ring, rng));
  std::vector<RElem> out(m.N, zero(m.ring));
  for (int i = 0; i < m.N; ++i)
    for (int j = 0; j < m.N; ++j) out[i] = out[i] + m.idempotent.at(i, j) * x[j];
  return out;
}

std::vector<RElem> module_functional(const ProjModule& m, Rng& rng) {
  std::vector<RElem> y;
  for (int i = 0; i < m.N; ++i) y.push_back(test::random_elem(m.ring, rng));
  std::vector<RElem> out(m.N, zero(m.ring));
  for (int j = 0; j < m.N; ++j)
    for (int i = 0; i < m.N; ++i) out[j] = out[j] + y[i] * m.idempotent.at(i, j);
  return out;
}

RElem pair_f_q(const std::vector<RElem>& f, const std::vector<RElem>& q) {
  RElem acc = zero(f[0].ring());
  for (size_t i = 0; i < f.size(); ++i) acc = acc + f[i] * q[i];
  return acc;
}

/// Free symplectic/orthogonal module on the full ambient with the standard form.
ProjModule standard_form_module(const RingPtr& r, int m, ModuleForm form) {
  Mat g = (form == ModuleForm::Symplectic) ? symplectic_form(r, m) : orthogonal_form(r, m);
  return make_proj_module(r, identity(r, 2 * m), form, g);
}

}  // namespace

TEST_CASE("module validation") {
  RingPtr f5 = Ring::prime_field(5);
  Mat not_idem = identity(f5, 3);
  not_idem.at(0, 1) = one(f5);
  not_idem.at(0, 0) = from_int(f5, 2);
  CHECK_THROWS_AS(make_proj_module(f5, not_idem), contract_error);

  // degenerate gram on the image is rejected
  Mat e = identity(f5, 2);
  Mat zero_gram(f5, 2);
  CHECK_THROWS_AS(make_proj_module(f5, e, ModuleForm::Orthogonal, zero_gram), contract_error);
  CHECK_NOTHROW(standard_form_module(f5, 2, ModuleForm::Symplectic));
  CHECK_NOTHROW(standard_form_module(f5, 2, ModuleForm::Orthogonal));
}

TEST_CASE("linear transvections have determinant one and fix ker E") {
  Rng rng(151);
  for (const auto& r : {Ring::prime_field(5), Ring::modular(9)}) {
    for (int t = 0; t < 100; ++t) {
      int n = 3 + static_cast<int>(rng() % 4);  // ambient rank <= 6
      int rank = 1 + static_cast<int>(rng() % (n - 1));
      ProjModule m = random_module(r, n, rank, rng);
      std::vector<RElem> q = module_vec(m, rng);
      std::vector<RElem> f = module_functional(m, rng);
      if (is_zero(pair_f_q(f, q))) {
        Mat tr = make_transvection(m, {TransvectionSpec::Kind::Linear, q, f});
        CHECK(det(tr) == one(r));
        // dir: ker E is fixed pointwise
        Mat ker = mat_sub(identity(r, n), m.idempotent);
        CHECK(mat_mul(tr, ker) == ker);
      } else {
        CHECK_THROWS_AS(make_transvection(m, {TransvectionSpec::Kind::Linear, q, f}),
                        contract_error);
      }
    }
  }
  // q = 0 gives the identity
  RingPtr f5 = Ring::prime_field(5);
  ProjModule m = random_module(f5, 4, 2, rng);
  std::vector<RElem> zq(4, zero(f5));
  std::vector<RElem> f = module_functional(m, rng);
  CHECK(is_identity(make_transvection(m, {TransvectionSpec::Kind::Linear, zq, f})));
}

TEST_CASE("symplectic transvections compose with the paper inverse to the identity") {
  Rng rng(157);
  RingPtr f5 = Ring::prime_field(5);
  ProjModule m = standard_form_module(f5, 2, ModuleForm::Symplectic);
  int hits = 0;
  while (hits < 50) {
    std::vector<RElem> u = module_vec(m, rng);
    std::vector<RElem> v = module_vec(m, rng);
    if (!is_zero(form_value(m, u, v))) continue;
    ++hits;
    TransvectionSpec spec{TransvectionSpec::Kind::Symplectic, u, v};
    Mat s = make_transvection(m, spec);
    Mat si = make_transvection_inverse(m, spec);
    CHECK(mat_mul(s, si) == identity(f5, 4));
    CHECK(mat_mul(si, s) == identity(f5, 4));
    // isometry on random vectors
    Mat g = *m.gram;
    CHECK(mat_mul(mat_mul(transpose(s), g), s) == g);
  }
}

TEST_CASE("orthogonal transvections preserve the symmetric form") {
  Rng rng(163);
  RingPtr f7 = Ring::prime_field(7);
  ProjModule m = standard_form_module(f7, 2, ModuleForm::Orthogonal);
  int hits = 0;
  while (hits < 50) {
    // isotropic vectors from the first/second hyperbolic-plane lines
    std::vector<RElem> u = {test::random_elem(f7, rng), zero(f7), zero(f7), zero(f7)};
    std::vector<RElem> v = {zero(f7), zero(f7), test::random_elem(f7, rng), zero(f7)};
    if (!is_zero(form_value(m, u, v)) || !is_zero(form_value(m, u, u)) ||
        !is_zero(form_value(m, v, v)))
      continue;
    ++hits;
    TransvectionSpec spec{TransvectionSpec::Kind::Orthogonal, u, v};
    Mat s = make_transvection(m, spec);
    Mat si = make_transvection_inverse(m, spec);
    CHECK(mat_mul(s, si) == identity(f7, 4));
    CHECK(mat_mul(mat_mul(transpose(s), *m.gram), s) == *m.gram);
  }
  // non-isotropic u is rejected
  std::vector<RElem> bad = {one(f7), one(f7), zero(f7), zero(f7)};
  std::vector<RElem> v = {zero(f7), zero(f7), one(f7), zero(f7)};
  CHECK_THROWS_AS(make_transvection(m, {TransvectionSpec::Kind::Orthogonal, bad, v}),
                  contract_error);
}

TEST_CASE("unimodularity via the order ideal") {
  Rng rng(167);
  RingPtr f5 = Ring::prime_field(5);
  ProjModule m = standard_form_module(f5, 2, ModuleForm::Symplectic);
  std::vector<RElem> e1 = {one(f5), zero(f5), zero(f5), zero(f5)};
  CHECK(module_elem_unimodular(m, e1));
  std::vector<RElem> zv(4, zero(f5));
  CHECK(!module_elem_unimodular(m, zv));

  RingPtr z6 = Ring::modular(6);
  ProjModule m6 = make_proj_module(z6, identity(z6, 2));
  CHECK(module_elem_unimodular(m6, {from_int(z6, 2), from_int(z6, 3)}));
  CHECK(!module_elem_unimodular(m6, {from_int(z6, 2), from_int(z6, 4)}));

  RingPtr z = Ring::integers();
  ProjModule mz = make_proj_module(z, identity(z, 2));
  CHECK(module_elem_unimodular(mz, {from_int(z, 3), from_int(z, 5)}));
  CHECK(!module_elem_unimodular(mz, {from_int(z, 2), from_int(z, 4)}));
}

TEST_CASE("elementary transvections on M + R") {
  Rng rng(173);
  RingPtr f5 = Ring::prime_field(5);
  for (int t = 0; t < 30; ++t) {
    ProjModule m = random_module(f5, 4, 2, rng);
    std::vector<RElem> x = module_vec(m, rng);
    ExtensionResult r1 = elementary_on_extension(m, ExtensionKind::DserLinear, 1, x);
    CHECK(r1.accepted);
    CHECK(det(r1.map) == one(f5));
    ExtensionResult r2 = elementary_on_extension(m, ExtensionKind::DserLinear, 2, x);
    CHECK(r2.accepted);
    CHECK(det(r2.map) == one(f5));
  }
  // q = 0 gives the identity map
  ProjModule m = random_module(f5, 4, 2, rng);
  std::vector<RElem> zq(4, zero(f5));
  CHECK(is_identity(elementary_on_extension(m, ExtensionKind::DserLinear, 1, zq).map));
}

TEST_CASE("elementary symplectic transvections are isometries of the extension") {
  Rng rng(179);
  RingPtr f5 = Ring::prime_field(5);
  ProjModule m = standard_form_module(f5, 1, ModuleForm::Symplectic);
  for (int t = 0; t < 40; ++t) {
    std::vector<RElem> q = module_vec(m, rng);
    for (int which : {1, 2}) {
      ExtensionResult r = elementary_on_extension(m, ExtensionKind::SymplecticPair, which, q);
      CHECK(r.accepted);  // alternating forms make every q isotropic
      Mat g = extension_gram(m, ExtensionKind::SymplecticPair);
      CHECK(mat_mul(mat_mul(transpose(r.map), g), r.map) == g);
    }
  }
}

TEST_CASE("orthogonal extension formulas are accepted exactly for isotropic q") {
  Rng rng(181);
  RingPtr f7 = Ring::prime_field(7);
  ProjModule m = standard_form_module(f7, 1, ModuleForm::Orthogonal);

  // isotropic q: first displayed formula passes the predicate
  std::vector<RElem> iso = {from_int(f7, 3), zero(f7)};
  REQUIRE(is_zero(form_value(m, iso, iso)));
  ExtensionResult ok = elementary_on_extension(m, ExtensionKind::OrthogonalPair, 1, iso);
  CHECK(ok.accepted);

  // non-isotropic q: reported, never silently fixed
  std::vector<RElem> noniso = {one(f7), one(f7)};
  REQUIRE(!is_zero(form_value(m, noniso, noniso)));
  ExtensionResult badr = elementary_on_extension(m, ExtensionKind::OrthogonalPair, 1, noniso);
  CHECK(!badr.accepted);
  CHECK(badr.diagnostic.find("not isotropic") != std::string::npos);

  // the second displayed formula fails the predicate for every nonzero q
  ExtensionResult second = elementary_on_extension(m, ExtensionKind::OrthogonalPair, 2, iso);
  CHECK(!second.accepted);
  CHECK(!second.diagnostic.empty());
  std::vector<RElem> zq = {zero(f7), zero(f7)};
  CHECK(elementary_on_extension(m, ExtensionKind::OrthogonalPair, 2, zq).accepted);
}

TEST_CASE("elementary symplectic transvections specialize the sigma transvection") {
  // kind 1 equals sigma_{(u,v)} on M ⊥ R^2 with u = e_b, v = (q, 0, 0)
  Rng rng(191);
  RingPtr f5 = Ring::prime_field(5);
  ProjModule m = standard_form_module(f5, 1, ModuleForm::Symplectic);
  Mat extg = extension_gram(m, ExtensionKind::SymplecticPair);
  ProjModule ext = make_proj_module(f5, identity(f5, 4), ModuleForm::Symplectic, extg);
  for (int t = 0; t < 25; ++t) {
    std::vector<RElem> q = module_vec(m, rng);
    ExtensionResult r = elementary_on_extension(m, ExtensionKind::SymplecticPair, 1, q);
    std::vector<RElem> u = {zero(f5), zero(f5), one(f5), zero(f5)};   // e_b
    std::vector<RElem> v = {q[0], q[1], zero(f5), zero(f5)};
    Mat sigma = make_transvection(ext, {TransvectionSpec::Kind::Symplectic, u, v});
    CHECK(sigma == r.map);

    ExtensionResult r2 = elementary_on_extension(m, ExtensionKind::SymplecticPair, 2, q);
    std::vector<RElem> u2 = {zero(f5), zero(f5), zero(f5), one(f5)};  // e_a
    std::vector<RElem> v2 = {neg(q[0]), neg(q[1]), zero(f5), zero(f5)};
    Mat sigma2 = make_transvection(ext, {TransvectionSpec::Kind::Symplectic, u2, v2});
    CHECK(sigma2 == r2.map);
  }
}

TEST_CASE("transvections over a non-free projective module") {
  // rank-2 image of a non-trivial idempotent over Z/6 (CRT splits the free rank)
  RingPtr z6 = Ring::modular(6);
  Mat e(z6, 3);
  e.at(0, 0) = from_int(z6, 3);
  e.at(1, 1) = from_int(z6, 4);
  e.at(2, 2) = one(z6);
  ProjModule m = make_proj_module(z6, e);
  Rng rng(193);
  for (int t = 0; t < 40; ++t) {
    std::vector<RElem> q = module_vec(m, rng);
    std::vector<RElem> f = module_functional(m, rng);
    if (!is_zero(pair_f_q(f, q))) continue;
    Mat tr = make_transvection(m, {TransvectionSpec::Kind::Linear, q, f});
    CHECK(det(tr) == one(z6));
  }
}
