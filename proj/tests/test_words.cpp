#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

using namespace exalg;
using exalg::test::Rng;

TEST_CASE("atom matrices match the defining formulas") {
  RingPtr z = Ring::integers();
  RElem lam = from_int(z, 7);

  Mat lin = atom_matrix({AtomFamily::LinE, 1, 2, lam}, 3);
  Mat lin_expect = identity(z, 3);
  lin_expect.at(0, 1) = lam;
  CHECK(lin == lin_expect);

  // sigma(3) = 4, sigma(1) = 2, sign (-1)^{1+3} = +1: I + zE13 - zE42
  Mat se = atom_matrix({AtomFamily::SpSE, 1, 3, lam}, 4);
  Mat se_expect = identity(z, 4);
  se_expect.at(0, 2) = lam;
  se_expect.at(3, 1) = neg(lam);
  CHECK(se == se_expect);

  // i = sigma(j): single entry
  Mat se2 = atom_matrix({AtomFamily::SpSE, 2, 1, lam}, 4);
  Mat se2_expect = identity(z, 4);
  se2_expect.at(1, 0) = lam;
  CHECK(se2 == se2_expect);

  // sign (-1)^{i+j} = -1 for (1,4): I + zE14 + zE32
  Mat se3 = atom_matrix({AtomFamily::SpSE, 1, 4, lam}, 4);
  Mat se3_expect = identity(z, 4);
  se3_expect.at(0, 3) = lam;
  se3_expect.at(2, 1) = lam;
  CHECK(se3 == se3_expect);

  Mat orth = atom_matrix({AtomFamily::OrthO, 1, 3, lam}, 4);
  Mat orth_expect = identity(z, 4);
  orth_expect.at(0, 2) = lam;
  orth_expect.at(3, 1) = neg(lam);
  CHECK(orth == orth_expect);

  CHECK_THROWS_AS(atom_matrix({AtomFamily::OrthO, 2, 1, lam}, 4), contract_error);
  CHECK_THROWS_AS(atom_matrix({AtomFamily::LinE, 1, 1, lam}, 3), contract_error);
  CHECK_THROWS_AS(atom_matrix({AtomFamily::LinE, 1, 5, lam}, 3), contract_error);
}

TEST_CASE("atoms are form members and additive in the parameter") {
  Rng rng(41);
  RingPtr f7 = Ring::prime_field(7);
  RingPtr z9 = Ring::modular(9);
  for (const auto& r : {f7, z9}) {
    for (int t = 0; t < 100; ++t) {
      RElem z1 = test::random_elem(r, rng);
      RElem z2 = test::random_elem(r, rng);
      for (AtomFamily fam : {AtomFamily::LinE, AtomFamily::SpSE, AtomFamily::OrthO}) {
        int n = (fam == AtomFamily::LinE) ? 3 : 6;
        auto [i, j] = test::random_index_pair(rng, n, fam);
        Mat a = atom_matrix({fam, i, j, z1}, n);
        Mat b = atom_matrix({fam, i, j, z2}, n);
        CHECK(mat_mul(a, b) == atom_matrix({fam, i, j, z1 + z2}, n));
        CHECK(mat_mul(a, atom_matrix({fam, i, j, neg(z1)}, n)) == identity(r, n));
        CHECK(is_member(a, family_group(fam)).ok);
      }
    }
  }
}

TEST_CASE("word evaluation") {
  RingPtr z = Ring::integers();
  CHECK(eval_word(Word{z, 3, {}}) == identity(z, 3));

  Word w{z, 2,
         {{AtomFamily::LinE, 1, 2, one(z)},
          {AtomFamily::LinE, 2, 1, neg(one(z))},
          {AtomFamily::LinE, 1, 2, one(z)}}};
  Mat rot(z, 2);
  rot.at(0, 1) = one(z);
  rot.at(1, 0) = neg(one(z));
  CHECK(eval_word(w) == rot);
}

TEST_CASE("relword evaluation is the conjugated product") {
  RingPtr z8 = Ring::modular(8);
  Rng rng(43);
  Mat gamma = eval_word(test::random_word(z8, 3, AtomFamily::LinE, 4, rng));
  GenAtom a{AtomFamily::LinE, 1, 2, from_int(z8, 4)};
  RelWord rw{z8, 3, std::nullopt, {{gamma, a}}};
  CHECK(eval_word(rw) ==
        mat_mul(mat_mul(gamma, atom_matrix(a, 3)), inverse(gamma)));
  // conjugator-as-word variant evaluates identically
  Word cw = test::random_word(z8, 3, AtomFamily::LinE, 3, rng);
  RelWord rw2{z8, 3, std::nullopt, {{cw, a}}};
  CHECK(eval_word(rw2) ==
        mat_mul(mat_mul(eval_word(cw), atom_matrix(a, 3)), inverse(eval_word(cw))));
}

TEST_CASE("inverse word evaluates to the inverse matrix") {
  Rng rng(47);
  RingPtr z9 = Ring::modular(9);
  for (int t = 0; t < 30; ++t) {
    Word w = test::random_word(z9, 4, AtomFamily::LinE, 6, rng);
    CHECK(eval_word(inverse_word(w)) == inverse(eval_word(w)));
    Word sp = test::random_word(z9, 4, AtomFamily::SpSE, 6, rng);
    CHECK(eval_word(inverse_word(sp)) == inverse(eval_word(sp)));
  }
}

TEST_CASE("word_map commutes with evaluation") {
  Rng rng(53);
  RingPtr f5 = Ring::prime_field(5);
  RingPtr f5x = Ring::polynomial(f5, "X");
  RingHom at0 = RingHom::eval_variable(f5x, zero(f5));
  RingHom at1 = RingHom::eval_variable(f5x, one(f5));

  Word w{f5x, 3, {{AtomFamily::LinE, 1, 2, parse_elem(f5x, "X")}}};
  CHECK(eval_word(word_map(at0, w)) == identity(f5, 3));
  Word w2{f5x, 3, {{AtomFamily::LinE, 1, 2, parse_elem(f5x, "X^2-X")}}};
  CHECK(eval_word(word_map(at1, w2)) == identity(f5, 3));

  for (int t = 0; t < 30; ++t) {
    Word rw = test::random_word(f5x, 3, AtomFamily::LinE, 5, rng);
    CHECK(eval_word(word_map(at1, rw)) == hom_apply(at1, eval_word(rw)));
    // functoriality through a second hom
    RingHom emb = RingHom::inclusion(f5, f5x);
    Word back = word_map(emb, word_map(at1, rw));
    CHECK(eval_word(back) == hom_apply(emb, hom_apply(at1, eval_word(rw))));
  }
}

TEST_CASE("relativize splits parameters and records conjugators") {
  RingPtr z = Ring::integers();
  RingPtr b = Ring::excision(z, Ideal{z, {from_int(z, 2)}});
  RingHom pi = RingHom::excision_retraction(b);

  // all-kernel word: trivial conjugators
  Word k{b, 3,
         {{AtomFamily::LinE, 1, 2, make_pair(b, zero(z), from_int(z, 2))},
          {AtomFamily::LinE, 2, 3, make_pair(b, zero(z), from_int(z, 4))}}};
  RelWord rk = relativize(k, pi);
  REQUIRE(rk.items.size() == 2);
  for (const auto& it : rk.items) CHECK(is_identity(conj_matrix(it, b, 3)));
  CHECK(eval_word(rk) == eval_word(k));
  CHECK(relword_params_ok(rk));

  // mixed parameters: evaluation preserved, parameters land in 0 (+) I
  Word m{b, 3,
         {{AtomFamily::LinE, 1, 2, make_pair(b, one(z), zero(z))},
          {AtomFamily::LinE, 1, 2, make_pair(b, neg(one(z)), from_int(z, 2))}}};
  RelWord rm = relativize(m, pi);
  CHECK(eval_word(rm) == eval_word(m));
  CHECK(eval_word(rm) ==
        atom_matrix({AtomFamily::LinE, 1, 2, make_pair(b, zero(z), from_int(z, 2))}, 3));
  CHECK(relword_params_ok(rm));

  // precondition: evaluation must be I modulo the kernel
  Word badw{b, 3, {{AtomFamily::LinE, 1, 2, make_pair(b, one(z), zero(z))}}};
  CHECK_THROWS_AS(relativize(badw, pi), contract_error);
}

TEST_CASE("relativize preserves evaluation on random kernel-congruent words") {
  Rng rng(59);
  RingPtr z8 = Ring::modular(8);
  RingPtr b = Ring::excision(z8, Ideal{z8, {from_int(z8, 4)}});
  RingHom pi = RingHom::excision_retraction(b);
  for (int t = 0; t < 25; ++t) {
    // random split parts that cancel, interleaved with kernel parts
    Word w{b, 3, {}};
    std::vector<GenAtom> split;
    for (int s = 0; s < 3; ++s) {
      auto [i, j] = test::random_index_pair(rng, 3, AtomFamily::LinE);
      RElem rc = test::random_elem(z8, rng);
      RElem ic = from_int(z8, 4) * test::random_elem(z8, rng);
      w.atoms.push_back({AtomFamily::LinE, i, j, make_pair(b, rc, ic)});
      split.push_back({AtomFamily::LinE, i, j, make_pair(b, neg(rc), zero(z8))});
    }
    for (auto it = split.rbegin(); it != split.rend(); ++it) w.atoms.push_back(*it);
    RelWord rw = relativize(w, pi);
    CHECK(eval_word(rw) == eval_word(w));
    CHECK(relword_params_ok(rw));
  }
}

TEST_CASE("simplify cancels only adjacent mutually-inverse atoms") {
  RingPtr z = Ring::integers();
  Word w{z, 3,
         {{AtomFamily::LinE, 1, 2, from_int(z, 3)},
          {AtomFamily::LinE, 1, 2, from_int(z, -3)},
          {AtomFamily::LinE, 2, 3, from_int(z, 1)},
          {AtomFamily::LinE, 1, 2, from_int(z, 0)}}};
  Word s = simplify_word(w);
  REQUIRE(s.atoms.size() == 1);
  CHECK(s.atoms[0].i == 2);
  // non-adjacent inverses stay
  Word w2{z, 3,
          {{AtomFamily::LinE, 1, 2, from_int(z, 3)},
           {AtomFamily::LinE, 2, 3, from_int(z, 1)},
           {AtomFamily::LinE, 1, 2, from_int(z, -3)}}};
  CHECK(simplify_word(w2).atoms.size() == 3);
}
