#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "exalg/io.hpp"
#include "support.hpp"

using namespace exalg;
using exalg::test::Rng;

namespace {

std::vector<RingPtr> io_rings() {
  RingPtr f2t = Ring::polynomial(Ring::prime_field(2), "t");
  RingPtr z9 = Ring::modular(9);
  return {Ring::integers(),
          Ring::rationals(),
          Ring::modular(8),
          Ring::prime_field(5),
          Ring::localized_at_prime(5),
          Ring::polynomial(Ring::prime_field(3), "X"),
          Ring::quotient(f2t, parse_elem(f2t, "t^3")),
          Ring::excision(z9, Ideal{z9, {from_int(z9, 3)}})};
}

}  // namespace

TEST_CASE("ring descriptors round-trip through json") {
  for (const auto& r : io_rings()) {
    Json j = ring_to_json(r);
    RingPtr back = ring_from_json(j);
    CAPTURE(j.dump());
    CHECK(back->equal(*r));
    CHECK(ring_to_json(back) == j);
  }
  // spec-shaped literals parse
  CHECK(ring_from_json(Json::parse(R"({"ring":"Modular","n":8})"))->equal(*Ring::modular(8)));
  Json exc = Json::parse(
      R"({"ring":"Excision","base":{"ring":"Integers"},"ideal":["2"]})");
  CHECK(ring_from_json(exc)->kind == RingKind::Excision);
}

TEST_CASE("compact ring tokens") {
  CHECK(parse_ring_spec("int")->equal(*Ring::integers()));
  CHECK(parse_ring_spec("rat")->equal(*Ring::rationals()));
  CHECK(parse_ring_spec("z8")->equal(*Ring::modular(8)));
  CHECK(parse_ring_spec("fp5")->equal(*Ring::prime_field(5)));
  CHECK(parse_ring_spec("loc5")->equal(*Ring::localized_at_prime(5)));
  RingPtr f5x = Ring::polynomial(Ring::prime_field(5), "X");
  CHECK(parse_ring_spec("fp5[X]")->equal(*f5x));
  RingPtr f2t = Ring::polynomial(Ring::prime_field(2), "t");
  CHECK(parse_ring_spec("fp2[t]/(t^3)")->equal(*Ring::quotient(f2t, parse_elem(f2t, "t^3"))));
  CHECK_THROWS_AS(parse_ring_spec("weird"), contract_error);
}

TEST_CASE("matrices round-trip") {
  Rng rng(211);
  for (const auto& r : io_rings()) {
    Mat m(r, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m.at(i, j) = test::random_elem(r, rng);
    Json j = mat_to_json(m);
    CHECK(mat_from_json(j) == m);
    CHECK(mat_to_json(mat_from_json(j)) == j);
  }
}

TEST_CASE("words and relwords round-trip") {
  Rng rng(223);
  RingPtr z9 = Ring::modular(9);
  Word w = test::random_word(z9, 4, AtomFamily::SpSE, 8, rng);
  Json j = word_to_json(w);
  Word back = word_from_json(j);
  CHECK(eval_word(back) == eval_word(w));
  CHECK(word_to_json(back) == j);

  Ideal i3{z9, {from_int(z9, 3)}};
  Mat sigma = test::random_relative_elem(z9, 3, AtomFamily::LinE, i3, 4, rng);
  RelWord rw = relativize_excision(sigma, i3, ReduceFamily::Linear);
  Json rj = relword_to_json(rw);
  RelWord rback = relword_from_json(rj);
  CHECK(eval_word(rback) == sigma);
  CHECK(relword_to_json(rback) == rj);

  // word-conjugator variant
  RelWord wc{z9, 3, std::nullopt,
             {{test::random_word(z9, 3, AtomFamily::LinE, 2, rng),
               GenAtom{AtomFamily::LinE, 1, 2, from_int(z9, 3)}}}};
  Json wj = relword_to_json(wc);
  CHECK(eval_word(relword_from_json(wj)) == eval_word(wc));
}

TEST_CASE("certificates round-trip and re-verify from serialized form alone") {
  Rng rng(227);
  RingPtr f5 = Ring::prime_field(5);
  Mat a = eval_word(test::random_word(f5, 3, AtomFamily::LinE, 6, rng));
  Certificate cert;
  cert.kind = "factorization";
  cert.group = GroupKind::SL;
  cert.subjects = {a};
  cert.word = reduce_local(a, ReduceFamily::Linear);
  REQUIRE(verify_certificate(cert));

  Json j = certificate_to_json(cert);
  Certificate back = certificate_from_json(j);
  CHECK(!back.verified);  // the flag never travels as truth
  CHECK(verify_certificate(back));

  // tampering breaks verification
  Json bad = j;
  RElem old = parse_elem(f5, bad["word"]["atoms"][0]["param"].get<std::string>());
  bad["word"]["atoms"][0]["param"] = to_string(old + one(f5));
  Certificate tampered = certificate_from_json(bad);
  bool ok = true;
  try {
    ok = verify_certificate(tampered);
  } catch (const contract_error&) {
    ok = false;
  }
  CHECK((!ok || !(eval_word(*tampered.word) == a)));
}

TEST_CASE("serialization is deterministic") {
  Rng rng(229);
  RingPtr z9 = Ring::modular(9);
  Ideal i3{z9, {from_int(z9, 3)}};
  Mat sigma = test::random_relative_elem(z9, 3, AtomFamily::LinE, i3, 4, rng);
  Certificate c;
  c.kind = "rel-factorization";
  c.group = GroupKind::SL;
  c.subjects = {sigma};
  c.rel = i3;
  c.relword = relativize_excision(sigma, i3, ReduceFamily::Linear);
  verify_certificate(c);
  std::string d1 = certificate_to_json(c).dump(2);
  std::string d2 = certificate_to_json(c).dump(2);
  CHECK(d1 == d2);
  CHECK(transcript_hash(certificate_to_json(c)) == transcript_hash(certificate_to_json(c)));
}

TEST_CASE("module files round-trip") {
  RingPtr f5 = Ring::prime_field(5);
  ProjModule m = make_proj_module(f5, identity(f5, 4), ModuleForm::Orthogonal,
                                  orthogonal_form(f5, 2));
  Json j = module_to_json(m);
  ProjModule back = module_from_json(j);
  CHECK(back.idempotent == m.idempotent);
  CHECK(*back.gram == *m.gram);
  CHECK(module_to_json(back) == j);
}
