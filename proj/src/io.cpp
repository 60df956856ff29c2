#include "exalg/io.hpp"

#include <fstream>
#include <sstream>

namespace exalg {

namespace {
[[noreturn]] void fail(const std::string& msg) { throw contract_error(msg); }
}  // namespace

Json ring_to_json(const RingPtr& r) {
  Json j;
  switch (r->kind) {
    case RingKind::Integers:
      j["ring"] = "Integers";
      break;
    case RingKind::Rationals:
      j["ring"] = "Rationals";
      break;
    case RingKind::Modular:
      j["ring"] = "Modular";
      j["n"] = int_str(r->n);
      break;
    case RingKind::PrimeField:
      j["ring"] = "PrimeField";
      j["p"] = int_str(r->n);
      break;
    case RingKind::Polynomial:
      j["ring"] = "Polynomial";
      j["base"] = ring_to_json(r->base);
      j["var"] = r->var;
      break;
    case RingKind::LocalizedAtPrime:
      j["ring"] = "LocalizedAtPrime";
      j["p"] = int_str(r->n);
      break;
    case RingKind::Quotient:
      j["ring"] = "Quotient";
      j["base"] = ring_to_json(r->base);
      j["modulus"] = to_string(r->modulus_elem());
      break;
    case RingKind::Excision:
      j["ring"] = "Excision";
      j["base"] = ring_to_json(r->base);
      j["ideal"] = Json::array();
      for (const auto& g : r->exc_ideal->gens) j["ideal"].push_back(to_string(g));
      break;
  }
  return j;
}

namespace {
Int json_int(const Json& j) {
  if (j.is_string()) return Int(j.get<std::string>());
  if (j.is_number_integer()) return Int(j.get<long long>());
  fail("expected an integer or integer string");
}
}  // namespace

RingPtr ring_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("ring")) fail("ring descriptor must be an object with 'ring'");
  std::string kind = j.at("ring").get<std::string>();
  if (kind == "Integers") return Ring::integers();
  if (kind == "Rationals") return Ring::rationals();
  if (kind == "Modular") return Ring::modular(json_int(j.at("n")));
  if (kind == "PrimeField") return Ring::prime_field(json_int(j.at("p")));
  if (kind == "LocalizedAtPrime") return Ring::localized_at_prime(json_int(j.at("p")));
  if (kind == "Polynomial")
    return Ring::polynomial(ring_from_json(j.at("base")), j.at("var").get<std::string>());
  if (kind == "Quotient") {
    RingPtr base = ring_from_json(j.at("base"));
    return Ring::quotient(base, parse_elem(base, j.at("modulus").get<std::string>()));
  }
  if (kind == "Excision") {
    RingPtr base = ring_from_json(j.at("base"));
    Ideal ideal{base, {}};
    for (const auto& g : j.at("ideal")) ideal.gens.push_back(parse_elem(base, g.get<std::string>()));
    return Ring::excision(base, std::move(ideal));
  }
  fail("unknown ring variant: " + kind);
}

RingPtr parse_ring_spec(const std::string& text) {
  if (!text.empty() && (text[0] == '{' || text[0] == '[')) return ring_from_json(Json::parse(text));
  // token grammar: base [ '[' var ']' [ '/(' modulus ')' ] ]*
  size_t pos = 0;
  auto starts = [&](const std::string& p) { return text.compare(pos, p.size(), p) == 0; };
  RingPtr r;
  if (starts("int") || starts("zz")) {
    pos += starts("int") ? 3 : 2;
    r = Ring::integers();
  } else if (starts("rat") || starts("qq")) {
    pos += starts("rat") ? 3 : 2;
    r = Ring::rationals();
  } else if (starts("fp")) {
    pos += 2;
    size_t s = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    r = Ring::prime_field(Int(text.substr(s, pos - s)));
  } else if (starts("loc")) {
    pos += 3;
    size_t s = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    r = Ring::localized_at_prime(Int(text.substr(s, pos - s)));
  } else if (starts("z")) {
    pos += 1;
    size_t s = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (s == pos) fail("bad ring token: " + text);
    r = Ring::modular(Int(text.substr(s, pos - s)));
  } else {
    fail("unknown ring token: " + text);
  }
  while (pos < text.size()) {
    if (text[pos] == '[') {
      size_t close = text.find(']', pos);
      if (close == std::string::npos) fail("unterminated variable in ring token");
      r = Ring::polynomial(r, text.substr(pos + 1, close - pos - 1));
      pos = close + 1;
    } else if (text.compare(pos, 2, "/(") == 0) {
      size_t close = text.find(')', pos);
      if (close == std::string::npos) fail("unterminated modulus in ring token");
      RElem modulus = parse_elem(r, text.substr(pos + 2, close - pos - 2));
      r = Ring::quotient(r, modulus);
      pos = close + 1;
    } else {
      fail("trailing characters in ring token: " + text.substr(pos));
    }
  }
  return r;
}

Json ideal_to_json(const Ideal& ideal) {
  Json j = Json::array();
  for (const auto& g : ideal.gens) j.push_back(to_string(g));
  return j;
}

Ideal ideal_from_json(const RingPtr& r, const Json& j) {
  Ideal ideal{r, {}};
  if (!j.is_array()) fail("ideal must be an array of generator strings");
  for (const auto& g : j) ideal.gens.push_back(parse_elem(r, g.get<std::string>()));
  return ideal;
}

Json mat_to_json(const Mat& m) {
  Json j;
  j["ring"] = ring_to_json(m.ring());
  j["n"] = m.n();
  Json rows = Json::array();
  for (int i = 0; i < m.n(); ++i) {
    Json row = Json::array();
    for (int k = 0; k < m.n(); ++k) row.push_back(to_string(m.at(i, k)));
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  return j;
}

Mat mat_from_json(const Json& j) {
  RingPtr r = ring_from_json(j.at("ring"));
  int n = j.at("n").get<int>();
  Mat m(r, n);
  const Json& rows = j.at("rows");
  if (static_cast<int>(rows.size()) != n) fail("matrix row count mismatch");
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[i].size()) != n) fail("matrix must be square");
    for (int k = 0; k < n; ++k) m.at(i, k) = parse_elem(r, rows[i][k].get<std::string>());
  }
  return m;
}

namespace {

Json atom_to_json(const GenAtom& a) {
  Json j;
  j["family"] = family_name(a.family);
  j["i"] = a.i;
  j["j"] = a.j;
  j["param"] = to_string(a.z);
  return j;
}

GenAtom atom_from_json(const RingPtr& r, const Json& j) {
  return {family_from_name(j.at("family").get<std::string>()), j.at("i").get<int>(),
          j.at("j").get<int>(), parse_elem(r, j.at("param").get<std::string>())};
}

}  // namespace

Json word_to_json(const Word& w) {
  Json j;
  j["ring"] = ring_to_json(w.ring);
  j["n"] = w.n;
  Json atoms = Json::array();
  for (const auto& a : w.atoms) atoms.push_back(atom_to_json(a));
  j["atoms"] = std::move(atoms);
  return j;
}

Word word_from_json(const Json& j) {
  Word w{ring_from_json(j.at("ring")), j.at("n").get<int>(), {}};
  for (const auto& a : j.at("atoms")) w.atoms.push_back(atom_from_json(w.ring, a));
  return w;
}

Json relword_to_json(const RelWord& w) {
  Json j;
  j["ring"] = ring_to_json(w.ring);
  j["n"] = w.n;
  if (w.ideal) j["ideal"] = ideal_to_json(*w.ideal);
  Json items = Json::array();
  for (const auto& it : w.items) {
    Json e = atom_to_json(it.atom);
    if (std::holds_alternative<Mat>(it.conj)) {
      e["conj"] = Json{{"matrix", mat_to_json(std::get<Mat>(it.conj)).at("rows")}};
    } else {
      Json atoms = Json::array();
      for (const auto& a : std::get<Word>(it.conj).atoms) atoms.push_back(atom_to_json(a));
      e["conj"] = Json{{"word", std::move(atoms)}};
    }
    items.push_back(std::move(e));
  }
  j["items"] = std::move(items);
  return j;
}

RelWord relword_from_json(const Json& j) {
  RelWord w{ring_from_json(j.at("ring")), j.at("n").get<int>(), std::nullopt, {}};
  if (j.contains("ideal")) w.ideal = ideal_from_json(w.ring, j.at("ideal"));
  for (const auto& e : j.at("items")) {
    RelItem it;
    it.atom = atom_from_json(w.ring, e);
    const Json& c = e.at("conj");
    if (c.contains("matrix")) {
      Mat m(w.ring, w.n);
      const Json& rows = c.at("matrix");
      for (int i = 0; i < w.n; ++i)
        for (int k = 0; k < w.n; ++k)
          m.at(i, k) = parse_elem(w.ring, rows[i][k].get<std::string>());
      it.conj = std::move(m);
    } else {
      Word conj{w.ring, w.n, {}};
      for (const auto& a : c.at("word")) conj.atoms.push_back(atom_from_json(w.ring, a));
      it.conj = std::move(conj);
    }
    w.items.push_back(std::move(it));
  }
  return w;
}

Json certificate_to_json(const Certificate& c) {
  Json j;
  j["kind"] = c.kind;
  j["group"] = group_name(c.group);
  if (!c.subjects.empty()) {
    j["ring"] = ring_to_json(c.subjects[0].ring());
    j["n"] = c.subjects[0].n();
    Json subs = Json::array();
    for (const auto& m : c.subjects) subs.push_back(mat_to_json(m).at("rows"));
    j["subjects"] = std::move(subs);
  }
  if (c.rel) j["rel"] = ideal_to_json(*c.rel);
  if (c.witness) j["witness"] = mat_to_json(*c.witness);
  if (c.word) j["word"] = word_to_json(*c.word);
  if (c.relword) j["relword"] = relword_to_json(*c.relword);
  if (!c.factors.empty()) {
    Json fs = Json::array();
    for (const auto& f : c.factors) {
      Json e;
      e["value"] = mat_to_json(f.value).at("rows");
      if (f.proof) e["proof"] = relword_to_json(*f.proof);
      fs.push_back(std::move(e));
    }
    j["factors"] = std::move(fs);
  }
  if (c.unit) j["unit"] = to_string(*c.unit);
  j["constructive"] = c.constructive;
  j["verified"] = c.verified;
  j["transcript_hash"] = transcript_hash(j);
  return j;
}

Certificate certificate_from_json(const Json& j) {
  Certificate c;
  c.kind = j.at("kind").get<std::string>();
  c.group = group_from_name(j.at("group").get<std::string>());
  RingPtr r;
  int n = 0;
  if (j.contains("ring")) {
    r = ring_from_json(j.at("ring"));
    n = j.at("n").get<int>();
    for (const auto& rows : j.at("subjects")) {
      Mat m(r, n);
      for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) m.at(i, k) = parse_elem(r, rows[i][k].get<std::string>());
      c.subjects.push_back(std::move(m));
    }
  }
  if (j.contains("rel")) c.rel = ideal_from_json(r, j.at("rel"));
  if (j.contains("witness")) c.witness = mat_from_json(j.at("witness"));
  if (j.contains("word")) c.word = word_from_json(j.at("word"));
  if (j.contains("relword")) c.relword = relword_from_json(j.at("relword"));
  if (j.contains("factors")) {
    for (const auto& e : j.at("factors")) {
      SplitFactor f;
      Mat m(r, n);
      const Json& rows = e.at("value");
      for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) m.at(i, k) = parse_elem(r, rows[i][k].get<std::string>());
      f.value = std::move(m);
      if (e.contains("proof")) f.proof = relword_from_json(e.at("proof"));
      c.factors.push_back(std::move(f));
    }
  }
  if (j.contains("unit")) c.unit = parse_elem(r, j.at("unit").get<std::string>());
  c.constructive = j.at("constructive").get<bool>();
  c.verified = false;  // only verification sets it
  return c;
}

Json orbit_table_to_json(const OrbitTable& t, const FiniteRingEnum& R,
                         OrbitFamily family, const std::optional<Ideal>& rel) {
  Json j;
  j["ring"] = ring_to_json(R.ring());
  j["n"] = t.n;
  switch (family) {
    case OrbitFamily::Linear: j["family"] = "linear"; break;
    case OrbitFamily::Symplectic: j["family"] = "symplectic"; break;
    case OrbitFamily::Orthogonal: j["family"] = "orthogonal"; break;
  }
  if (rel) j["ideal"] = ideal_to_json(*rel);
  j["row_count"] = t.rows.size();
  j["orbit_count"] = t.orbit_count();
  Json orbits = Json::array();
  for (int id = 0; id < t.orbit_count(); ++id) {
    Json o;
    Json rep = Json::array();
    for (const auto& e : decode_row(R, t.n, t.reps[id])) rep.push_back(to_string(e));
    o["rep"] = std::move(rep);
    o["size"] = t.sizes[id];
    if (!t.completable.empty()) o["completable"] = t.completable[id] != 0;
    orbits.push_back(std::move(o));
  }
  j["orbits"] = std::move(orbits);
  if (!t.table.empty()) j["table"] = t.table;
  return j;
}

Json module_to_json(const ProjModule& m) {
  Json j;
  j["ring"] = ring_to_json(m.ring);
  j["N"] = m.N;
  j["idempotent"] = mat_to_json(m.idempotent).at("rows");
  if (m.form != ModuleForm::None) {
    j["form"] = m.form == ModuleForm::Symplectic ? "symplectic" : "orthogonal";
    j["gram"] = mat_to_json(*m.gram).at("rows");
  }
  return j;
}

ProjModule module_from_json(const Json& j) {
  RingPtr r = ring_from_json(j.at("ring"));
  int n = j.at("N").get<int>();
  auto read_mat = [&](const Json& rows) {
    Mat m(r, n);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) m.at(i, k) = parse_elem(r, rows[i][k].get<std::string>());
    return m;
  };
  Mat e = read_mat(j.at("idempotent"));
  ModuleForm form = ModuleForm::None;
  std::optional<Mat> gram;
  if (j.contains("form")) {
    form = j.at("form").get<std::string>() == "symplectic" ? ModuleForm::Symplectic
                                                           : ModuleForm::Orthogonal;
    gram = read_mat(j.at("gram"));
  }
  return make_proj_module(r, std::move(e), form, std::move(gram));
}

std::string transcript_hash(const Json& j) {
  std::string s = j.dump();
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open file: " + path);
  Json j;
  in >> j;
  return j;
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) fail("cannot write file: " + path);
  out << j.dump(2) << "\n";
}

}  // namespace exalg
