#include "exalg/words.hpp"

namespace exalg {

namespace {
[[noreturn]] void fail(const std::string& msg) { throw contract_error(msg); }
}  // namespace

std::string family_name(AtomFamily f) {
  switch (f) {
    case AtomFamily::LinE: return "LinE";
    case AtomFamily::SpSE: return "SpSE";
    case AtomFamily::OrthO: return "OrthO";
  }
  return "?";
}

AtomFamily family_from_name(const std::string& s) {
  if (s == "LinE") return AtomFamily::LinE;
  if (s == "SpSE") return AtomFamily::SpSE;
  if (s == "OrthO") return AtomFamily::OrthO;
  fail("unknown atom family: " + s);
}

GroupKind family_group(AtomFamily f) {
  switch (f) {
    case AtomFamily::LinE: return GroupKind::SL;
    case AtomFamily::SpSE: return GroupKind::Sp;
    case AtomFamily::OrthO: return GroupKind::SO;
  }
  return GroupKind::SL;
}

Mat atom_matrix(const GenAtom& a, int n) {
  if (a.i < 1 || a.j < 1 || a.i > n || a.j > n) fail("atom index out of range");
  if (a.i == a.j) fail("atom requires i != j");
  const RingPtr& r = a.z.ring();
  Mat m = identity(r, n);
  switch (a.family) {
    case AtomFamily::LinE:
      m.at(a.i - 1, a.j - 1) = a.z;
      return m;
    case AtomFamily::SpSE: {
      if (n % 2 != 0) fail("symplectic atoms need even dimension");
      m.at(a.i - 1, a.j - 1) = a.z;
      if (a.i != sigma_index(a.j)) {
        // -(-1)^{i+j} z at (sigma(j), sigma(i))
        RElem c = ((a.i + a.j) % 2 == 0) ? neg(a.z) : a.z;
        m.at(sigma_index(a.j) - 1, sigma_index(a.i) - 1) = c;
      }
      return m;
    }
    case AtomFamily::OrthO: {
      if (n % 2 != 0) fail("orthogonal atoms need even dimension");
      if (a.i == sigma_index(a.j)) fail("orthogonal atoms require i != sigma(j)");
      m.at(a.i - 1, a.j - 1) = a.z;
      m.at(sigma_index(a.j) - 1, sigma_index(a.i) - 1) = neg(a.z);
      return m;
    }
  }
  fail("bad atom family");
}

Word inverse_word(const Word& w) {
  Word out{w.ring, w.n, {}};
  out.atoms.reserve(w.atoms.size());
  for (auto it = w.atoms.rbegin(); it != w.atoms.rend(); ++it)
    out.atoms.push_back(atom_inverse(*it));
  return out;
}

Word concat(const Word& a, const Word& b) {
  if (a.n != b.n || !a.ring->equal(*b.ring)) fail("word concat mismatch");
  Word out = a;
  out.atoms.insert(out.atoms.end(), b.atoms.begin(), b.atoms.end());
  return out;
}

Word shift_word(const Word& w, int offset, int ambient_n) {
  if (offset % 2 != 0 && w.atoms.size())
    for (const auto& a : w.atoms)
      if (a.family != AtomFamily::LinE)
        fail("form-family words can only shift by whole hyperbolic planes");
  Word out{w.ring, ambient_n, {}};
  for (const auto& a : w.atoms) {
    if (a.i + offset > ambient_n || a.j + offset > ambient_n) fail("shift out of range");
    out.atoms.push_back({a.family, a.i + offset, a.j + offset, a.z});
  }
  return out;
}

Word simplify_word(Word w) {
  std::vector<GenAtom> out;
  for (auto& a : w.atoms) {
    if (is_zero(a.z)) continue;
    if (!out.empty()) {
      GenAtom& b = out.back();
      if (b.family == a.family && b.i == a.i && b.j == a.j && is_zero(b.z + a.z)) {
        out.pop_back();
        continue;
      }
    }
    out.push_back(std::move(a));
  }
  w.atoms = std::move(out);
  return w;
}

Mat eval_word(const Word& w) {
  Mat acc = identity(w.ring, w.n);
  for (const auto& a : w.atoms) {
    if (!a.z.ring()->equal(*w.ring)) fail("word atom from the wrong ring");
    acc = mat_mul(acc, atom_matrix(a, w.n));
  }
  return acc;
}

Mat conj_matrix(const RelItem& it, const RingPtr& ring, int n) {
  if (std::holds_alternative<Mat>(it.conj)) return std::get<Mat>(it.conj);
  const Word& w = std::get<Word>(it.conj);
  if (!w.ring->equal(*ring) || w.n != n) fail("conjugator word mismatch");
  return eval_word(w);
}

Mat eval_word(const RelWord& w) {
  Mat acc = identity(w.ring, w.n);
  for (const auto& it : w.items) {
    Mat g = conj_matrix(it, w.ring, w.n);
    Mat m = atom_matrix(it.atom, w.n);
    acc = mat_mul(acc, mat_mul(mat_mul(g, m), inverse(g)));
  }
  return acc;
}

bool relword_params_ok(const RelWord& w) {
  if (!w.ideal) return true;
  for (const auto& it : w.items)
    if (!ideal_contains(*w.ideal, it.atom.z)) return false;
  return true;
}

Word word_map(const RingHom& h, const Word& w) {
  if (!w.ring->equal(*h.domain)) fail("word_map: word over the wrong ring");
  Word out{h.codomain, w.n, {}};
  for (const auto& a : w.atoms) out.atoms.push_back({a.family, a.i, a.j, hom_apply(h, a.z)});
  return out;
}

RelWord word_map(const RingHom& h, const RelWord& w) {
  if (!w.ring->equal(*h.domain)) fail("word_map: word over the wrong ring");
  RelWord out{h.codomain, w.n, std::nullopt, {}};
  if (w.ideal) {
    Ideal img{h.codomain, {}};
    for (const auto& g : w.ideal->gens) img.gens.push_back(hom_apply(h, g));
    out.ideal = std::move(img);
  }
  for (const auto& it : w.items) {
    RelItem m;
    if (std::holds_alternative<Mat>(it.conj))
      m.conj = hom_apply(h, std::get<Mat>(it.conj));
    else
      m.conj = word_map(h, std::get<Word>(it.conj));
    m.atom = {it.atom.family, it.atom.i, it.atom.j, hom_apply(h, it.atom.z)};
    out.items.push_back(std::move(m));
  }
  return out;
}

RelWord relativize(const Word& w, const RingHom& retraction) {
  if (retraction.kind != HomKind::ExcisionRetraction)
    fail("relativize needs a retraction with a ring splitting (excision retraction)");
  const RingPtr& B = retraction.domain;  // R (+) I
  if (!w.ring->equal(*B)) fail("relativize: word over the wrong ring");
  const RingPtr& R = B->base;

  // kernel ideal 0 (+) I
  Ideal kernel{B, {}};
  for (const auto& g : B->exc_ideal->gens)
    kernel.gens.push_back(make_pair(B, zero(R), g));

  RelWord out{B, w.n, kernel, {}};
  Mat prefix = identity(B, w.n);
  for (const auto& a : w.atoms) {
    const RElem& rc = a.z.as_vec()[0];
    const RElem& ic = a.z.as_vec()[1];
    RElem split = make_pair(B, rc, zero(R));      // s(pi(z))
    RElem kpart = make_pair(B, zero(R), ic);      // z - s(pi(z)), in 0 (+) I
    if (!is_zero(split))
      prefix = mat_mul(prefix, atom_matrix({a.family, a.i, a.j, split}, w.n));
    if (!is_zero(kpart))
      out.items.push_back({prefix, GenAtom{a.family, a.i, a.j, kpart}});
  }
  if (!is_identity(prefix))
    fail("relativize: word evaluation is not congruent to I modulo the kernel");
  return out;
}

}  // namespace exalg
