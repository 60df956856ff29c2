#pragma once

#include "exalg/matrix.hpp"

#include <variant>

namespace exalg {

enum class AtomFamily { LinE, SpSE, OrthO };

std::string family_name(AtomFamily f);
AtomFamily family_from_name(const std::string& s);
GroupKind family_group(AtomFamily f);

/// Elementary generator atom with 1-based indices i != j and parameter z.
struct GenAtom {
  AtomFamily family{};
  int i = 0;
  int j = 0;
  RElem z;
};

/// The literal generator matrix:
///   LinE:  I + z E_ij
///   SpSE:  I + z E_ij                        if i = sigma(j)
///          I + z E_ij - (-1)^{i+j} z E_{sigma(j) sigma(i)}   otherwise
///   OrthO: I + z E_ij - z E_{sigma(j) sigma(i)}, i != sigma(j) required
Mat atom_matrix(const GenAtom& a, int n);

inline GenAtom atom_inverse(const GenAtom& a) { return {a.family, a.i, a.j, neg(a.z)}; }

/// Flat ordered product of atoms; empty word is the identity.
struct Word {
  RingPtr ring;
  int n = 0;
  std::vector<GenAtom> atoms;
};

Word inverse_word(const Word& w);
Word concat(const Word& a, const Word& b);
/// Re-index atoms into a larger ambient dimension at `offset` (0-based shift).
Word shift_word(const Word& w, int offset, int ambient_n);
/// Cancels adjacent mutually-inverse atoms and drops zero parameters; nothing more.
Word simplify_word(Word w);
Mat eval_word(const Word& w);

/// Conjugated atom: conj * atom * conj^-1.
struct RelItem {
  std::variant<Mat, Word> conj;
  GenAtom atom;
};

Mat conj_matrix(const RelItem& it, const RingPtr& ring, int n);

/// Ordered product of conjugated atoms; parameters constrained to `ideal`
/// when present.
struct RelWord {
  RingPtr ring;
  int n = 0;
  std::optional<Ideal> ideal;
  std::vector<RelItem> items;
};

Mat eval_word(const RelWord& w);
/// Every atom parameter passes ideal membership (vacuous without an ideal).
bool relword_params_ok(const RelWord& w);

Word word_map(const RingHom& h, const Word& w);
RelWord word_map(const RingHom& h, const RelWord& w);

/// Rewrites a word over an excision ring whose evaluation is congruent to I
/// modulo the retraction kernel into a RelWord over the kernel ideal with the
/// same evaluation: split each parameter through the section r |-> (r, 0),
/// left-collect the split prefix, conjugate each kernel atom by it.
RelWord relativize(const Word& w, const RingHom& retraction);

// ---- certificates -------------------------------------------------------------

struct SplitFactor {
  Mat value;
  std::optional<RelWord> proof;
};

/// A re-checkable claim: subjects plus the proof object that multiplies out.
/// `verified` is only ever set by verify_certificate.
struct Certificate {
  std::string kind;
  GroupKind group = GroupKind::SL;
  std::vector<Mat> subjects;
  std::optional<Ideal> rel;
  std::optional<Word> word;
  std::optional<RelWord> relword;
  std::vector<SplitFactor> factors;
  std::optional<Mat> witness;  // homotopy witness matrix over R[X]
  std::optional<RElem> unit;   // spinor/hyperbolic unit
  bool constructive = true;
  bool verified = false;
};

/// Recomputes all products exactly; returns the outcome and stores it in
/// cert.verified. Throws contract_error only for malformed certificates.
bool verify_certificate(Certificate& cert);

}  // namespace exalg
