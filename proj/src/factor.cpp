#include "exalg/factor.hpp"

namespace exalg {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw contract_error(msg); }

constexpr long kSearchGuard = 1'000'000;  // brute-force coefficient tuples

std::vector<RElem> mat_row(const Mat& m, int i) {
  std::vector<RElem> out;
  out.reserve(m.n());
  for (int j = 0; j < m.n(); ++j) out.push_back(m.at(i, j));
  return out;
}

std::vector<RElem> unit_row(const RingPtr& r, int n, int k) {
  std::vector<RElem> e(n, zero(r));
  e[k] = one(r);
  return e;
}

bool ring_reducible(const Ring& r) { return r.is_local() || r.is_finite(); }

}  // namespace

GroupKind reduce_group(ReduceFamily f) {
  return f == ReduceFamily::Linear ? GroupKind::SL : GroupKind::Sp;
}

AtomFamily reduce_atom_family(ReduceFamily f) {
  return f == ReduceFamily::Linear ? AtomFamily::LinE : AtomFamily::SpSE;
}

// ---- unimodular row completion ------------------------------------------------

namespace {

struct RowWork {
  RingPtr ring;
  int n;
  AtomFamily fam;
  std::vector<RElem> row;
  std::vector<GenAtom> applied;

  void apply(int i, int j, const RElem& z) {
    GenAtom a{fam, i, j, z};
    row = row_mul(row, atom_matrix(a, n));
    applied.push_back(std::move(a));
  }
};

// Lowest-index unit coordinate, or -1.
int find_unit(const std::vector<RElem>& row) {
  for (size_t k = 0; k < row.size(); ++k)
    if (is_unit(row[k])) return static_cast<int>(k);
  return -1;
}

// Accumulate other coordinates into coordinate 1 until it becomes a unit.
// Local rings: one addition from a unit coordinate. Finite semilocal rings:
// exhaustive search over coefficient tuples (c_2..c_n), simulated with the
// family's actual atoms so symplectic side effects are honored.
void make_first_unit(RowWork& w) {
  if (is_unit(w.row[0])) return;
  int k = find_unit(w.row);
  if (k > 0) {
    w.apply(k + 1, 1, one(w.ring));
    if (!is_unit(w.row[0])) fail("pivot accumulation failed (ring not local?)");
    return;
  }
  if (k == 0) return;
  if (!w.ring->is_finite())
    fail("row is not unimodular (no unit coordinate over a local ring)");
  const Int& sz = w.ring->cardinality();
  Int tuples = 1;
  for (int t = 1; t < w.n; ++t) {
    tuples *= sz;
    if (tuples > kSearchGuard) fail("coefficient search guard exceeded");
  }
  for (Int code = 0; code < tuples; ++code) {
    Int rest = code;
    RowWork probe = w;
    for (int t = 2; t <= w.n; ++t) {
      RElem c = elem_at(w.ring, rest % sz);
      rest /= sz;
      if (!is_zero(c)) probe.apply(t, 1, c);
    }
    if (is_unit(probe.row[0])) {
      w = std::move(probe);
      return;
    }
  }
  fail("row is not unimodular (exhaustive coefficient search failed)");
}

}  // namespace

Word complete_unimodular(const std::vector<RElem>& v, ReduceFamily family) {
  if (v.empty()) fail("empty row");
  const RingPtr& r = v[0].ring();
  int n = static_cast<int>(v.size());
  if (family == ReduceFamily::Symplectic && n % 2 != 0)
    fail("symplectic rows need even length");
  if (n == 1) {
    if (!is_one(v[0])) fail("rows of length 1 complete only at (1)");
    return Word{r, n, {}};
  }
  if (!ring_reducible(*r))
    throw unsupported_error("row completion needs a local or finite ring");

  RowWork w{r, n, reduce_atom_family(family), v, {}};
  make_first_unit(w);

  RElem u = w.row[0];
  RElem uinv = *unit_inverse(u);
  if (family == ReduceFamily::Linear) {
    for (int l = 2; l <= n; ++l)
      if (!is_zero(w.row[l - 1])) w.apply(1, l, neg(uinv * w.row[l - 1]));
  } else {
    // clear the sigma-partner coordinate last; se_{1,l} side effects land there
    for (int l = 3; l <= n; ++l)
      if (!is_zero(w.row[l - 1])) w.apply(1, l, neg(uinv * w.row[l - 1]));
    if (!is_zero(w.row[1])) w.apply(1, 2, neg(uinv * w.row[1]));
  }

  if (!is_one(u)) {
    // (u,0,...) -> (1,0,...) via the three-move dance in the first two slots
    w.apply(1, 2, uinv * (one(r) - u));
    w.apply(2, 1, one(r));
    w.apply(1, 2, u - one(r));
  }
  for (int k = 0; k < n; ++k)
    if (!(w.row[k] == (k == 0 ? one(r) : zero(r))))
      fail("row completion did not reach e1");

  // v * eval(applied) = e1, so e1 * eval(applied)^-1 = v.
  return simplify_word(inverse_word(Word{r, n, std::move(w.applied)}));
}

// ---- local reduction ------------------------------------------------------------

namespace {

Word reduce_local_rec(const Mat& a, ReduceFamily family) {
  const RingPtr& r = a.ring();
  int n = a.n();
  if (n == 0) return Word{r, 0, {}};
  if (n == 1) {
    if (!is_one(a.at(0, 0))) fail("1x1 block is not the identity");
    return Word{r, 1, {}};
  }

  AtomFamily fam = reduce_atom_family(family);
  Word w1 = complete_unimodular(mat_row(a, 0), family);
  Mat beta = mat_mul(a, inverse(eval_word(w1)));  // first row e1

  if (family == ReduceFamily::Linear || n == 2) {
    // clear the first column; with first row e1 this touches nothing else
    Word left{r, n, {}};
    Mat block = beta;
    for (int k = 2; k <= n; ++k) {
      RElem c = block.at(k - 1, 0);
      if (is_zero(c)) continue;
      left.atoms.push_back({fam, k, 1, c});
      for (int j = 0; j < n; ++j)
        block.at(k - 1, j) = block.at(k - 1, j) - c * block.at(0, j);
    }
    Mat sub(r, n - 1);
    for (int i = 1; i < n; ++i) {
      if (!is_zero(block.at(0, i))) fail("reduction lost the e1 row");
      for (int j = 1; j < n; ++j) sub.at(i - 1, j - 1) = block.at(i, j);
    }
    Word wsub = (n - 1 > 0) ? reduce_local_rec(sub, family) : Word{r, 0, {}};
    return simplify_word(
        concat(left, concat(shift_word(wsub, 1, n), w1)));
  }

  // symplectic, n >= 4: normalize the sigma-partner row with atoms fixing e1
  Word fix{r, n, {}};
  auto rapply = [&](int i, int j, const RElem& z) {
    GenAtom g{fam, i, j, z};
    beta = mat_mul(beta, atom_matrix(g, n));
    fix.atoms.push_back(std::move(g));
  };
  if (!is_one(beta.at(1, 1))) fail("symplectic pairing broke: <e1, row2> != 1");
  for (int l = 3; l <= n; ++l)
    if (!is_zero(beta.at(1, l - 1))) rapply(2, l, neg(beta.at(1, l - 1)));
  if (!is_zero(beta.at(1, 0))) rapply(2, 1, neg(beta.at(1, 0)));

  Mat sub(r, n - 2);
  for (int i = 2; i < n; ++i)
    for (int j = 2; j < n; ++j) {
      if (!is_zero(beta.at(i, 0)) || !is_zero(beta.at(i, 1)))
        fail("symplectic reduction left junk in the first two columns");
      sub.at(i - 2, j - 2) = beta.at(i, j);
    }
  for (int j = 2; j < n; ++j)
    if (!is_zero(beta.at(0, j)) || !is_zero(beta.at(1, j)))
      fail("symplectic reduction left junk in the first two rows");

  Word wsub = reduce_local_rec(sub, family);
  // beta * fix = I2 ⊥ sub, so a = (I2 ⊥ sub) * fix^-1 * w1
  return simplify_word(
      concat(shift_word(wsub, 2, n), concat(inverse_word(fix), w1)));
}

}  // namespace

Word reduce_local(const Mat& a, ReduceFamily family) {
  const RingPtr& r = a.ring();
  if (!ring_reducible(*r))
    throw unsupported_error("reduce_local needs a local or finite ring: " + r->name());
  auto rep = is_member(a, reduce_group(family));
  if (!rep.ok) fail("reduce_local: " + rep.reason);
  return reduce_local_rec(a, family);
}

// ---- Euclidean reduction ---------------------------------------------------------

Word reduce_euclidean(const Mat& a) {
  const RingPtr& r = a.ring();
  if (!r->is_euclidean())
    throw unsupported_error("reduce_euclidean needs a Euclidean ring: " + r->name());
  if (a.n() < 1) fail("empty matrix");
  if (!is_one(det(a))) fail("reduce_euclidean: determinant is not 1");

  int n = a.n();
  Mat m = a;
  std::vector<GenAtom> left;   // in application order (premultiplied)
  std::vector<GenAtom> right;  // in application order (postmultiplied)

  auto lapply = [&](int i, int j, const RElem& z) {
    // row_i += z * row_j
    left.push_back({AtomFamily::LinE, i, j, z});
    for (int c = 0; c < n; ++c)
      m.at(i - 1, c) = m.at(i - 1, c) + z * m.at(j - 1, c);
  };
  auto rapply = [&](int i, int j, const RElem& z) {
    // col_j += z * col_i
    right.push_back({AtomFamily::LinE, i, j, z});
    for (int rr = 0; rr < n; ++rr)
      m.at(rr, j - 1) = m.at(rr, j - 1) + z * m.at(rr, i - 1);
  };

  for (int p = 0; p < n - 1; ++p) {
    // gcd chain on column p, rows >= p
    for (;;) {
      int best = -1;
      int count = 0;
      for (int i = p; i < n; ++i) {
        if (is_zero(m.at(i, p))) continue;
        ++count;
        if (best < 0 || euclidean_size(m.at(i, p)) < euclidean_size(m.at(best, p)))
          best = i;
      }
      if (best < 0) fail("singular column during Euclidean elimination");
      if (count == 1 && best == p) break;
      if (count == 1) {
        lapply(p + 1, best + 1, one(r));
        continue;
      }
      for (int i = p; i < n; ++i) {
        if (i == best || is_zero(m.at(i, p))) continue;
        auto [q, rem] = euclidean_divmod(m.at(i, p), m.at(best, p));
        (void)rem;
        if (!is_zero(q)) lapply(i + 1, best + 1, neg(q));
      }
    }
    RElem d = m.at(p, p);
    auto dinv = unit_inverse(d);
    if (!dinv) fail("column gcd is not a unit; matrix cannot be in SL");
    for (int l = p + 1; l < n; ++l)
      if (!is_zero(m.at(p, l))) rapply(p + 1, l + 1, neg(*dinv * m.at(p, l)));
  }

  // diagonal sweep: diag(d, d^-1) on consecutive slots via Whitehead blocks
  for (int p = 0; p < n - 1; ++p) {
    RElem d = m.at(p, p);
    if (is_one(d)) continue;
    auto dinv = unit_inverse(d);
    if (!dinv) fail("non-unit diagonal after elimination");
    const RElem& u = *dinv;  // postmultiply by diag(u, u^-1) at (p, p+1)
    RElem ui = d;
    int i = p + 1, j = p + 2;
    rapply(i, j, u);
    rapply(j, i, neg(ui));
    rapply(i, j, u);
    rapply(i, j, neg(one(r)));
    rapply(j, i, one(r));
    rapply(i, j, neg(one(r)));
  }
  if (!is_identity(m)) fail("Euclidean elimination did not reach the identity");

  // (l_k ... l_1) a (r_1 ... r_m) = I  =>  a = l_1^-1 ... l_k^-1 r_m^-1 ... r_1^-1
  Word out{r, n, {}};
  for (const auto& g : left) out.atoms.push_back(atom_inverse(g));
  for (auto it = right.rbegin(); it != right.rend(); ++it)
    out.atoms.push_back(atom_inverse(*it));
  return simplify_word(std::move(out));
}

// ---- commutator splitting --------------------------------------------------------

namespace {

Mat commutator(const Mat& x, const Mat& y) {
  return mat_mul(mat_mul(x, y), mat_mul(inverse(x), inverse(y)));
}

RelWord conjugated_proof(const Mat& conj, const Word& base_word, const RingHom& emb) {
  Word lifted = word_map(emb, base_word);
  RelWord out{conj.ring(), conj.n(), std::nullopt, {}};
  for (const auto& atom : lifted.atoms) out.items.push_back({conj, atom});
  return out;
}

}  // namespace

Certificate commutator_split(const Mat& alphaX, const Mat& betaX, ReduceFamily family) {
  const RingPtr& A = alphaX.ring();
  if (A->kind != RingKind::Polynomial) fail("commutator_split expects matrices over R[X]");
  const RingPtr& R = A->base;
  if (!R->is_local()) fail("commutator_split needs a local base ring");
  if (!betaX.ring()->equal(*A) || betaX.n() != alphaX.n()) fail("subject mismatch");
  GroupKind g = reduce_group(family);
  if (auto rep = is_member(alphaX, g); !rep.ok) fail("alpha(X): " + rep.reason);
  if (auto rep = is_member(betaX, g); !rep.ok) fail("beta(X): " + rep.reason);

  RingHom at0 = RingHom::eval_variable(A, zero(R));
  RingHom emb = RingHom::inclusion(R, A);
  Mat alpha0 = hom_apply(at0, alphaX);
  Mat beta0 = hom_apply(at0, betaX);
  Mat alpha0A = hom_apply(emb, alpha0);
  Mat beta0A = hom_apply(emb, beta0);

  Mat s = mat_mul(alphaX, inverse(alpha0A));
  Mat t = mat_mul(betaX, inverse(beta0A));
  Mat sinv = inverse(s), tinv = inverse(t);

  Mat g2 = mat_mul(mat_mul(t, s), tinv);
  Mat g3 = mat_mul(t, s);
  const Mat& g4 = t;

  Mat c1 = alpha0;                             // conjugated by g2
  Mat c2 = mat_mul(beta0, inverse(alpha0));    // conjugated by g3
  Mat c3 = inverse(beta0);                     // conjugated by g4

  Certificate cert;
  cert.kind = "commutator-split";
  cert.group = g;
  cert.subjects = {alphaX, betaX};
  cert.factors.push_back({s, std::nullopt});
  cert.factors.push_back({mat_mul(mat_mul(t, sinv), tinv), std::nullopt});
  cert.factors.push_back(
      {mat_mul(mat_mul(g2, alpha0A), inverse(g2)),
       conjugated_proof(g2, reduce_local(c1, family), emb)});
  cert.factors.push_back(
      {mat_mul(mat_mul(g3, hom_apply(emb, c2)), inverse(g3)),
       conjugated_proof(g3, reduce_local(c2, family), emb)});
  cert.factors.push_back(
      {mat_mul(mat_mul(g4, hom_apply(emb, c3)), inverse(g4)),
       conjugated_proof(g4, reduce_local(c3, family), emb)});
  verify_certificate(cert);
  if (!cert.verified) fail("commutator_split produced a non-verifying certificate");
  return cert;
}

// ---- excision pipeline -------------------------------------------------------------

namespace {

Mat excision_lift(const Mat& sigma, const RingPtr& B) {
  const RingPtr& R = B->base;
  Mat out(B, sigma.n());
  for (int i = 0; i < sigma.n(); ++i)
    for (int j = 0; j < sigma.n(); ++j) {
      RElem d = (i == j) ? one(R) : zero(R);
      out.at(i, j) = make_pair(B, d, sigma.at(i, j) - d);
    }
  return out;
}

RelWord excision_descend(const Word& w, const RingPtr& B) {
  RingHom pi = RingHom::excision_retraction(B);
  RelWord rel = relativize(w, pi);
  RingHom f = RingHom::excision_sum(B);
  return word_map(f, rel);
}

}  // namespace

RelWord relativize_excision(const Mat& sigma, const Ideal& ideal, ReduceFamily family) {
  const RingPtr& R = sigma.ring();
  if (!R->is_local()) fail("relativize_excision needs a local ring");
  if (!ideal.ring->equal(*R)) fail("ideal from the wrong ring");
  if (!ideal_is_proper(ideal)) fail("ideal must be proper");
  if (auto rep = is_member(sigma, reduce_group(family), ideal); !rep.ok)
    fail("relativize_excision: " + rep.reason);

  RingPtr B = Ring::excision(R, ideal);
  Mat lifted = excision_lift(sigma, B);
  Word w = reduce_local(lifted, family);
  RelWord out = excision_descend(w, B);
  out.ideal = ideal;
  return out;
}

// ---- homotopy witnesses ---------------------------------------------------------

HomotopyWitness make_homotopy_witness(const Mat& gammaX) {
  const RingPtr& A = gammaX.ring();
  if (A->kind != RingKind::Polynomial) fail("homotopy witness must live over R[X]");
  const RingPtr& R = A->base;
  Mat at0 = hom_apply(RingHom::eval_variable(A, zero(R)), gammaX);
  if (!is_identity(at0)) fail("homotopy witness requires gamma(0) = I");
  Mat at1 = hom_apply(RingHom::eval_variable(A, one(R)), gammaX);
  return {gammaX, std::move(at1)};
}

HomotopyWitness graded_homotopy(const Mat& sigma, const Ideal& augmentation) {
  const RingPtr& A = sigma.ring();
  if (!augmentation.ring->equal(*A)) fail("augmentation ideal from the wrong ring");
  RingHom phi = RingHom::swan_weibel(A, "T");
  Mat sigmaT = hom_apply(phi, sigma);
  Mat at0 = hom_apply(RingHom::eval_variable(phi.codomain, zero(A)), sigmaT);
  if (!is_identity(at0))
    fail("sigma(0) != I: matrix is not congruent to I modulo the augmentation ideal");
  Mat at1 = hom_apply(RingHom::eval_variable(phi.codomain, one(A)), sigmaT);
  if (!(at1 == sigma)) fail("Swan-Weibel homotopy failed to return sigma at T = 1");
  return {std::move(sigmaT), sigma};
}

Certificate homotopy_commutator(const HomotopyWitness& witness, const Mat& beta) {
  const RingPtr& A = witness.gamma.ring();
  const RingPtr& R = A->base;
  Mat betaA = beta.ring()->equal(*A) ? beta : embed_mat(A, beta);
  if (betaA.n() != witness.gamma.n()) fail("dimension mismatch");

  Mat deltaX = commutator(witness.gamma, betaA);
  Mat delta0 = hom_apply(RingHom::eval_variable(A, zero(R)), deltaX);
  if (!is_identity(delta0)) fail("delta(0) != I");

  Mat target = commutator(embed_mat(A, witness.target), betaA);

  Certificate cert;
  cert.kind = "homotopy-commutator";
  cert.group = GroupKind::SL;
  cert.witness = witness.gamma;
  cert.subjects = {betaA, target};
  if (A->is_euclidean()) {
    cert.word = reduce_euclidean(target);
    cert.constructive = true;
  } else {
    cert.constructive = false;  // membership-level claim only
  }
  verify_certificate(cert);
  if (!cert.verified) fail("homotopy_commutator produced a non-verifying certificate");
  return cert;
}

// ---- orthogonal toolbox -----------------------------------------------------------

namespace {

void require_two_unit(const RingPtr& r) {
  if (!is_unit(from_int(r, 2))) fail("2 must be a unit in " + r->name());
}

// Right-action SL2 copy on hyperbolic blocks (a, b), 1-based block indices:
// e12(z) |-> o_{2a-1, 2b-1}(z), e21(z) |-> o_{2b-1, 2a-1}(z).
// The 6-atom Whitehead pattern then realizes D_a(u) D_b(u^-1).
Word hyperbolic_pair_word(const RElem& u, int block_a, int block_b, int n) {
  const RingPtr& r = u.ring();
  auto uinv = unit_inverse(u);
  if (!uinv) fail("hyperbolic pair needs a unit");
  int A = 2 * block_a - 1, B = 2 * block_b - 1;
  RElem l = one(r);
  Word w{r, n, {}};
  w.atoms.push_back({AtomFamily::OrthO, A, B, u});
  w.atoms.push_back({AtomFamily::OrthO, B, A, neg(*uinv)});
  w.atoms.push_back({AtomFamily::OrthO, A, B, u});
  w.atoms.push_back({AtomFamily::OrthO, A, B, neg(l)});
  w.atoms.push_back({AtomFamily::OrthO, B, A, l});
  w.atoms.push_back({AtomFamily::OrthO, A, B, neg(l)});
  return w;
}

// Left-action SL2 copy on blocks (1,2): e12(z) |-> o_23(z), e21(z) |-> o_32(z).
// Left multiplication composes in reverse, so the pattern built with u^-1
// realizes diag(u, u^-1, u, u^-1) ⊥ I = D_1(u) D_2(u).
Word hyperbolic_left_word(const RElem& u, int n) {
  const RingPtr& r = u.ring();
  auto uinv = unit_inverse(u);
  if (!uinv) fail("hyperbolic pair needs a unit");
  RElem l = one(r);
  Word w{r, n, {}};
  w.atoms.push_back({AtomFamily::OrthO, 2, 3, *uinv});
  w.atoms.push_back({AtomFamily::OrthO, 3, 2, neg(u)});
  w.atoms.push_back({AtomFamily::OrthO, 2, 3, *uinv});
  w.atoms.push_back({AtomFamily::OrthO, 2, 3, neg(l)});
  w.atoms.push_back({AtomFamily::OrthO, 3, 2, l});
  w.atoms.push_back({AtomFamily::OrthO, 2, 3, neg(l)});
  return w;
}

}  // namespace

Word whitehead_orth(const RElem& u, int m) {
  if (m < 2) fail("whitehead_orth needs m >= 2");
  if (!is_unit(u)) fail("whitehead_orth needs a unit");
  return hyperbolic_pair_word(u, 1, 2, 2 * m);
}

SODecomposition so_decompose_local(const Mat& a) {
  const RingPtr& r = a.ring();
  int n = a.n();
  if (n < 4 || n % 2 != 0) fail("so_decompose_local needs SO_2m with m >= 2");
  if (!r->is_local()) fail("so_decompose_local needs a local ring");
  require_two_unit(r);
  if (auto rep = is_member(a, GroupKind::SO); !rep.ok) fail("so_decompose_local: " + rep.reason);

  int m = n / 2;
  Mat beta = a;
  Word applied{r, n, {}};
  auto rapply = [&](int i, int j, const RElem& z) {
    GenAtom g{AtomFamily::OrthO, i, j, z};
    beta = mat_mul(beta, atom_matrix(g, n));
    applied.atoms.push_back(std::move(g));
  };

  std::vector<RElem> units;
  for (int off = 0; off + 2 < n; off += 2) {
    int P = off + 1;  // 1-based pivot column of this block
    // step 1: unit into the pivot coordinate of row `off`
    if (!is_unit(beta.at(off, off))) {
      int k = -1;
      for (int c = off; c < n; ++c)
        if (c != off + 1 && is_unit(beta.at(off, c))) {
          k = c;
          break;
        }
      if (k < 0) {
        if (!is_unit(beta.at(off, off + 1)))
          fail("first row of the block is not unimodular");
        // only the sigma-partner is a unit; bump it into column off+2
        rapply(off + 2, off + 3, one(r));
        if (!is_unit(beta.at(off, off + 2))) fail("pivot bump failed");
        k = off + 2;
      }
      rapply(k + 1, P, one(r));
      if (!is_unit(beta.at(off, off))) fail("pivot accumulation failed");
    }
    RElem u = beta.at(off, off);
    RElem uinv = *unit_inverse(u);
    // step 2: clear row `off` beyond the hyperbolic pair
    for (int c = off + 2; c < n; ++c)
      if (!is_zero(beta.at(off, c))) rapply(P, c + 1, neg(uinv * beta.at(off, c)));
    if (!is_zero(beta.at(off, off + 1)))
      fail("isotropy violated: sigma-partner entry did not vanish");
    // step 3: normalize the partner row, keeping u*e fixed
    if (!(beta.at(off + 1, off + 1) == uinv)) fail("hyperbolic pairing broke");
    for (int c = off + 2; c < n; ++c)
      if (!is_zero(beta.at(off + 1, c)))
        rapply(off + 2, c + 1, neg(u * beta.at(off + 1, c)));
    if (!is_zero(beta.at(off + 1, off)))
      fail("isotropy violated: partner row did not normalize");
    for (int i = off + 2; i < n; ++i)
      if (!is_zero(beta.at(i, off)) || !is_zero(beta.at(i, off + 1)))
        fail("block structure violated below the hyperbolic pair");
    units.push_back(u);
  }
  // final 2x2 block is diag(u_m, u_m^-1) over a local ring
  int off = n - 2;
  if (!is_zero(beta.at(off, off + 1)) || !is_zero(beta.at(off + 1, off)))
    fail("final SO_2 block is not diagonal");
  units.push_back(beta.at(off, off));
  if (!is_unit(units.back())) fail("final SO_2 unit is not invertible");

  // fold per-plane units into the first plane
  RElem total = one(r);
  for (const auto& u : units) total = total * u;
  Word fold{r, n, {}};
  for (int k = 2; k <= m; ++k) {
    auto ukinv = unit_inverse(units[k - 1]);
    fold = concat(fold, hyperbolic_pair_word(*ukinv, 1, k, n));
  }
  Word word = simplify_word(concat(fold, inverse_word(applied)));
  return {total, std::move(word)};
}

SquareClass spinor_norm(const Mat& a) { return {so_decompose_local(a).u}; }

bool is_square_unit(const RElem& u) {
  const RingPtr& r = u.ring();
  switch (r->kind) {
    case RingKind::Integers:
      return u.as_int() == 1;
    case RingKind::Rationals: {
      const Rat& q = u.as_rat();
      return q.num > 0 && is_perfect_square(q.num) && is_perfect_square(q.den);
    }
    case RingKind::LocalizedAtPrime: {
      const Rat& q = u.as_rat();
      if (q.num == 0 || q.num % r->n == 0) fail("square test needs a unit");
      if (r->n == 2) {
        // odd units: square iff 1 mod 8
        Int a = mod_floor(q.num, 8), s = mod_floor(q.den, 8);
        for (Int x = 1; x < 8; x += 2)
          if (mod_floor(x * s, 8) == a) return x == 1;
        return false;
      }
      // Euler criterion on the residue field
      Int p = r->n;
      RingPtr fp = Ring::prime_field(p);
      RElem res = from_int(fp, q.num) * *unit_inverse(from_int(fp, q.den));
      return is_one(pow_elem(res, (p - 1) / 2));
    }
    default: {
      if (r->is_finite() && r->cardinality() <= kSearchGuard) {
        for (Int i = 0; i < r->cardinality(); ++i) {
          RElem x = elem_at(r, i);
          if (x * x == u) return true;
        }
        return false;
      }
      throw unsupported_error("square class membership undecidable in " + r->name());
    }
  }
}

bool square_class_equal(const SquareClass& a, const SquareClass& b) {
  auto binv = unit_inverse(b.rep);
  if (!binv) fail("square class representative must be a unit");
  return is_square_unit(a.rep * *binv);
}

Mat reflection(const RingPtr& ring, const std::vector<RElem>& v) {
  int n = static_cast<int>(v.size());
  if (n % 2 != 0) fail("reflection needs even dimension");
  require_two_unit(ring);
  Mat phi = orthogonal_form(ring, n / 2);
  std::vector<RElem> vphi(n, zero(ring));  // row v * phi
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j) vphi[j] = vphi[j] + v[k] * phi.at(k, j);
  RElem bvv = zero(ring);
  for (int k = 0; k < n; ++k) bvv = bvv + vphi[k] * v[k];
  auto binv = unit_inverse(bvv);
  if (!binv) fail("reflection needs B(v,v) to be a unit");
  RElem c = from_int(ring, 2) * *binv;
  Mat t = identity(ring, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t.at(i, j) = t.at(i, j) - c * vphi[i] * v[j];
  return t;
}

Certificate square_in_eo(const Mat& a, const std::optional<Ideal>& rel) {
  const RingPtr& r = a.ring();
  int n = a.n();

  auto square_word_absolute = [&](const Mat& x) -> Word {
    SODecomposition dec = so_decompose_local(x);
    const RingPtr& ring = x.ring();
    RElem uinv = *unit_inverse(dec.u);
    // x^2 = D(u^2) * (D(u)^-1 eval(w) D(u)) * eval(w); conjugating an OrthO
    // atom by D(u) rescales its parameter by d_i^-1 d_j
    Word conj{ring, n, {}};
    for (const auto& g : dec.word.atoms) {
      RElem f = one(ring);
      if (g.i == 1) f = f * uinv;
      if (g.i == 2) f = f * dec.u;
      if (g.j == 1) f = f * dec.u;
      if (g.j == 2) f = f * uinv;
      conj.atoms.push_back({g.family, g.i, g.j, g.z * f});
    }
    Word dsq = concat(hyperbolic_pair_word(dec.u, 1, 2, n), hyperbolic_left_word(dec.u, n));
    return simplify_word(concat(dsq, concat(conj, dec.word)));
  };

  Certificate cert;
  cert.kind = "square-eo";
  cert.group = GroupKind::SO;
  cert.subjects = {a};
  if (!rel) {
    cert.word = square_word_absolute(a);
  } else {
    if (!rel->ring->equal(*r)) fail("ideal from the wrong ring");
    if (auto rep = is_member(a, GroupKind::SO, rel); !rep.ok) fail("square_in_eo: " + rep.reason);
    RingPtr B = Ring::excision(r, *rel);
    require_two_unit(B);
    Mat lifted = excision_lift(a, B);
    Word w = square_word_absolute(lifted);
    RelWord rw = excision_descend(w, B);
    rw.ideal = *rel;
    cert.rel = *rel;
    cert.relword = std::move(rw);
  }
  verify_certificate(cert);
  if (!cert.verified) fail("square_in_eo produced a non-verifying certificate");
  return cert;
}

// ---- certificate verification -----------------------------------------------------

bool verify_certificate(Certificate& cert) {
  cert.verified = false;
  if (cert.kind == "factorization") {
    if (cert.subjects.size() != 1 || !cert.word) fail("malformed factorization certificate");
    const Mat& subject = cert.subjects[0];
    if (!is_member(subject, cert.group).ok) return false;
    if (!(eval_word(*cert.word) == subject)) return false;
    cert.verified = true;
    return true;
  }
  if (cert.kind == "rel-factorization") {
    if (cert.subjects.size() != 1 || !cert.relword || !cert.rel)
      fail("malformed relative factorization certificate");
    const Mat& subject = cert.subjects[0];
    if (!is_member(subject, cert.group, cert.rel).ok) return false;
    if (!relword_params_ok(*cert.relword)) return false;
    if (!(eval_word(*cert.relword) == subject)) return false;
    cert.verified = true;
    return true;
  }
  if (cert.kind == "commutator-split") {
    if (cert.subjects.size() != 2 || cert.factors.size() != 5)
      fail("malformed commutator-split certificate");
    Mat prod = identity(cert.subjects[0].ring(), cert.subjects[0].n());
    for (const auto& f : cert.factors) prod = mat_mul(prod, f.value);
    Mat target = commutator(cert.subjects[0], cert.subjects[1]);
    if (!(prod == target)) return false;
    for (const auto& f : cert.factors) {
      if (!f.proof) continue;
      if (!relword_params_ok(*f.proof)) return false;
      if (!(eval_word(*f.proof) == f.value)) return false;
    }
    // the three correction factors must carry elementary proofs
    if (!cert.factors[2].proof || !cert.factors[3].proof || !cert.factors[4].proof)
      return false;
    cert.verified = true;
    return true;
  }
  if (cert.kind == "so-decompose" || cert.kind == "spinor") {
    if (cert.subjects.size() != 1 || !cert.word || !cert.unit)
      fail("malformed decomposition certificate");
    const Mat& subject = cert.subjects[0];
    if (!is_member(subject, GroupKind::SO).ok) return false;
    for (const auto& g : cert.word->atoms)
      if (g.family != AtomFamily::OrthO) return false;
    Mat d = hyperbolic_diag(subject.ring(), subject.n(), *cert.unit);
    if (!(mat_mul(d, eval_word(*cert.word)) == subject)) return false;
    cert.verified = true;
    return true;
  }
  if (cert.kind == "square-eo") {
    if (cert.subjects.size() != 1) fail("malformed square-eo certificate");
    const Mat& subject = cert.subjects[0];
    Mat target = mat_mul(subject, subject);
    if (cert.word) {
      if (!(eval_word(*cert.word) == target)) return false;
    } else if (cert.relword) {
      if (!relword_params_ok(*cert.relword)) return false;
      if (!(eval_word(*cert.relword) == target)) return false;
    } else {
      fail("square-eo certificate carries no proof");
    }
    cert.verified = true;
    return true;
  }
  if (cert.kind == "homotopy-commutator") {
    if (!cert.witness || cert.subjects.size() != 2)
      fail("malformed homotopy certificate");
    const Mat& gamma = *cert.witness;
    const RingPtr& A = gamma.ring();
    if (A->kind != RingKind::Polynomial) fail("homotopy witness must live over R[X]");
    const Mat& beta = cert.subjects[0];
    const Mat& target = cert.subjects[1];
    Mat g0 = hom_apply(RingHom::eval_variable(A, zero(A->base)), gamma);
    if (!is_identity(g0)) return false;
    Mat deltaX = commutator(gamma, beta);
    Mat d0 = hom_apply(RingHom::eval_variable(A, zero(A->base)), deltaX);
    if (!is_identity(d0)) return false;
    Mat g1 = hom_apply(RingHom::eval_variable(A, one(A->base)), gamma);
    Mat recomputed = commutator(embed_mat(A, g1), beta);
    if (!(recomputed == target)) return false;
    if (cert.word) {
      if (!(eval_word(*cert.word) == target)) return false;
    } else if (cert.constructive) {
      return false;  // constructive claims need a word
    }
    cert.verified = true;
    return true;
  }
  if (cert.kind == "graded-homotopy") {
    if (!cert.witness || cert.subjects.size() != 1) fail("malformed graded certificate");
    const Mat& gammaT = *cert.witness;
    const RingPtr& AT = gammaT.ring();
    if (AT->kind != RingKind::Polynomial) fail("graded witness must live over A[T]");
    Mat at0 = hom_apply(RingHom::eval_variable(AT, zero(AT->base)), gammaT);
    Mat at1 = hom_apply(RingHom::eval_variable(AT, one(AT->base)), gammaT);
    if (!is_identity(at0)) return false;
    if (!(at1 == cert.subjects[0])) return false;
    cert.verified = true;
    return true;
  }
  fail("unknown certificate kind: " + cert.kind);
}

}  // namespace exalg
