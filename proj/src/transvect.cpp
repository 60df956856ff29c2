#include "exalg/transvect.hpp"

namespace exalg {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw contract_error(msg); }

std::vector<RElem> col_mul(const Mat& m, const std::vector<RElem>& p) {
  std::vector<RElem> out(m.n(), zero(m.ring()));
  for (int i = 0; i < m.n(); ++i)
    for (int j = 0; j < m.n(); ++j) out[i] = out[i] + m.at(i, j) * p[j];
  return out;
}

std::vector<RElem> row_times(const std::vector<RElem>& f, const Mat& m) {
  std::vector<RElem> out(m.n(), zero(m.ring()));
  for (int k = 0; k < m.n(); ++k)
    for (int j = 0; j < m.n(); ++j) out[j] = out[j] + f[k] * m.at(k, j);
  return out;
}

RElem dot(const std::vector<RElem>& a, const std::vector<RElem>& b) {
  RElem acc = zero(a[0].ring());
  for (size_t i = 0; i < a.size(); ++i) acc = acc + a[i] * b[i];
  return acc;
}

// rank-one update T += c * col * row
void add_outer(Mat& t, const std::vector<RElem>& col, const std::vector<RElem>& row) {
  for (int i = 0; i < t.n(); ++i) {
    if (is_zero(col[i])) continue;
    for (int j = 0; j < t.n(); ++j) t.at(i, j) = t.at(i, j) + col[i] * row[j];
  }
}

}  // namespace

ProjModule make_proj_module(RingPtr ring, Mat idempotent, ModuleForm form,
                            std::optional<Mat> gram) {
  if (!idempotent.ring()->equal(*ring)) fail("idempotent over the wrong ring");
  int N = idempotent.n();
  if (!(mat_mul(idempotent, idempotent) == idempotent)) fail("matrix is not idempotent");
  if (form != ModuleForm::None) {
    if (!gram) fail("symplectic/orthogonal modules need a Gram matrix");
    if (gram->n() != N || !gram->ring()->equal(*ring)) fail("Gram matrix mismatch");
    for (int i = 0; i < N; ++i) {
      for (int j = 0; j < N; ++j) {
        if (form == ModuleForm::Symplectic && !(gram->at(i, j) == neg(gram->at(j, i))))
          fail("symplectic Gram matrix must be alternating");
        if (form == ModuleForm::Orthogonal && !(gram->at(i, j) == gram->at(j, i)))
          fail("orthogonal Gram matrix must be symmetric");
      }
      if (form == ModuleForm::Symplectic && !is_zero(gram->at(i, i)))
        fail("symplectic Gram matrix must vanish on the diagonal");
    }
    // nondegeneracy on the image: extend by the standard form on ker E
    Mat e = idempotent;
    Mat comp = mat_sub(identity(ring, N), e);
    Mat ext = mat_add(mat_mul(mat_mul(transpose(e), *gram), e),
                      mat_mul(transpose(comp), comp));
    if (!is_unit(det(ext))) fail("Gram matrix is degenerate on the image");
  } else if (gram) {
    fail("a Gram matrix requires a symplectic or orthogonal module");
  }
  ProjModule m;
  m.ring = std::move(ring);
  m.N = N;
  m.idempotent = std::move(idempotent);
  m.form = form;
  m.gram = std::move(gram);
  return m;
}

bool module_contains(const ProjModule& m, const std::vector<RElem>& p) {
  if (static_cast<int>(p.size()) != m.N) return false;
  std::vector<RElem> ep = col_mul(m.idempotent, p);
  for (int i = 0; i < m.N; ++i)
    if (!(ep[i] == p[i])) return false;
  return true;
}

bool functional_on(const ProjModule& m, const std::vector<RElem>& f) {
  if (static_cast<int>(f.size()) != m.N) return false;
  std::vector<RElem> fe = row_times(f, m.idempotent);
  for (int i = 0; i < m.N; ++i)
    if (!(fe[i] == f[i])) return false;
  return true;
}

RElem form_value(const ProjModule& m, const std::vector<RElem>& x, const std::vector<RElem>& y) {
  if (!m.gram) fail("module carries no form");
  return dot(x, col_mul(*m.gram, y));
}

bool module_elem_unimodular(const ProjModule& m, const std::vector<RElem>& p) {
  if (!module_contains(m, p)) fail("element is not in the module");
  const RingPtr& r = m.ring;
  const std::vector<RElem>& w = p;  // E p = p already
  if (r->is_euclidean()) {
    RElem g = zero(r);
    for (const auto& e : w) g = euclidean_gcd(g, e);
    return is_unit(g);
  }
  if (r->is_local()) {
    for (const auto& e : w)
      if (is_unit(e)) return true;
    return false;
  }
  if (r->is_finite() && r->cardinality() <= 4096) {
    // value closure of sums r_k w_k
    std::vector<RElem> reach = {zero(r)};
    auto seen = [&](const RElem& x) {
      for (const auto& y : reach)
        if (y == x) return true;
      return false;
    };
    for (const auto& e : w) {
      if (is_zero(e)) continue;
      std::vector<RElem> grow = reach;
      for (const auto& base : reach)
        for (Int i = 0; i < r->cardinality(); ++i) {
          RElem val = base + elem_at(r, i) * e;
          if (!seen(val)) {
            grow.push_back(val);
            if (is_one(val)) return true;
          }
          if (!grow.empty() && grow.size() > 4096) break;
        }
      reach = std::move(grow);
    }
    for (const auto& y : reach)
      if (is_one(y)) return true;
    return false;
  }
  throw unsupported_error("order-ideal membership undecidable over " + r->name());
}

namespace {

Mat transvection_matrix(const ProjModule& m, const TransvectionSpec& spec, bool inverse) {
  const RingPtr& r = m.ring;
  Mat t = identity(r, m.N);
  RElem sign = inverse ? neg(one(r)) : one(r);
  switch (spec.kind) {
    case TransvectionSpec::Kind::Linear: {
      const auto& q = spec.q_or_u;
      const auto& f = spec.f_or_v;
      if (!module_contains(m, q)) fail("transvection: q is not in the module");
      if (!functional_on(m, f)) fail("transvection: f is not a functional on the module");
      if (!is_zero(dot(f, q))) fail("transvection requires f(q) = 0");
      std::vector<RElem> sq = q;
      for (auto& e : sq) e = sign * e;
      add_outer(t, sq, f);
      return t;
    }
    case TransvectionSpec::Kind::Symplectic: {
      const auto& u = spec.q_or_u;
      const auto& v = spec.f_or_v;
      if (m.form != ModuleForm::Symplectic) fail("module is not symplectic");
      if (!module_contains(m, u) || !module_contains(m, v)) fail("u, v must be in the module");
      if (!is_zero(form_value(m, u, v))) fail("symplectic transvection requires <u,v> = 0");
      // sigma(p) = p + <u,p>v + <v,p>u + <u,p>u; inverse flips all three signs
      std::vector<RElem> ug = row_times(u, *m.gram);  // <u, .>
      std::vector<RElem> vg = row_times(v, *m.gram);
      std::vector<RElem> vu(u.size());
      for (size_t i = 0; i < u.size(); ++i) vu[i] = sign * (v[i] + u[i]);
      add_outer(t, vu, ug);
      std::vector<RElem> su(u.size());
      for (size_t i = 0; i < u.size(); ++i) su[i] = sign * u[i];
      add_outer(t, su, vg);
      return t;
    }
    case TransvectionSpec::Kind::Orthogonal: {
      const auto& u = spec.q_or_u;
      const auto& v = spec.f_or_v;
      if (m.form != ModuleForm::Orthogonal) fail("module is not orthogonal");
      if (!module_contains(m, u) || !module_contains(m, v)) fail("u, v must be in the module");
      if (!is_zero(form_value(m, u, v)) || !is_zero(form_value(m, u, u)) ||
          !is_zero(form_value(m, v, v)))
        fail("orthogonal transvection requires isotropic orthogonal u, v");
      // tau(p) = p - <u,p>v + <v,p>u; inverse swaps the signs
      std::vector<RElem> ug = row_times(u, *m.gram);
      std::vector<RElem> vg = row_times(v, *m.gram);
      std::vector<RElem> mv(v.size());
      for (size_t i = 0; i < v.size(); ++i) mv[i] = neg(sign) * v[i];
      add_outer(t, mv, ug);
      std::vector<RElem> pu(u.size());
      for (size_t i = 0; i < u.size(); ++i) pu[i] = sign * u[i];
      add_outer(t, pu, vg);
      return t;
    }
  }
  fail("bad transvection kind");
}

void check_isometry(const ProjModule& m, const Mat& t) {
  if (m.form == ModuleForm::None) return;
  Mat lhs = mat_mul(mat_mul(transpose(t), *m.gram), t);
  if (!(lhs == *m.gram)) fail("transvection failed the exact isometry predicate");
}

}  // namespace

Mat make_transvection(const ProjModule& m, const TransvectionSpec& spec) {
  Mat t = transvection_matrix(m, spec, false);
  check_isometry(m, t);
  return t;
}

Mat make_transvection_inverse(const ProjModule& m, const TransvectionSpec& spec) {
  Mat t = transvection_matrix(m, spec, true);
  check_isometry(m, t);
  return t;
}

Mat extension_gram(const ProjModule& m, ExtensionKind kind) {
  if (kind == ExtensionKind::DserLinear) fail("linear extensions carry no form");
  if (!m.gram) fail("pair extensions need a module form");
  const RingPtr& r = m.ring;
  int N = m.N;
  Mat g(r, N + 2);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) g.at(i, j) = m.gram->at(i, j);
  // appended hyperbolic plane on coordinates (b, a)
  g.at(N, N + 1) = one(r);
  g.at(N + 1, N) = (kind == ExtensionKind::SymplecticPair) ? neg(one(r)) : one(r);
  return g;
}

ExtensionResult elementary_on_extension(const ProjModule& m, ExtensionKind kind, int which,
                                        const std::vector<RElem>& q) {
  const RingPtr& r = m.ring;
  int N = m.N;
  if (which != 1 && which != 2) fail("which-of-two must be 1 or 2");

  if (kind == ExtensionKind::DserLinear) {
    Mat t = identity(r, N + 1);
    if (which == 1) {
      // (p, a) |-> (p + a x, a)
      if (!module_contains(m, q)) fail("x must be in the module");
      for (int i = 0; i < N; ++i) t.at(i, N) = q[i];
    } else {
      // (p, a) |-> (p, a + f(p)) with f = q^t E
      std::vector<RElem> f = row_times(q, m.idempotent);
      for (int j = 0; j < N; ++j) t.at(N, j) = f[j];
    }
    return {std::move(t), true, ""};
  }

  if ((kind == ExtensionKind::SymplecticPair && m.form != ModuleForm::Symplectic) ||
      (kind == ExtensionKind::OrthogonalPair && m.form != ModuleForm::Orthogonal))
    fail("extension kind does not match the module form");
  if (!module_contains(m, q)) fail("q must be in the module");

  std::vector<RElem> gq = col_mul(*m.gram, q);  // <p, q> = p . gq
  Mat t = identity(r, N + 2);
  int B = N, A = N + 1;
  if (kind == ExtensionKind::SymplecticPair) {
    if (which == 1) {
      // (p,b,a) |-> (p + a q, b - <p,q> + a, a)
      for (int i = 0; i < N; ++i) t.at(i, A) = q[i];
      for (int j = 0; j < N; ++j) t.at(B, j) = neg(gq[j]);
      t.at(B, A) = one(r);
    } else {
      // (p,b,a) |-> (p + b q, b, a - b + <p,q>)
      for (int i = 0; i < N; ++i) t.at(i, B) = q[i];
      for (int j = 0; j < N; ++j) t.at(A, j) = gq[j];
      t.at(A, B) = neg(one(r));
    }
  } else {
    if (which == 1) {
      // (p,b,a) |-> (p - a q, b + <p,q>, a)
      for (int i = 0; i < N; ++i) t.at(i, A) = neg(q[i]);
      for (int j = 0; j < N; ++j) t.at(B, j) = gq[j];
    } else {
      // (p,b,a) |-> (p - b q, b, a - <p,q>)
      for (int i = 0; i < N; ++i) t.at(i, B) = neg(q[i]);
      for (int j = 0; j < N; ++j) t.at(A, j) = neg(gq[j]);
    }
  }

  Mat g = extension_gram(m, kind);
  Mat lhs = mat_mul(mat_mul(transpose(t), g), t);
  if (lhs == g) return {std::move(t), true, ""};

  std::string diag = "formula/predicate mismatch: the mapped automorphism does not "
                     "preserve the extended form";
  RElem qq = form_value(m, q, q);
  if (!is_zero(qq))
    diag += " (q is not isotropic: <q,q> = " + to_string(qq) + ")";
  return {std::move(t), false, std::move(diag)};
}

}  // namespace exalg
