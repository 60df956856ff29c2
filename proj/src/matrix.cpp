#include "exalg/matrix.hpp"

namespace exalg {

namespace {
[[noreturn]] void fail(const std::string& msg) { throw contract_error(msg); }

void require_compatible(const Mat& a, const Mat& b) {
  if (a.n() != b.n()) fail("matrix dimension mismatch");
  if (!a.ring()->equal(*b.ring())) fail("matrix ring mismatch");
}
}  // namespace

bool Mat::operator==(const Mat& o) const {
  if (n_ != o.n_ || !ring_->equal(*o.ring_)) return false;
  for (size_t i = 0; i < a_.size(); ++i)
    if (!(a_[i] == o.a_[i])) return false;
  return true;
}

Mat identity(const RingPtr& r, int n) {
  Mat m(r, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = one(r);
  return m;
}

Mat mat_mul(const Mat& a, const Mat& b) {
  require_compatible(a, b);
  int n = a.n();
  Mat c(a.ring(), n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      const RElem& aik = a.at(i, k);
      if (is_zero(aik)) continue;
      for (int j = 0; j < n; ++j)
        c.at(i, j) = c.at(i, j) + aik * b.at(k, j);
    }
  return c;
}

Mat mat_add(const Mat& a, const Mat& b) {
  require_compatible(a, b);
  Mat c(a.ring(), a.n());
  for (int i = 0; i < a.n(); ++i)
    for (int j = 0; j < a.n(); ++j) c.at(i, j) = a.at(i, j) + b.at(i, j);
  return c;
}

Mat mat_sub(const Mat& a, const Mat& b) {
  require_compatible(a, b);
  Mat c(a.ring(), a.n());
  for (int i = 0; i < a.n(); ++i)
    for (int j = 0; j < a.n(); ++j) c.at(i, j) = a.at(i, j) - b.at(i, j);
  return c;
}

Mat transpose(const Mat& a) {
  Mat c(a.ring(), a.n());
  for (int i = 0; i < a.n(); ++i)
    for (int j = 0; j < a.n(); ++j) c.at(i, j) = a.at(j, i);
  return c;
}

Mat scalar_mul(const RElem& c, const Mat& a) {
  Mat out(a.ring(), a.n());
  for (int i = 0; i < a.n(); ++i)
    for (int j = 0; j < a.n(); ++j) out.at(i, j) = c * a.at(i, j);
  return out;
}

bool is_identity(const Mat& a) { return a == identity(a.ring(), a.n()); }

std::vector<RElem> row_mul(const std::vector<RElem>& v, const Mat& a) {
  if (static_cast<int>(v.size()) != a.n()) fail("row length mismatch");
  std::vector<RElem> out(v.size(), zero(a.ring()));
  for (int k = 0; k < a.n(); ++k) {
    if (is_zero(v[k])) continue;
    for (int j = 0; j < a.n(); ++j) out[j] = out[j] + v[k] * a.at(k, j);
  }
  return out;
}

std::vector<RElem> char_poly(const Mat& a) {
  const RingPtr& r = a.ring();
  int n = a.n();
  if (n == 0) return {one(r)};
  // Berkowitz iteration: extend the characteristic vector of the leading
  // principal minor one row/column at a time via Toeplitz products.
  std::vector<RElem> v = {one(r), neg(a.at(0, 0))};
  for (int k = 1; k < n; ++k) {
    // first column of the Toeplitz matrix:
    // [1, -a_kk, -(R C), -(R M C), -(R M^2 C), ...]
    std::vector<RElem> t;
    t.reserve(k + 2);
    t.push_back(one(r));
    t.push_back(neg(a.at(k, k)));
    std::vector<RElem> w(k);
    for (int i = 0; i < k; ++i) w[i] = a.at(i, k);  // C
    for (int step = 0; step < k; ++step) {
      RElem dot = zero(r);
      for (int i = 0; i < k; ++i) dot = dot + a.at(k, i) * w[i];  // R . w
      t.push_back(neg(dot));
      if (step + 1 < k) {
        std::vector<RElem> w2(k, zero(r));
        for (int i = 0; i < k; ++i)
          for (int j = 0; j < k; ++j) w2[i] = w2[i] + a.at(i, j) * w[j];  // M . w
        w = std::move(w2);
      }
    }
    std::vector<RElem> v2(k + 2, zero(r));
    for (int i = 0; i < k + 2; ++i)
      for (int j = 0; j < static_cast<int>(v.size()); ++j)
        if (i - j >= 0 && i - j < static_cast<int>(t.size()))
          v2[i] = v2[i] + t[i - j] * v[j];
    v = std::move(v2);
  }
  return v;  // det(lambda I - A) = sum v[i] lambda^{n-i}
}

RElem det(const Mat& a) {
  const RingPtr& r = a.ring();
  int n = a.n();
  if (n == 0) return one(r);
  std::vector<RElem> v = char_poly(a);
  RElem c = v.back();  // det(-A)
  return (n % 2 == 0) ? c : neg(c);
}

Mat inverse(const Mat& a) {
  const RingPtr& r = a.ring();
  int n = a.n();
  std::vector<RElem> v = char_poly(a);
  RElem d = (n % 2 == 0) ? v[n] : neg(v[n]);
  auto dinv = unit_inverse(d);
  if (!dinv) fail("matrix is not invertible: determinant is not a unit");
  // Cayley-Hamilton: A (A^{n-1} + v1 A^{n-2} + ... + v_{n-1} I) = -v_n I
  Mat b = identity(r, n);
  for (int k = 1; k < n; ++k) {
    b = mat_mul(a, b);
    for (int i = 0; i < n; ++i) b.at(i, i) = b.at(i, i) + v[k];
  }
  // A B = -v_n I with v_n = (-1)^n det, so the inverse is (-1)^{n+1} d^{-1} B.
  RElem scale = (n % 2 == 0) ? neg(*dinv) : *dinv;
  return scalar_mul(scale, b);
}

Mat mat_pow(const Mat& a, const Int& e) {
  if (e < 0) fail("mat_pow: negative exponent");
  Mat acc = identity(a.ring(), a.n());
  Mat base = a;
  Int k = e;
  while (k > 0) {
    if (k % 2 == 1) acc = mat_mul(acc, base);
    base = mat_mul(base, base);
    k /= 2;
  }
  return acc;
}

Mat hom_apply(const RingHom& h, const Mat& a) {
  Mat out(h.codomain, a.n());
  for (int i = 0; i < a.n(); ++i)
    for (int j = 0; j < a.n(); ++j) out.at(i, j) = hom_apply(h, a.at(i, j));
  return out;
}

Mat embed_mat(const RingPtr& target, const Mat& a) {
  Mat out(target, a.n());
  for (int i = 0; i < a.n(); ++i)
    for (int j = 0; j < a.n(); ++j) out.at(i, j) = embed(target, a.at(i, j));
  return out;
}

int sigma_index(int i) { return (i % 2 == 1) ? i + 1 : i - 1; }

Mat symplectic_form(const RingPtr& r, int m) {
  Mat f(r, 2 * m);
  for (int b = 0; b < m; ++b) {
    f.at(2 * b, 2 * b + 1) = one(r);
    f.at(2 * b + 1, 2 * b) = neg(one(r));
  }
  return f;
}

Mat orthogonal_form(const RingPtr& r, int m) {
  Mat f(r, 2 * m);
  for (int b = 0; b < m; ++b) {
    f.at(2 * b, 2 * b + 1) = one(r);
    f.at(2 * b + 1, 2 * b) = one(r);
  }
  return f;
}

Mat hyperbolic_diag(const RingPtr& r, int n, const RElem& u) {
  auto ui = unit_inverse(u);
  if (!ui) fail("hyperbolic_diag needs a unit");
  Mat d = identity(r, n);
  d.at(0, 0) = u;
  d.at(1, 1) = *ui;
  return d;
}

std::string group_name(GroupKind g) {
  switch (g) {
    case GroupKind::SL: return "SL";
    case GroupKind::Sp: return "Sp";
    case GroupKind::SO: return "SO";
    case GroupKind::O: return "O";
  }
  return "?";
}

GroupKind group_from_name(const std::string& s) {
  if (s == "SL" || s == "sl") return GroupKind::SL;
  if (s == "Sp" || s == "sp") return GroupKind::Sp;
  if (s == "SO" || s == "so") return GroupKind::SO;
  if (s == "O" || s == "o") return GroupKind::O;
  fail("unknown group: " + s);
}

MemberReport is_member(const Mat& a, GroupKind g, const std::optional<Ideal>& rel) {
  const RingPtr& r = a.ring();
  int n = a.n();
  if (g != GroupKind::SL) {
    if (n % 2 != 0) return {false, "form groups need even dimension"};
    Mat form = (g == GroupKind::Sp) ? symplectic_form(r, n / 2) : orthogonal_form(r, n / 2);
    Mat lhs = mat_mul(mat_mul(transpose(a), form), a);
    if (!(lhs == form)) return {false, "matrix does not preserve the standard form"};
  }
  if (g == GroupKind::SL || g == GroupKind::SO) {
    if (!is_one(det(a))) return {false, "determinant is not 1"};
  }
  if (g == GroupKind::O) {
    // invertibility is implied by the form equation (the form is invertible)
  }
  if (rel) {
    Mat d = mat_sub(a, identity(r, n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (!ideal_contains(*rel, d.at(i, j)))
          return {false, "matrix is not congruent to the identity modulo the ideal"};
  }
  return {true, ""};
}

}  // namespace exalg
