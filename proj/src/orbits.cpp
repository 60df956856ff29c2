#include "exalg/orbits.hpp"

#include <algorithm>
#include <atomic>
#include <map>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace exalg {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw contract_error(msg); }

constexpr std::uint64_t kRowGuard = 10'000'000;  // |R|^n ceiling

std::uint64_t checked_pow(long s, int n) {
  std::uint64_t acc = 1;
  for (int i = 0; i < n; ++i) {
    acc *= static_cast<std::uint64_t>(s);
    if (acc > kRowGuard) fail("row space exceeds the enumeration guard");
  }
  return acc;
}

}  // namespace

FiniteRingEnum::FiniteRingEnum(RingPtr ring) : ring_(std::move(ring)) {
  if (!ring_->is_finite()) throw unsupported_error("ring is not finite: " + ring_->name());
  Int sz = ring_->cardinality();
  if (sz > 100000) throw unsupported_error("ring too large to tabulate");
  long s = sz.convert_to<long>();
  elems_.reserve(s);
  for (long i = 0; i < s; ++i) elems_.push_back(elem_at(ring_, i));
  add_.resize(s * s);
  mul_.resize(s * s);
  neg_.resize(s);
  unit_.resize(s);
  for (long a = 0; a < s; ++a) {
    neg_[a] = index_of(exalg::neg(elems_[a])).convert_to<long>();
    unit_[a] = is_unit(elems_[a]) ? 1 : 0;
    for (long b = 0; b < s; ++b) {
      add_[a * s + b] = index_of(elems_[a] + elems_[b]).convert_to<long>();
      mul_[a * s + b] = index_of(elems_[a] * elems_[b]).convert_to<long>();
    }
  }
}

long FiniteRingEnum::index(const RElem& e) const {
  return index_of(e).convert_to<long>();
}

std::vector<RElem> decode_row(const FiniteRingEnum& R, int n, RowCode code) {
  std::vector<RElem> row;
  row.reserve(n);
  auto s = static_cast<std::uint64_t>(R.size());
  for (int k = 0; k < n; ++k) {
    row.push_back(R.elem(static_cast<long>(code % s)));
    code /= s;
  }
  return row;
}

RowCode encode_row(const FiniteRingEnum& R, const std::vector<RElem>& row) {
  RowCode code = 0;
  auto s = static_cast<std::uint64_t>(R.size());
  for (size_t k = row.size(); k-- > 0;) code = code * s + static_cast<RowCode>(R.index(row[k]));
  return code;
}

// ---- unimodular row enumeration -----------------------------------------------

namespace {

void decode_digits(long s, int n, RowCode code, long* out) {
  auto su = static_cast<std::uint64_t>(s);
  for (int k = 0; k < n; ++k) {
    out[k] = static_cast<long>(code % su);
    code /= su;
  }
}

// The values sum r_k v_k form the ideal generated by the digits; close the
// reachable-value set and ask whether 1 is in it.
bool unimodular_by_closure(const FiniteRingEnum& R, const long* digits, int n,
                           std::vector<char>& scratch) {
  long s = R.size();
  std::fill(scratch.begin(), scratch.end(), 0);
  scratch[0] = 1;
  std::vector<long> work = {0};
  for (int k = 0; k < n; ++k) {
    long v = digits[k];
    if (v == 0) continue;
    std::vector<long> grow = work;
    for (long base : work) {
      for (long r = 1; r < s; ++r) {
        long val = R.add(base, R.mul(r, v));
        if (!scratch[val]) {
          scratch[val] = 1;
          grow.push_back(val);
        }
      }
    }
    work = std::move(grow);
    if (scratch[R.index(one(R.ring()))]) return true;
  }
  return scratch[R.index(one(R.ring()))] != 0;
}

}  // namespace

std::vector<RowCode> enum_um(int n, const FiniteRingEnum& R, const std::optional<Ideal>& rel) {
  long s = R.size();
  std::uint64_t total = checked_pow(s, n);
  long one_idx = R.index(one(R.ring()));

  std::vector<char> in_ideal;
  std::vector<char> shifted_in_ideal;  // membership of (x - 1)
  if (rel) {
    in_ideal.resize(s);
    shifted_in_ideal.resize(s);
    for (long i = 0; i < s; ++i) {
      in_ideal[i] = ideal_contains(*rel, R.elem(i)) ? 1 : 0;
      shifted_in_ideal[i] = ideal_contains(*rel, R.elem(i) - one(R.ring())) ? 1 : 0;
    }
  }

  std::vector<std::vector<RowCode>> chunks;
#ifdef _OPENMP
  int threads = omp_get_max_threads();
#else
  int threads = 1;
#endif
  chunks.resize(threads);

#ifdef _OPENMP
#pragma omp parallel num_threads(threads)
#endif
  {
#ifdef _OPENMP
    int tid = omp_get_thread_num();
#else
    int tid = 0;
#endif
    std::vector<char> scratch(s);
    std::vector<long> digits(n);
    auto& local = chunks[tid];
#ifdef _OPENMP
#pragma omp for schedule(static)
#endif
    for (std::int64_t code = 0; code < static_cast<std::int64_t>(total); ++code) {
      decode_digits(s, n, static_cast<RowCode>(code), digits.data());
      if (rel) {
        if (!shifted_in_ideal[digits[0]]) continue;
        bool ok = true;
        for (int k = 1; k < n; ++k)
          if (!in_ideal[digits[k]]) {
            ok = false;
            break;
          }
        if (!ok) continue;
      }
      if (unimodular_by_closure(R, digits.data(), n, scratch))
        local.push_back(static_cast<RowCode>(code));
    }
  }
  std::vector<RowCode> out;
  for (auto& c : chunks) out.insert(out.end(), c.begin(), c.end());
  std::sort(out.begin(), out.end());
  (void)one_idx;
  return out;
}

std::vector<RowCode> enum_um_serial(int n, const FiniteRingEnum& R,
                                    const std::optional<Ideal>& rel) {
  long s = R.size();
  std::uint64_t total = checked_pow(s, n);
  std::uint64_t coeff_total = checked_pow(s, n);
  const RingPtr& ring = R.ring();
  std::vector<RowCode> out;
  for (RowCode code = 0; code < total; ++code) {
    std::vector<RElem> row = decode_row(R, n, code);
    if (rel) {
      if (!ideal_contains(*rel, row[0] - one(ring))) continue;
      bool ok = true;
      for (int k = 1; k < n; ++k)
        if (!ideal_contains(*rel, row[k])) {
          ok = false;
          break;
        }
      if (!ok) continue;
    }
    // brute-force coefficient search: some combination equals 1
    bool uni = false;
    for (RowCode cc = 0; cc < coeff_total && !uni; ++cc) {
      std::vector<RElem> coef = decode_row(R, n, cc);
      RElem acc = zero(ring);
      for (int k = 0; k < n; ++k) acc = acc + coef[k] * row[k];
      uni = is_one(acc);
    }
    if (uni) out.push_back(code);
  }
  return out;
}

// ---- orbit closure --------------------------------------------------------------

namespace {

// A generator i s a dense n x n matrix of ring-element indices.
struct IdxMat {
  int n;
  std::vector<long> a;
  long at(int i, int j) const { return a[i * n + j]; }
};

IdxMat to_idx(const FiniteRingEnum& R, const Mat& m) {
  IdxMat out{m.n(), {}};
  out.a.reserve(m.n() * m.n());
  for (int i = 0; i < m.n(); ++i)
    for (int j = 0; j < m.n(); ++j) out.a.push_back(R.index(m.at(i, j)));
  return out;
}

RowCode apply_idx(const FiniteRingEnum& R, int n, RowCode code, const IdxMat& g) {
  long s = R.size();
  long digits[16];
  decode_digits(s, n, code, digits);
  long zero_idx = R.index(zero(R.ring()));
  RowCode out = 0;
  std::uint64_t weight = 1;
  for (int j = 0; j < n; ++j) {
    long acc = zero_idx;
    for (int k = 0; k < n; ++k) {
      long v = digits[k];
      if (v == zero_idx) continue;
      acc = R.add(acc, R.mul(v, g.at(k, j)));
    }
    out += weight * static_cast<std::uint64_t>(acc);
    weight *= static_cast<std::uint64_t>(s);
  }
  return out;
}

std::vector<std::pair<int, int>> family_pairs(int n, OrbitFamily family) {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      if (i == j) continue;
      if (family == OrbitFamily::Orthogonal && i == sigma_index(j)) continue;
      pairs.push_back({i, j});
    }
  return pairs;
}

AtomFamily orbit_atom_family(OrbitFamily f) {
  switch (f) {
    case OrbitFamily::Linear: return AtomFamily::LinE;
    case OrbitFamily::Symplectic: return AtomFamily::SpSE;
    case OrbitFamily::Orthogonal: return AtomFamily::OrthO;
  }
  return AtomFamily::LinE;
}

// Generator matrices for the absolute or relative elementary action. In the
// relative case: atoms with ideal parameters plus their conjugates by single
// atoms with arbitrary parameters (these generate E_n(R,I) for n >= 3).
std::vector<Mat> generator_matrices(int n, const FiniteRingEnum& R, OrbitFamily family,
                                    const std::optional<Ideal>& rel) {
  const RingPtr& ring = R.ring();
  AtomFamily fam = orbit_atom_family(family);
  auto pairs = family_pairs(n, family);

  std::vector<RElem> params;
  for (long i = 0; i < R.size(); ++i) {
    const RElem& e = R.elem(i);
    if (is_zero(e)) continue;
    if (rel && !ideal_contains(*rel, e)) continue;
    params.push_back(e);
  }

  std::vector<Mat> gens;
  for (auto [i, j] : pairs)
    for (const auto& z : params) gens.push_back(atom_matrix({fam, i, j, z}, n));

  if (rel) {
    for (auto [i, j] : pairs) {
      for (long pi = 0; pi < R.size(); ++pi) {
        const RElem& p = R.elem(pi);
        if (is_zero(p)) continue;
        Mat g = atom_matrix({fam, i, j, p}, n);
        Mat ginv = atom_matrix({fam, i, j, neg(p)}, n);
        for (auto [a, b] : pairs)
          for (const auto& z : params) {
            Mat core = atom_matrix({fam, a, b, z}, n);
            gens.push_back(mat_mul(mat_mul(g, core), ginv));
          }
      }
    }
  }
  return gens;
}

OrbitTable assemble(int n, std::vector<RowCode> rows, std::vector<int> orbit_of) {
  OrbitTable t;
  t.n = n;
  t.rows = std::move(rows);
  t.orbit_of = std::move(orbit_of);
  int count = 0;
  for (int id : t.orbit_of) count = std::max(count, id + 1);
  t.reps.assign(count, ~RowCode{0});
  t.sizes.assign(count, 0);
  for (size_t k = 0; k < t.rows.size(); ++k) {
    int id = t.orbit_of[k];
    t.sizes[id]++;
    t.reps[id] = std::min(t.reps[id], t.rows[k]);
  }
  return t;
}

}  // namespace

int OrbitTable::orbit_of_code(RowCode c) const {
  auto it = std::lower_bound(rows.begin(), rows.end(), c);
  if (it == rows.end() || *it != c) fail("row is not in the orbit table");
  return orbit_of[it - rows.begin()];
}

OrbitTable orbit_bfs(const std::vector<RowCode>& rows, int n, const FiniteRingEnum& R,
                     OrbitFamily family, const std::optional<Ideal>& rel) {
  if (n > 16) fail("row length exceeds the kernel limit");
  long s = R.size();
  std::uint64_t space = checked_pow(s, n);
  std::vector<IdxMat> gens;
  for (const auto& g : generator_matrices(n, R, family, rel)) gens.push_back(to_idx(R, g));

  std::vector<std::atomic<std::uint64_t>> visited((space + 63) / 64);
  for (auto& w : visited) w.store(0, std::memory_order_relaxed);
  auto test_and_set = [&](RowCode c) {
    std::uint64_t mask = 1ULL << (c % 64);
    return (visited[c / 64].fetch_or(mask, std::memory_order_relaxed) & mask) != 0;
  };

  std::vector<int> orbit_of(rows.size(), -1);
  auto row_pos = [&](RowCode c) {
    auto it = std::lower_bound(rows.begin(), rows.end(), c);
    if (it == rows.end() || *it != c) fail("orbit escaped the row list");
    return static_cast<size_t>(it - rows.begin());
  };

  int next_id = 0;
  for (size_t seed = 0; seed < rows.size(); ++seed) {
    if (orbit_of[seed] >= 0) continue;
    int id = next_id++;
    std::vector<RowCode> frontier = {rows[seed]};
    test_and_set(rows[seed]);
    orbit_of[seed] = id;
    while (!frontier.empty()) {
      std::vector<std::vector<RowCode>> local;
#ifdef _OPENMP
      int threads = omp_get_max_threads();
#else
      int threads = 1;
#endif
      local.resize(threads);
#ifdef _OPENMP
#pragma omp parallel num_threads(threads)
#endif
      {
#ifdef _OPENMP
        int tid = omp_get_thread_num();
#else
        int tid = 0;
#endif
        auto& mine = local[tid];
#ifdef _OPENMP
#pragma omp for schedule(dynamic, 16)
#endif
        for (std::int64_t f = 0; f < static_cast<std::int64_t>(frontier.size()); ++f) {
          for (const auto& g : gens) {
            RowCode img = apply_idx(R, n, frontier[f], g);
            if (!test_and_set(img)) mine.push_back(img);
          }
        }
      }
      std::vector<RowCode> next;
      for (auto& m : local) next.insert(next.end(), m.begin(), m.end());
      for (RowCode c : next) orbit_of[row_pos(c)] = id;
      frontier = std::move(next);
    }
  }
  return assemble(n, rows, std::move(orbit_of));
}

OrbitTable orbit_bfs_serial(const std::vector<RowCode>& rows, int n,
                            const FiniteRingEnum& R, OrbitFamily family,
                            const std::optional<Ideal>& rel) {
  auto gens = generator_matrices(n, R, family, rel);
  std::map<RowCode, int> orbit_of;
  int next_id = 0;
  for (RowCode seed : rows) {
    if (orbit_of.count(seed)) continue;
    int id = next_id++;
    std::vector<RowCode> stack = {seed};
    orbit_of[seed] = id;
    while (!stack.empty()) {
      RowCode cur = stack.back();
      stack.pop_back();
      std::vector<RElem> row = decode_row(R, n, cur);
      for (const auto& g : gens) {
        RowCode img = encode_row(R, row_mul(row, g));
        auto [it, fresh] = orbit_of.emplace(img, id);
        (void)it;
        if (fresh) stack.push_back(img);
      }
    }
  }
  std::vector<int> ids;
  ids.reserve(rows.size());
  for (RowCode c : rows) ids.push_back(orbit_of.at(c));
  return assemble(n, rows, std::move(ids));
}

// ---- relative completion and the orbit group -------------------------------------

std::optional<Mat> complete_relative(const std::vector<RElem>& v, const Ideal& augmentation) {
  const RingPtr& A = augmentation.ring;
  int n = static_cast<int>(v.size());
  try {
    RingPtr B = Ring::excision(A, augmentation);
    std::vector<RElem> lifted;
    for (int k = 0; k < n; ++k) {
      RElem d = (k == 0) ? one(A) : zero(A);
      lifted.push_back(make_pair(B, d, v[k] - d));
    }
    Word w = complete_unimodular(lifted, ReduceFamily::Linear);
    Mat eps = eval_word(w);
    // strip the split part: delta = ((s o pi)(eps))^-1 eps is congruent to I
    // modulo 0 (+) I and keeps the first row
    Mat split(B, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        split.at(i, j) = make_pair(B, eps.at(i, j).as_vec()[0], zero(A));
    Mat delta = mat_mul(inverse(split), eps);
    RingHom f = RingHom::excision_sum(B);
    Mat alpha = hom_apply(f, delta);
    for (int j = 0; j < n; ++j)
      if (!(alpha.at(0, j) == v[j])) return std::nullopt;
    if (!is_member(alpha, GroupKind::SL, augmentation).ok) return std::nullopt;
    return alpha;
  } catch (const std::exception&) {
  }
  // exhaustive fallback: first row fixed to v, remaining entries vary over
  // identity-plus-ideal below a guard
  std::vector<RElem> ideal_elems;
  if (A->is_finite() && A->cardinality() <= 4096) {
    for (Int i = 0; i < A->cardinality(); ++i) {
      RElem e = elem_at(A, i);
      if (ideal_contains(augmentation, e)) ideal_elems.push_back(e);
    }
  } else {
    return std::nullopt;
  }
  int slots = n * (n - 1);
  double bound = 1;
  for (int t = 0; t < slots; ++t) {
    bound *= static_cast<double>(ideal_elems.size());
    if (bound > 100000) return std::nullopt;
  }
  std::uint64_t total = 1;
  for (int t = 0; t < slots; ++t) total *= ideal_elems.size();
  for (std::uint64_t code = 0; code < total; ++code) {
    Mat cand(A, n);
    for (int j = 0; j < n; ++j) cand.at(0, j) = v[j];
    std::uint64_t rest = code;
    for (int i = 1; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        RElem off = ideal_elems[rest % ideal_elems.size()];
        rest /= ideal_elems.size();
        cand.at(i, j) = (i == j) ? one(A) + off : off;
      }
    if (is_one(det(cand)) && is_member(cand, GroupKind::SL, augmentation).ok) return cand;
  }
  return std::nullopt;
}

OrbitTable orbit_group(const FiniteRingEnum& A, const Ideal& augmentation, int n) {
  if (n < 3) fail("orbit_group needs n >= 3");
  std::vector<RowCode> rows = enum_um(n, A, augmentation);
  OrbitTable t = orbit_bfs(rows, n, A, OrbitFamily::Linear, augmentation);

  int k = t.orbit_count();
  t.completable.assign(k, 0);
  std::vector<std::optional<Mat>> completions(k);
  for (int id = 0; id < k; ++id) {
    completions[id] = complete_relative(decode_row(A, n, t.reps[id]), augmentation);
    t.completable[id] = completions[id].has_value() ? 1 : 0;
  }

  t.table.assign(k, std::vector<int>(k, -1));
  for (int i = 0; i < k; ++i) {
    if (!t.completable[i]) continue;
    std::vector<RElem> u = decode_row(A, n, t.reps[i]);
    for (int j = 0; j < k; ++j) {
      if (!t.completable[j]) continue;
      // [u][v] = [e1 a_u a_v] = [u * a_v]
      std::vector<RElem> prod = row_mul(u, *completions[j]);
      t.table[i][j] = t.orbit_of_code(encode_row(A, prod));
    }
  }
  return t;
}

}  // namespace exalg
