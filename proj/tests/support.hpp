#pragma once

#include "exalg/factor.hpp"
#include "exalg/matrix.hpp"
#include "exalg/words.hpp"

#include <random>

namespace exalg::test {

using Rng = std::mt19937_64;

inline long rand_range(Rng& rng, long lo, long hi) {
  return lo + static_cast<long>(rng() % static_cast<unsigned long>(hi - lo + 1));
}

/// Random canonical element; poly-like rings get degree <= 2 unless finite.
inline RElem random_elem(const RingPtr& r, Rng& rng) {
  switch (r->kind) {
    case RingKind::Integers:
      return from_int(r, rand_range(rng, -9, 9));
    case RingKind::Rationals:
      return make_fraction(r, rand_range(rng, -9, 9), rand_range(rng, 1, 9));
    case RingKind::LocalizedAtPrime: {
      Int p = r->n;
      for (;;) {
        Int den = rand_range(rng, 1, 9);
        if (den % p != 0) return make_fraction(r, rand_range(rng, -9, 9), den);
      }
    }
    case RingKind::Modular:
    case RingKind::PrimeField:
      return from_int(r, rand_range(rng, 0, (r->n - 1).convert_to<long>()));
    case RingKind::Quotient: {
      std::vector<RElem> c;
      for (int d = 0; d < r->quot_degree(); ++d) c.push_back(random_elem(r->coeff_ring(), rng));
      return make_poly(r, std::move(c));
    }
    case RingKind::Polynomial: {
      std::vector<RElem> c;
      int deg = static_cast<int>(rng() % 3);
      for (int d = 0; d <= deg; ++d) c.push_back(random_elem(r->base, rng));
      return make_poly(r, std::move(c));
    }
    case RingKind::Excision: {
      RElem rp = random_elem(r->base, rng);
      RElem ip = zero(r->base);
      for (const auto& g : r->exc_ideal->gens) ip = ip + random_elem(r->base, rng) * g;
      return make_pair(r, std::move(rp), std::move(ip));
    }
  }
  throw contract_error("random_elem: bad ring");
}

inline RElem random_unit(const RingPtr& r, Rng& rng) {
  for (int tries = 0; tries < 1000; ++tries) {
    RElem e = random_elem(r, rng);
    if (is_unit(e)) return e;
  }
  throw contract_error("random_unit: no unit found");
}

/// Random element of the ideal (combination of the generators).
inline RElem random_ideal_elem(const Ideal& ideal, Rng& rng) {
  RElem acc = zero(ideal.ring);
  for (const auto& g : ideal.gens) acc = acc + random_elem(ideal.ring, rng) * g;
  return acc;
}

inline std::pair<int, int> random_index_pair(Rng& rng, int n, AtomFamily fam) {
  for (;;) {
    int i = static_cast<int>(rng() % n) + 1;
    int j = static_cast<int>(rng() % n) + 1;
    if (i == j) continue;
    if (fam == AtomFamily::OrthO && i == sigma_index(j)) continue;
    return {i, j};
  }
}

inline Word random_word(const RingPtr& r, int n, AtomFamily fam, int len, Rng& rng) {
  Word w{r, n, {}};
  for (int t = 0; t < len; ++t) {
    auto [i, j] = random_index_pair(rng, n, fam);
    w.atoms.push_back({fam, i, j, random_elem(r, rng)});
  }
  return w;
}

/// Random word with parameters drawn from the ideal, conjugated by random
/// absolute atoms; evaluates into the relative elementary group.
inline Mat random_relative_elem(const RingPtr& r, int n, AtomFamily fam, const Ideal& ideal,
                                int len, Rng& rng) {
  Mat acc = identity(r, n);
  for (int t = 0; t < len; ++t) {
    auto [i, j] = random_index_pair(rng, n, fam);
    RElem a = random_ideal_elem(ideal, rng);
    Mat core = atom_matrix({fam, i, j, a}, n);
    Mat conj = eval_word(random_word(r, n, fam, 2, rng));
    acc = mat_mul(acc, mat_mul(mat_mul(conj, core), inverse(conj)));
  }
  return acc;
}

/// Independent determinant oracle: Laplace cofactor expansion.
inline RElem det_cofactor(const Mat& m) {
  int n = m.n();
  if (n == 0) return one(m.ring());
  if (n == 1) return m.at(0, 0);
  RElem acc = zero(m.ring());
  for (int k = 0; k < n; ++k) {
    if (is_zero(m.at(0, k))) continue;
    Mat minor(m.ring(), n - 1);
    for (int i = 1; i < n; ++i) {
      int cc = 0;
      for (int j = 0; j < n; ++j) {
        if (j == k) continue;
        minor.at(i - 1, cc++) = m.at(i, j);
      }
    }
    RElem term = m.at(0, k) * det_cofactor(minor);
    acc = (k % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

}  // namespace exalg::test
