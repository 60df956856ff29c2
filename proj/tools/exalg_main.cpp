// exalg: exact factorization certificates for classical groups over
// commutative rings. Subcommands operate on JSON files; every emitted
// certificate re-verifies from disk with no in-memory state.
//
// Exit codes: 0 claim holds / certificate verified; 1 claim fails
// verification; 2 input or contract error.

#include <CLI11.hpp>

#include "exalg/factor.hpp"
#include "exalg/io.hpp"
#include "exalg/orbits.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <iostream>

using namespace exalg;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFalse = 1;
constexpr int kExitError = 2;

std::string default_out(const std::string& in, const std::string& suffix) {
  return in + suffix;
}

ReduceFamily family_for(GroupKind g) {
  if (g == GroupKind::SL) return ReduceFamily::Linear;
  if (g == GroupKind::Sp) return ReduceFamily::Symplectic;
  throw contract_error("expected --group sl or sp");
}

std::optional<Ideal> parse_ideal(const RingPtr& r, const std::string& text) {
  if (text.empty()) return std::nullopt;
  Ideal ideal{r, {}};
  std::string cur;
  for (char c : text) {
    if (c == ';') {
      ideal.gens.push_back(parse_elem(r, cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) ideal.gens.push_back(parse_elem(r, cur));
  return ideal;
}

Certificate factor_one(const Mat& subject, GroupKind group) {
  Certificate cert;
  cert.group = group;
  cert.subjects = {subject};
  const RingPtr& r = subject.ring();
  if (group == GroupKind::SO) {
    SODecomposition dec = so_decompose_local(subject);
    cert.kind = "so-decompose";
    cert.unit = dec.u;
    cert.word = std::move(dec.word);
  } else {
    cert.kind = "factorization";
    ReduceFamily fam = family_for(group);
    if (r->is_local() || r->is_finite())
      cert.word = reduce_local(subject, fam);
    else if (r->is_euclidean() && group == GroupKind::SL)
      cert.word = reduce_euclidean(subject);
    else
      throw contract_error("no reduction strategy for " + r->name());
  }
  verify_certificate(cert);
  return cert;
}

int run_factor(const std::vector<std::string>& inputs, const std::string& out,
               const std::string& group_name, int jobs) {
  GroupKind group = group_from_name(group_name);
  std::vector<int> codes(inputs.size(), kExitOk);
#ifdef _OPENMP
  omp_set_num_threads(jobs > 0 ? jobs : 1);
#pragma omp parallel for schedule(dynamic) if (jobs > 1)
#endif
  for (std::int64_t k = 0; k < static_cast<std::int64_t>(inputs.size()); ++k) {
    try {
      Mat subject = mat_from_json(read_json_file(inputs[k]));
      Certificate cert = factor_one(subject, group);
      if (!cert.verified) {
        codes[k] = kExitFalse;
        continue;
      }
      std::string path =
          (inputs.size() == 1 && !out.empty()) ? out : default_out(inputs[k], ".cert.json");
      write_json_file(path, certificate_to_json(cert));
    } catch (const std::exception& e) {
#ifdef _OPENMP
#pragma omp critical
#endif
      std::cerr << inputs[k] << ": " << e.what() << "\n";
      codes[k] = kExitError;
    }
  }
  int worst = kExitOk;
  for (int c : codes) worst = std::max(worst, c);
  return worst;
}

int run_verify(const std::vector<std::string>& inputs, int jobs) {
  std::vector<int> codes(inputs.size(), kExitOk);
#ifdef _OPENMP
  omp_set_num_threads(jobs > 0 ? jobs : 1);
#pragma omp parallel for schedule(dynamic) if (jobs > 1)
#endif
  for (std::int64_t k = 0; k < static_cast<std::int64_t>(inputs.size()); ++k) {
    try {
      Certificate cert = certificate_from_json(read_json_file(inputs[k]));
      bool ok = verify_certificate(cert);
#ifdef _OPENMP
#pragma omp critical
#endif
      std::cout << inputs[k] << ": " << (ok ? "verified" : "FAILED") << "\n";
      if (!ok) codes[k] = kExitFalse;
    } catch (const std::exception& e) {
#ifdef _OPENMP
#pragma omp critical
#endif
      std::cerr << inputs[k] << ": " << e.what() << "\n";
      codes[k] = kExitError;
    }
  }
  int worst = kExitOk;
  for (int c : codes) worst = std::max(worst, c);
  return worst;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact elementary-generator certificates for SL/Sp/SO over rings"};
  app.require_subcommand(1);

  // factor
  auto* factor = app.add_subcommand("factor", "factor a matrix into elementary generators");
  std::vector<std::string> f_in;
  std::string f_out, f_group = "sl";
  int jobs = 1;
  factor->add_option("--in", f_in, "input matrix file(s)")->required();
  factor->add_option("--out", f_out, "output certificate (single input only)");
  factor->add_option("--group", f_group, "sl | sp | so");
  factor->add_option("--jobs", jobs, "parallelize independent inputs");

  // verify
  auto* verify = app.add_subcommand("verify", "re-check certificates from disk");
  std::vector<std::string> v_in;
  verify->add_option("--in", v_in, "certificate file(s)")->required();
  verify->add_option("--jobs", jobs, "parallelize independent inputs");

  // orbit
  auto* orbit = app.add_subcommand("orbit", "enumerate unimodular rows and orbits");
  std::string o_ring, o_out, o_ideal, o_family = "linear";
  int o_n = 3;
  bool o_table = false;
  orbit->add_option("--ring", o_ring, "ring token or inline JSON")->required();
  orbit->add_option("--n", o_n, "row length");
  orbit->add_option("--family", o_family, "linear | symplectic | orthogonal");
  orbit->add_option("--ideal", o_ideal, "relative ideal generators, ';'-separated");
  orbit->add_flag("--table", o_table, "compute the orbit multiplication table");
  orbit->add_option("--out", o_out, "report file")->required();

  // spinor
  auto* spinor = app.add_subcommand("spinor", "spinor norm via hyperbolic decomposition");
  std::string s_in, s_out;
  spinor->add_option("--in", s_in, "input matrix file")->required();
  spinor->add_option("--out", s_out, "output certificate");

  // commutator-split
  auto* csplit = app.add_subcommand("commutator-split",
                                    "five-factor split of [a(X), b(X)] over R[X]");
  std::string c_a, c_b, c_out, c_group = "sl";
  csplit->add_option("--in", c_a, "alpha(X) matrix file")->required();
  csplit->add_option("--in2", c_b, "beta(X) matrix file")->required();
  csplit->add_option("--group", c_group, "sl | sp");
  csplit->add_option("--out", c_out, "output certificate");

  // relativize
  auto* rel = app.add_subcommand("relativize", "relative factorization over (R, I)");
  std::string r_in, r_out, r_ideal, r_group = "sl";
  rel->add_option("--in", r_in, "input matrix file")->required();
  rel->add_option("--ideal", r_ideal, "ideal generators, ';'-separated")->required();
  rel->add_option("--group", r_group, "sl | sp");
  rel->add_option("--out", r_out, "output certificate");

  // square-eo
  auto* sq = app.add_subcommand("square-eo", "orthogonal square as an elementary word");
  std::string q_in, q_out, q_ideal;
  sq->add_option("--in", q_in, "input matrix file")->required();
  sq->add_option("--ideal", q_ideal, "relative ideal generators");
  sq->add_option("--out", q_out, "output certificate");

  // homotopy
  auto* hom = app.add_subcommand("homotopy", "commutator certificate from a homotopy witness");
  std::string h_gamma, h_beta, h_out;
  bool h_graded = false;
  std::string h_ideal;
  hom->add_option("--in", h_gamma, "gamma(X) witness matrix (or sigma with --graded)")
      ->required();
  hom->add_option("--beta", h_beta, "beta matrix file");
  hom->add_flag("--graded", h_graded, "build the witness by the graded homotopy");
  hom->add_option("--ideal", h_ideal, "augmentation ideal for --graded");
  hom->add_option("--out", h_out, "output certificate");

  CLI11_PARSE(app, argc, argv);

  try {
    if (factor->parsed()) return run_factor(f_in, f_out, f_group, jobs);
    if (verify->parsed()) return run_verify(v_in, jobs);

    if (orbit->parsed()) {
      RingPtr r = parse_ring_spec(o_ring);
      FiniteRingEnum R(r);
      std::optional<Ideal> ideal = parse_ideal(r, o_ideal);
      OrbitFamily fam = o_family == "linear"      ? OrbitFamily::Linear
                        : o_family == "symplectic" ? OrbitFamily::Symplectic
                                                   : OrbitFamily::Orthogonal;
      OrbitTable t;
      if (o_table) {
        if (!ideal) throw contract_error("--table needs --ideal (the augmentation ideal)");
        t = orbit_group(R, *ideal, o_n);
      } else {
        t = orbit_bfs(enum_um(o_n, R, ideal), o_n, R, fam, ideal);
      }
      write_json_file(o_out, orbit_table_to_json(t, R, fam, ideal));
      return kExitOk;
    }

    if (spinor->parsed()) {
      Mat subject = mat_from_json(read_json_file(s_in));
      SODecomposition dec = so_decompose_local(subject);
      Certificate cert;
      cert.kind = "spinor";
      cert.group = GroupKind::SO;
      cert.subjects = {subject};
      cert.unit = dec.u;
      cert.word = std::move(dec.word);
      if (!verify_certificate(cert)) return kExitFalse;
      write_json_file(s_out.empty() ? default_out(s_in, ".spinor.json") : s_out,
                      certificate_to_json(cert));
      std::cout << "spinor norm class: [" << to_string(*cert.unit) << "]\n";
      return kExitOk;
    }

    if (csplit->parsed()) {
      Mat a = mat_from_json(read_json_file(c_a));
      Mat b = mat_from_json(read_json_file(c_b));
      Certificate cert = commutator_split(a, b, family_for(group_from_name(c_group)));
      if (!cert.verified) return kExitFalse;
      write_json_file(c_out.empty() ? default_out(c_a, ".split.json") : c_out,
                      certificate_to_json(cert));
      return kExitOk;
    }

    if (rel->parsed()) {
      Mat subject = mat_from_json(read_json_file(r_in));
      auto ideal = parse_ideal(subject.ring(), r_ideal);
      if (!ideal) throw contract_error("--ideal must not be empty");
      Certificate cert;
      cert.kind = "rel-factorization";
      cert.group = group_from_name(r_group);
      cert.subjects = {subject};
      cert.rel = *ideal;
      cert.relword = relativize_excision(subject, *ideal, family_for(cert.group));
      if (!verify_certificate(cert)) return kExitFalse;
      write_json_file(r_out.empty() ? default_out(r_in, ".rel.json") : r_out,
                      certificate_to_json(cert));
      return kExitOk;
    }

    if (sq->parsed()) {
      Mat subject = mat_from_json(read_json_file(q_in));
      auto ideal = parse_ideal(subject.ring(), q_ideal);
      Certificate cert = square_in_eo(subject, ideal);
      if (!cert.verified) return kExitFalse;
      write_json_file(q_out.empty() ? default_out(q_in, ".square.json") : q_out,
                      certificate_to_json(cert));
      return kExitOk;
    }

    if (hom->parsed()) {
      Mat gamma = mat_from_json(read_json_file(h_gamma));
      HomotopyWitness w =
          h_graded ? graded_homotopy(gamma, *parse_ideal(gamma.ring(), h_ideal))
                   : make_homotopy_witness(gamma);
      if (h_beta.empty()) throw contract_error("--beta is required");
      Mat beta = mat_from_json(read_json_file(h_beta));
      Certificate cert = homotopy_commutator(w, beta);
      if (!cert.verified) return kExitFalse;
      write_json_file(h_out.empty() ? default_out(h_gamma, ".homotopy.json") : h_out,
                      certificate_to_json(cert));
      return kExitOk;
    }
  } catch (const contract_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const unsupported_error& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
