// Command-line surface over the library: decompose pairs, convert Davis
// coordinates, build geodesics, compute distances, run the invariant suite
// and generate gallery fixtures. Exit codes: 0 ok, 1 invariant failure,
// 2 invalid input, 3 precondition violated.

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "projpair/davis.hpp"
#include "projpair/decomp.hpp"
#include "projpair/errors.hpp"
#include "projpair/gallery.hpp"
#include "projpair/geodesics.hpp"
#include "projpair/io.hpp"
#include "projpair/orbit.hpp"
#include "projpair/spectral.hpp"
#include "projpair/suite.hpp"

namespace {

using namespace projpair;

constexpr int kExitOk = 0;
constexpr int kExitInvariant = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitPrecondition = 3;

struct GlobalOpts {
  double rank_tol = 1e-8;
  double gap_tol = 1e-8;
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "json";
};

Tol make_tol(const GlobalOpts& g) { return Tol{g.rank_tol, g.gap_tol}; }

void emit(const GlobalOpts& g, const nlohmann::json& j) {
  const std::string text = dump_json_17(j);
  if (g.out.empty()) {
    std::cout << text << "\n";
  } else {
    std::ofstream f(g.out);
    if (!f) throw IoError("cannot open for writing: " + g.out);
    f << text << "\n";
  }
}

nlohmann::json split_to_json(const ThreeSpaceSplit& split) {
  return nlohmann::json{
      {"basis_null", matrix_to_json(split.basis_null)},
      {"basis_plus_one", matrix_to_json(split.basis_plus)},
      {"basis_minus_one", matrix_to_json(split.basis_minus)},
      {"basis_generic", matrix_to_json(split.basis_generic)}};
}

std::vector<Index> parse_index_set(const std::string& text) {
  // "a:b" is the inclusive range a..b, "i,j,k" an explicit list.
  std::vector<Index> out;
  const auto colon = text.find(':');
  if (colon != std::string::npos) {
    const Index lo = std::stoll(text.substr(0, colon));
    const Index hi = std::stoll(text.substr(colon + 1));
    for (Index k = lo; k <= hi; ++k) out.push_back(k);
    return out;
  }
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, ',')) {
    if (!token.empty()) out.push_back(std::stoll(token));
  }
  return out;
}

// Reassembles an ambient pair from the constant non-generic summands of the
// base pair and a moving generic block.
CMat reassemble(const ProjectionPair& base, const ThreeSpaceSplit& split,
                const CMat& base_matrix, const CMat& generic_block) {
  CMat out = base_matrix;
  const CMat& bg = split.basis_generic;
  const CMat gp0 = bg.adjoint() * base_matrix * bg;
  out += bg * (generic_block - gp0) * bg.adjoint();
  return out;
}

int cmd_decompose(const GlobalOpts& g, const std::string& p_file,
                  const std::string& q_file) {
  const Tol tol = make_tol(g);
  const ProjectionPair pair =
      validate_pair(read_matrix_json(p_file), read_matrix_json(q_file));
  const ThreeSpaceSplit split = three_space_split(pair.difference(), tol);

  nlohmann::json rep{
      {"dim", pair.dim()},
      {"dim_null", split.dim_null()},
      {"dim_plus_one", split.dim_plus()},
      {"dim_minus_one", split.dim_minus()},
      {"dim_generic", split.dim_generic()},
      {"friedrichs_cos", friedrichs_cos(pair, tol)},
      {"split", split_to_json(split)},
  };
  if (split.dim_generic() == 0) {
    rep["note"] = "A is a symmetry on N(A)^perp: D_A restricted to that "
                  "summand is a single element";
    rep["gamma"] = nlohmann::json::array();
  } else {
    const GenericPair gp = generic_part(pair, split, tol);
    nlohmann::json gamma = nlohmann::json::array();
    for (Index i = 0; i < gp.frame().gamma().size(); ++i) {
      gamma.push_back(gp.frame().gamma()(i));
    }
    rep["gamma"] = gamma;
  }
  const ClosedRangeReport crr =
      closed_range_report(pair.difference(), g.gap_tol, tol);
  rep["closed_range"] = crr.to_json();
  emit(g, rep);
  return kExitOk;
}

int cmd_davis(const GlobalOpts& g, const std::string& p_file,
              const std::string& q_file, const std::string& out_v,
              const std::string& out_a0) {
  const Tol tol = make_tol(g);
  const ProjectionPair pair =
      validate_pair(read_matrix_json(p_file), read_matrix_json(q_file));
  const GenericPair gp = generic_part(pair, tol);
  const DavisSymmetry v = pair_to_symmetry(gp, tol);
  if (!out_v.empty()) write_matrix_json(out_v, v.mat());
  if (!out_a0.empty()) write_matrix_json(out_a0, gp.a0());
  emit(g, nlohmann::json{
              {"dim_generic", gp.dim()},
              {"anticommutation_residual",
               operator_norm(v.mat() * gp.a0() + gp.a0() * v.mat())},
          });
  return kExitOk;
}

int cmd_davis_pair(const GlobalOpts& g, const std::string& a0_file,
                   const std::string& v_file, const std::string& out_p,
                   const std::string& out_q) {
  const Tol tol = make_tol(g);
  const Hermitian a0(read_matrix_json(a0_file));
  const Symmetry v(read_matrix_json(v_file));
  const GenericPair gp =
      symmetry_to_pair(a0, DavisSymmetry::certify(a0, v), tol);
  if (!out_p.empty()) write_matrix_json(out_p, gp.p0());
  if (!out_q.empty()) write_matrix_json(out_q, gp.q0());
  emit(g, nlohmann::json{{"dim_generic", gp.dim()}});
  return kExitOk;
}

struct GeodesicSetup {
  ProjectionPair base_pair;
  ThreeSpaceSplit split;
  GenericPair base;
  GenericPair target;
};

GeodesicSetup load_geodesic_inputs(const GlobalOpts& g,
                                   const std::string& bp, const std::string& bq,
                                   const std::string& tp,
                                   const std::string& tq) {
  const Tol tol = make_tol(g);
  ProjectionPair base =
      validate_pair(read_matrix_json(bp), read_matrix_json(bq));
  const ProjectionPair target =
      validate_pair(read_matrix_json(tp), read_matrix_json(tq));
  const double diff_res =
      operator_norm((base.p() - base.q()) - (target.p() - target.q()));
  if (diff_res > 1e-9 * std::max(1.0, operator_norm(base.p() - base.q()))) {
    std::ostringstream msg;
    msg << "pairs have different differences, ||A - A'|| = " << diff_res;
    throw MismatchedDifference(msg.str());
  }
  ThreeSpaceSplit split = three_space_split(base.difference(), tol);
  if (split.dim_generic() == 0) {
    throw EmptyGenericPart("the pairs have no generic part");
  }
  const CMat& bg = split.basis_generic;
  GenericPair gp_base = GenericPair::create(
      bg.adjoint() * base.p() * bg, bg.adjoint() * base.q() * bg, tol);
  GenericPair gp_target = GenericPair::create(
      bg.adjoint() * target.p() * bg, bg.adjoint() * target.q() * bg, tol);
  // Outside the generic part every member of the fiber coincides up to the
  // projection factor on N(A), which geodesics do not move.
  const CMat null_res_p =
      split.dim_null() > 0
          ? CMat(split.basis_null.adjoint() *
                 (base.p() - target.p()) * split.basis_null)
          : CMat::Zero(0, 0);
  if (split.dim_null() > 0 && operator_norm(null_res_p) > 1e-9) {
    throw MismatchedDifference(
        "pairs differ on N(A); that factor carries no geodesic structure "
        "here");
  }
  return GeodesicSetup{std::move(base), std::move(split), std::move(gp_base),
                       std::move(gp_target)};
}

int cmd_geodesic(const GlobalOpts& g, const std::string& bp,
                 const std::string& bq, const std::string& tp,
                 const std::string& tq, int steps) {
  const Tol tol = make_tol(g);
  GeodesicSetup setup = load_geodesic_inputs(g, bp, bq, tp, tq);
  const HorizontalTangent ht = log_pair(setup.base, setup.target, tol);
  const double dist = finsler_norm(ht);

  const std::string csv_path = g.out.empty() ? "geodesic.csv" : g.out;
  std::ofstream csv(csv_path);
  if (!csv) throw IoError("cannot open for writing: " + csv_path);

  const Index n = setup.base_pair.dim();
  csv << "t";
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      csv << ",P_" << i << "_" << j << "_re,P_" << i << "_" << j << "_im";
    }
  }
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      csv << ",Q_" << i << "_" << j << "_re,Q_" << i << "_" << j << "_im";
    }
  }
  csv << ",distance_from_base\n";
  for (int k = 0; k <= steps; ++k) {
    const double t =
        steps == 0 ? 0.0 : static_cast<double>(k) / static_cast<double>(steps);
    const GenericPair at = exp_pair(setup.base, ht, t, tol);
    const CMat p_amb =
        reassemble(setup.base_pair, setup.split, setup.base_pair.p(), at.p0());
    const CMat q_amb =
        reassemble(setup.base_pair, setup.split, setup.base_pair.q(), at.q0());
    csv << format_double_17(t);
    for (const CMat* mm : {&p_amb, &q_amb}) {
      for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < n; ++j) {
          csv << "," << format_double_17((*mm)(i, j).real()) << ","
              << format_double_17((*mm)(i, j).imag());
        }
      }
    }
    csv << "," << format_double_17(t * dist) << "\n";
  }
  std::cout << "distance " << format_double_17(dist) << "\n";
  std::cout << "csv " << csv_path << "\n";
  return kExitOk;
}

int cmd_distance(const GlobalOpts& g, const std::string& bp,
                 const std::string& bq, const std::string& tp,
                 const std::string& tq) {
  const Tol tol = make_tol(g);
  GeodesicSetup setup = load_geodesic_inputs(g, bp, bq, tp, tq);
  const double dist = geodesic_distance(setup.base, setup.target, tol);
  std::cout << format_double_17(dist) << "\n";
  return kExitOk;
}

int cmd_check(const GlobalOpts& g, const std::string& p_file,
              const std::string& q_file, int trials) {
  const Tol tol = make_tol(g);
  const ProjectionPair pair =
      validate_pair(read_matrix_json(p_file), read_matrix_json(q_file));
  const CheckReport rep = run_invariant_suite(pair, trials, g.seed, tol);
  emit(g, rep.to_json());
  return rep.all_pass ? kExitOk : kExitInvariant;
}

int cmd_gallery(const GlobalOpts& g, const std::string& name, Index n,
                const std::string& i_spec, const std::string& j_spec,
                const std::vector<double>& a_re,
                const std::vector<double>& b_re,
                const std::vector<double>& b_diag,
                const std::string& out_dir) {
  const Tol tol = make_tol(g);
  std::filesystem::create_directories(out_dir);
  const auto p_path = std::filesystem::path(out_dir) / "P.json";
  const auto q_path = std::filesystem::path(out_dir) / "Q.json";
  const auto meta_path = std::filesystem::path(out_dir) / "metadata.json";

  nlohmann::json meta{{"generator", name}};
  CMat p, q;
  if (name == "mt") {
    const ProjectionPair pair = discretized_mt(n, tol);
    p = pair.p();
    q = pair.q();
    meta["n"] = n;
  } else if (name == "fourier") {
    const std::vector<Index> iset = parse_index_set(i_spec);
    const std::vector<Index> jset = parse_index_set(j_spec);
    const ProjectionPair pair = fourier_pair(n, iset, jset, tol);
    p = pair.p();
    q = pair.q();
    meta["n"] = n;
    meta["I"] = iset;
    meta["J"] = jset;
  } else if (name == "blaschke") {
    std::vector<Complex> a(a_re.begin(), a_re.end());
    std::vector<Complex> b(b_re.begin(), b_re.end());
    const BlaschkeResult res = blaschke_pair(a, b, tol);
    p = res.pair.p0();
    q = res.pair.q0();
    meta["N"] = static_cast<Index>(a.size());
    nlohmann::json spectrum = nlohmann::json::array();
    for (Index i = 0; i < res.a0_spectrum.size(); ++i) {
      spectrum.push_back(res.a0_spectrum(i));
    }
    meta["a0_spectrum"] = spectrum;
    meta["observed_multiplicities"] = res.multiplicities;
  } else if (name == "idempotent") {
    if (b_diag.empty()) {
      throw InvalidArgument("gallery idempotent: provide --b diag entries");
    }
    RVec d(static_cast<Index>(b_diag.size()));
    for (size_t i = 0; i < b_diag.size(); ++i) {
      d(static_cast<Index>(i)) = b_diag[i];
    }
    const Hermitian b(d.asDiagonal().toDenseMatrix().cast<Complex>());
    const IdempotentResult res = idempotent_pair(b, tol);
    p = res.pair.p0();
    q = res.pair.q0();
    meta["closed_form_residual"] = res.closed_form_residual;
    meta["commutant_residual"] = res.commutant_residual;
    meta["isotropy_commutative"] = res.isotropy_commutative;
  } else {
    throw InvalidArgument("gallery: unknown generator '" + name + "'");
  }
  write_matrix_json(p_path, p);
  write_matrix_json(q_path, q);
  std::ofstream mf(meta_path);
  mf << dump_json_17(meta) << "\n";
  std::cout << "wrote " << p_path.string() << " " << q_path.string() << " "
            << meta_path.string() << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Geometry of pairs of orthogonal projections with fixed difference: "
      "decomposition, Davis coordinates, geodesics and Finsler distance"};
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_option("--rank-tol", g.rank_tol, "relative nullspace tolerance");
  app.add_option("--gap-tol", g.gap_tol, "relative sign-gap tolerance");
  app.add_option("--seed", g.seed, "RNG seed for randomized suites");
  app.add_option("--out", g.out, "output path (report json / csv)");
  app.add_option("--format", g.format, "output format: json or csv");

  std::string p_file, q_file, tp_file, tq_file, a0_file, v_file;
  std::string out_v, out_a0, out_p, out_q;
  int steps = 16;
  int trials = 20;
  Index n = 8;
  std::string i_spec = "0:1", j_spec = "0:1", gallery_name, out_dir = ".";
  std::vector<double> a_pts, b_pts, b_diag;

  auto* decompose = app.add_subcommand(
      "decompose", "three-space split, angles, Friedrichs cosine");
  decompose->add_option("P", p_file)->required();
  decompose->add_option("Q", q_file)->required();

  auto* davis = app.add_subcommand(
      "davis", "Davis symmetry of the generic part of a pair");
  davis->add_option("P", p_file)->required();
  davis->add_option("Q", q_file)->required();
  davis->add_option("--out-v", out_v, "write V to this file");
  davis->add_option("--out-a0", out_a0, "write A0 to this file");

  auto* davis_pair = app.add_subcommand(
      "davis-pair", "rebuild the pair from A0 and a Davis symmetry");
  davis_pair->add_option("A0", a0_file)->required();
  davis_pair->add_option("V", v_file)->required();
  davis_pair->add_option("--out-p", out_p, "write P0 to this file");
  davis_pair->add_option("--out-q", out_q, "write Q0 to this file");

  auto* geodesic = app.add_subcommand(
      "geodesic", "minimal geodesic between two pairs on one fiber (CSV)");
  geodesic->add_option("baseP", p_file)->required();
  geodesic->add_option("baseQ", q_file)->required();
  geodesic->add_option("targetP", tp_file)->required();
  geodesic->add_option("targetQ", tq_file)->required();
  geodesic->add_option("--steps", steps, "samples of t in [0,1]");

  auto* distance = app.add_subcommand(
      "distance", "Finsler geodesic distance between two pairs");
  distance->add_option("baseP", p_file)->required();
  distance->add_option("baseQ", q_file)->required();
  distance->add_option("targetP", tp_file)->required();
  distance->add_option("targetQ", tq_file)->required();

  auto* check = app.add_subcommand(
      "check", "run the machine-checkable invariant suite on a pair");
  check->add_option("P", p_file)->required();
  check->add_option("Q", q_file)->required();
  check->add_option("--trials", trials, "randomized rounds");

  auto* gallery = app.add_subcommand(
      "gallery", "generate a fixture pair (mt, fourier, blaschke, idempotent)");
  gallery->add_option("name", gallery_name)->required();
  gallery->add_option("--n", n, "dimension for mt/fourier");
  gallery->add_option("--I", i_spec, "index set for fourier, e.g. 0:3");
  gallery->add_option("--J", j_spec, "index set for fourier");
  gallery->add_option("--a", a_pts, "blaschke points (real), repeatable");
  gallery->add_option("--b", b_pts, "blaschke points (real), repeatable");
  gallery->add_option("--B", b_diag, "idempotent diag(B) entries");
  gallery->add_option("--dir", out_dir, "output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (decompose->parsed()) return cmd_decompose(g, p_file, q_file);
    if (davis->parsed()) return cmd_davis(g, p_file, q_file, out_v, out_a0);
    if (davis_pair->parsed()) {
      return cmd_davis_pair(g, a0_file, v_file, out_p, out_q);
    }
    if (geodesic->parsed()) {
      return cmd_geodesic(g, p_file, q_file, tp_file, tq_file, steps);
    }
    if (distance->parsed()) {
      return cmd_distance(g, p_file, q_file, tp_file, tq_file);
    }
    if (check->parsed()) return cmd_check(g, p_file, q_file, trials);
    if (gallery->parsed()) {
      return cmd_gallery(g, gallery_name, n, i_spec, j_spec, a_pts, b_pts,
                         b_diag, out_dir);
    }
  } catch (const MismatchedDifference& e) {
    std::cerr << "error (precondition): " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const EmptyGenericPart& e) {
    std::cerr << "error (precondition): " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const SingularSign& e) {
    std::cerr << "error (precondition): " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const Error& e) {
    std::cerr << "error (invalid input): " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitOk;
}
