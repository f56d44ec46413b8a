#include "projpair/gallery.hpp"

#include <Eigen/Cholesky>
#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "projpair/errors.hpp"
#include "projpair/orbit.hpp"
#include "projpair/rng.hpp"
#include "projpair/spectral.hpp"

namespace projpair {

ProjectionPair discretized_mt(Index n, const Tol& tol) {
  if (n < 2 || n % 2 != 0) {
    throw InvalidArgument("discretized_mt: n must be even and >= 2");
  }
  RVec grid(n);
  for (Index k = 1; k <= n; ++k) {
    grid(k - 1) = static_cast<double>(2 * k - n - 1) / static_cast<double>(n);
  }
  const Hermitian a(grid.asDiagonal().toDenseMatrix().cast<Complex>());
  CMat v = CMat::Zero(n, n);
  for (Index k = 0; k < n; ++k) v(k, n - 1 - k) = 1.0;  // coordinate flip
  const DavisSymmetry dv = DavisSymmetry::certify(a, Symmetry(v));
  const GenericPair gp = symmetry_to_pair(a, dv, tol);
  return validate_pair(gp.p0(), gp.q0());
}

ProjectionPair fourier_pair(Index n, const std::vector<Index>& i_set,
                            const std::vector<Index>& j_set,
                            const Tol& tol) {
  (void)tol;
  if (n < 2) throw InvalidArgument("fourier_pair: n must be >= 2");
  auto indicator = [&](const std::vector<Index>& set, const char* name) {
    if (set.empty()) {
      throw InvalidArgument(std::string("fourier_pair: ") + name +
                            " is empty");
    }
    CMat d = CMat::Zero(n, n);
    for (Index k : set) {
      if (k < 0 || k >= n) {
        throw InvalidArgument(std::string("fourier_pair: ") + name +
                              " index out of range");
      }
      d(k, k) = 1.0;
    }
    return d;
  };
  const CMat p = indicator(i_set, "I");
  const CMat pj = indicator(j_set, "J");

  CMat f(n, n);
  const double root = 1.0 / std::sqrt(static_cast<double>(n));
  for (Index r = 0; r < n; ++r) {
    for (Index c = 0; c < n; ++c) {
      const double phase = -2.0 * M_PI * static_cast<double>(r * c) /
                           static_cast<double>(n);
      f(r, c) = root * std::polar(1.0, phase);
    }
  }
  const CMat q = f.adjoint() * pj * f;
  return validate_pair(p, 0.5 * (q + q.adjoint().eval()));
}

OmegaParametrization::OmegaParametrization(const Hermitian& a0,
                                           const Tol& tol)
    : a0_(a0), tol_(tol) {
  const SpectralDecomp d = eigh(a0);
  const Index m = a0.dim();
  const double norm_a = m ? d.eigenvalues.cwiseAbs().maxCoeff() : 0.0;
  std::vector<Index> pos, neg;
  for (Index i = 0; i < m; ++i) {
    const double lambda = d.eigenvalues(i);
    if (std::abs(lambda) <= tol.rank_tol * norm_a) {
      throw DegenerateSpectrum(
          "omega_parametrization: A0 has a numerically null eigenvalue");
    }
    (lambda > 0 ? pos : neg).push_back(i);
  }
  if (pos.size() != neg.size()) {
    throw DegenerateSpectrum("omega_parametrization: asymmetric spectrum");
  }
  std::sort(neg.begin(), neg.end(), [&](Index i, Index j) {
    return std::abs(d.eigenvalues(i)) < std::abs(d.eigenvalues(j));
  });
  const Index half = static_cast<Index>(pos.size());
  lambdas_.resize(half);
  plus_vecs_.resize(m, half);
  minus_vecs_.resize(m, half);
  for (Index k = 0; k < half; ++k) {
    const double lp = d.eigenvalues(pos[static_cast<size_t>(k)]);
    const double ln = std::abs(d.eigenvalues(neg[static_cast<size_t>(k)]));
    if (std::abs(lp - ln) > tol.rank_tol * std::max(norm_a, 1.0)) {
      std::ostringstream msg;
      msg << "omega_parametrization: eigenvalue " << lp
          << " has no -lambda partner";
      throw DegenerateSpectrum(msg.str());
    }
    if (k > 0 && std::abs(lp - lambdas_(k - 1)) <=
                     tol.rank_tol * std::max(norm_a, 1.0)) {
      std::ostringstream msg;
      msg << "omega_parametrization: eigenvalue " << lp
          << " has multiplicity > 1";
      throw DegenerateSpectrum(msg.str());
    }
    lambdas_(k) = lp;
    plus_vecs_.col(k) = d.eigenvectors.col(pos[static_cast<size_t>(k)]);
    minus_vecs_.col(k) = d.eigenvectors.col(neg[static_cast<size_t>(k)]);
  }
}

DavisSymmetry OmegaParametrization::build(
    const std::vector<Complex>& omega) const {
  if (static_cast<Index>(omega.size()) != blocks()) {
    throw InvalidArgument("omega build: wrong number of phases");
  }
  const Index m = a0_.dim();
  CMat v = CMat::Zero(m, m);
  for (Index k = 0; k < blocks(); ++k) {
    const Complex w = omega[static_cast<size_t>(k)];
    if (std::abs(std::abs(w) - 1.0) > 1e-12) {
      throw InvalidArgument("omega build: phase is not unimodular");
    }
    const CVec e = plus_vecs_.col(k);
    const CVec f = minus_vecs_.col(k);
    v += w * (f * e.adjoint()) + std::conj(w) * (e * f.adjoint());
  }
  return DavisSymmetry::certify(a0_, Symmetry(v));
}

GenericPair OmegaParametrization::pair(
    const std::vector<Complex>& omega) const {
  return symmetry_to_pair(a0_, build(omega), tol_);
}

namespace {

Complex blaschke_eval(const std::vector<Complex>& zeros, Complex z) {
  Complex out(1.0, 0.0);
  for (const Complex& c : zeros) {
    if (std::abs(c) == 0.0) {
      out *= z;  // the a = 0 factor is taken as z
    } else {
      out *= (std::abs(c) / c) * (c - z) / (1.0 - std::conj(c) * z);
    }
  }
  return out;
}

}  // namespace

BlaschkeResult blaschke_pair(const std::vector<Complex>& a,
                             const std::vector<Complex>& b,
                             const Tol& tol) {
  const Index n_pts = static_cast<Index>(a.size());
  if (n_pts == 0 || a.size() != b.size()) {
    throw InvalidArgument("blaschke_pair: need equal, nonempty point lists");
  }
  std::vector<Complex> all(a);
  all.insert(all.end(), b.begin(), b.end());
  double max_mod = 0.0;
  for (const Complex& z : all) max_mod = std::max(max_mod, std::abs(z));
  if (max_mod >= 1.0) {
    throw InvalidArgument("blaschke_pair: points must lie in the open disk");
  }
  for (size_t i = 0; i < a.size(); ++i) {
    for (size_t j = 0; j < a.size(); ++j) {
      if (i != j && std::abs(a[i] - a[j]) < 1e-12) {
        throw InvalidArgument("blaschke_pair: repeated point in a");
      }
      if (std::abs(a[i] - b[j]) < 1e-12) {
        throw InvalidArgument("blaschke_pair: a and b share a point");
      }
      if (i != j && std::abs(b[i] - b[j]) < 1e-12) {
        throw InvalidArgument("blaschke_pair: repeated point in b");
      }
    }
  }
  const Index dim = 2 * n_pts;

  // Gram matrix of the reproducing kernels: <k_y, k_x> = 1/(1 - conj(y) x).
  CMat gram(dim, dim);
  for (Index r = 0; r < dim; ++r) {
    for (Index c = 0; c < dim; ++c) {
      gram(r, c) = 1.0 / (1.0 - std::conj(all[static_cast<size_t>(c)]) *
                                    all[static_cast<size_t>(r)]);
    }
  }
  const SpectralDecomp sg = eigh(Hermitian(gram));
  const double cond =
      sg.eigenvalues.maxCoeff() / std::max(sg.eigenvalues.minCoeff(), 1e-300);
  if (!(sg.eigenvalues.minCoeff() > 0) || cond > 1e12) {
    std::ostringstream msg;
    msg << "blaschke_pair: Gram condition number " << cond
        << " (points too close)";
    throw IllConditionedGram(msg.str());
  }

  // Interpolation nodes for expanding products back into the kernel basis.
  const Index n_nodes = 4 * n_pts + 1;
  const double radius = 0.5 * (1.0 + max_mod);
  std::vector<Complex> nodes(static_cast<size_t>(n_nodes));
  for (Index p = 0; p < n_nodes; ++p) {
    nodes[static_cast<size_t>(p)] = std::polar(
        radius, 2.0 * M_PI * static_cast<double>(p) /
                    static_cast<double>(n_nodes));
  }
  CMat vander(n_nodes, dim);  // kernel values at the nodes
  for (Index p = 0; p < n_nodes; ++p) {
    for (Index c = 0; c < dim; ++c) {
      vander(p, c) = 1.0 / (1.0 - std::conj(all[static_cast<size_t>(c)]) *
                                      nodes[static_cast<size_t>(p)]);
    }
  }
  Eigen::ColPivHouseholderQR<CMat> lsq(vander);

  auto expand = [&](const std::function<Complex(Complex)>& fn) {
    CVec values(n_nodes);
    for (Index p = 0; p < n_nodes; ++p) {
      values(p) = fn(nodes[static_cast<size_t>(p)]);
    }
    const CVec coeff = lsq.solve(values);
    const double res = (vander * coeff - values).norm() /
                       std::max(values.norm(), 1e-300);
    if (res > 1e-8) {
      std::ostringstream msg;
      msg << "blaschke_pair: product does not lie in the kernel span, "
          << "interpolation residual " << res;
      throw IllConditionedGram(msg.str());
    }
    return coeff;
  };

  auto kernel_at = [&](Index col) {
    return [point = all[static_cast<size_t>(col)]](Complex z) {
      return 1.0 / (1.0 - std::conj(point) * z);
    };
  };

  // A0 and the direct compressions of P_a, P_b in the coefficient basis.
  CMat a_coeff = CMat::Zero(dim, dim);
  CMat p_coeff = CMat::Zero(dim, dim);
  CMat q_coeff = CMat::Zero(dim, dim);
  for (Index i = 0; i < n_pts; ++i) {
    const Complex scale = -std::conj(blaschke_eval(b, a[static_cast<size_t>(i)]));
    auto ker = kernel_at(i);
    a_coeff.col(i) = expand([&](Complex z) {
      return scale * blaschke_eval(b, z) * ker(z);
    });
    // P_a k_{a_i} = 0; P_b k_{a_i} = conj(B_b(a_i)) B_b k_{a_i} = -A0 k_{a_i}.
    q_coeff.col(i) = -a_coeff.col(i);
  }
  for (Index j = 0; j < n_pts; ++j) {
    const Complex scale =
        std::conj(blaschke_eval(a, b[static_cast<size_t>(j)]));
    auto ker = kernel_at(n_pts + j);
    a_coeff.col(n_pts + j) = expand([&](Complex z) {
      return scale * blaschke_eval(a, z) * ker(z);
    });
    // P_b k_{b_j} = 0; P_a k_{b_j} = A0 k_{b_j}.
    p_coeff.col(n_pts + j) = a_coeff.col(n_pts + j);
  }

  // Orthonormalize through the Cholesky factor of the Gram matrix.
  Eigen::LLT<CMat> llt(gram);
  if (llt.info() != Eigen::Success) {
    throw IllConditionedGram("blaschke_pair: Cholesky of the Gram failed");
  }
  const CMat lstar = llt.matrixL().adjoint();
  const CMat lstar_inv =
      lstar.triangularView<Eigen::Upper>().solve(CMat::Identity(dim, dim));
  auto to_ortho = [&](const CMat& coeff) {
    return CMat(lstar * coeff * lstar_inv);
  };
  const CMat a0_raw = to_ortho(a_coeff);
  const double herm_res = operator_norm(a0_raw - a0_raw.adjoint()) /
                          std::max(operator_norm(a0_raw), 1e-300);
  if (herm_res > 1e-8) {
    std::ostringstream msg;
    msg << "blaschke_pair: A0 not Hermitian after orthonormalization, "
        << "residual " << herm_res;
    throw IllConditionedGram(msg.str());
  }
  const Hermitian a0(a0_raw);

  // Cross-check: the direct compressions of P_a, P_b are projections with
  // difference A0.
  const CMat p_dir = to_ortho(p_coeff);
  const CMat q_dir = to_ortho(q_coeff);
  const double cross = std::max(
      {operator_norm(p_dir * p_dir - p_dir), operator_norm(p_dir - p_dir.adjoint()),
       operator_norm(q_dir * q_dir - q_dir), operator_norm(q_dir - q_dir.adjoint()),
       operator_norm(p_dir - q_dir - a0.mat())});
  if (cross > 1e-7) {
    std::ostringstream msg;
    msg << "blaschke_pair: direct compression cross-check residual " << cross;
    throw IllConditionedGram(msg.str());
  }

  const DifferenceWitness w = is_difference_of_projections(a0, tol);
  if (!w.is_difference) {
    throw IllConditionedGram("blaschke_pair: A0 failed the membership test: " +
                             w.diagnostic);
  }
  GenericPair gp = GenericPair::create(w.witness->p(), w.witness->q(), tol);

  // Observed spectrum and multiplicities (reported, never asserted).
  const SpectralDecomp d = eigh(a0);
  std::vector<Index> mult;
  Index run = 1;
  for (Index i = 1; i <= d.eigenvalues.size(); ++i) {
    if (i < d.eigenvalues.size() &&
        std::abs(d.eigenvalues(i) - d.eigenvalues(i - 1)) < 1e-9) {
      ++run;
    } else {
      mult.push_back(run);
      run = 1;
    }
  }
  return BlaschkeResult{std::move(gp), d.eigenvalues, std::move(mult)};
}

IdempotentResult idempotent_pair(const Hermitian& b, const Tol& tol) {
  const Index k = b.dim();
  if (k == 0) throw InvalidArgument("idempotent_pair: empty B");
  const SpectralDecomp db = eigh(b);
  const double norm_b = db.eigenvalues.cwiseAbs().maxCoeff();
  for (Index i = 0; i < k; ++i) {
    if (db.eigenvalues(i) <= tol.rank_tol * norm_b) {
      std::ostringstream msg;
      msg << "idempotent_pair: B has eigenvalue " << db.eigenvalues(i)
          << "; must be positive with trivial nullspace";
      throw NotPositive(msg.str());
    }
  }

  const Index n = 2 * k;
  CMat e = CMat::Zero(n, n);
  e.topLeftCorner(k, k) = CMat::Identity(k, k);
  e.topRightCorner(k, k) = b.mat();
  const CMat es = e.adjoint();
  const CMat s = e + es - CMat::Identity(n, n);
  // S^2 = diag(1 + B^2, 1 + B^2); invert blockwise through the spectrum of B.
  const Hermitian inv_block = matrix_function(
      b, [](double x) { return 1.0 / (1.0 + x * x); });
  CMat s2_inv = CMat::Zero(n, n);
  s2_inv.topLeftCorner(k, k) = inv_block.mat();
  s2_inv.bottomRightCorner(k, k) = inv_block.mat();
  const CMat s_inv = s * s2_inv;

  const CMat p = e * s_inv;
  const CMat q = es * s_inv;
  const CMat a = (e - es) * s_inv;

  // Closed form from the same functional calculus.
  const Hermitian b2_part = matrix_function(
      b, [](double x) { return x * x / (1.0 + x * x); });
  const Hermitian b_part = matrix_function(
      b, [](double x) { return x / (1.0 + x * x); });
  CMat a_closed(n, n);
  a_closed.topLeftCorner(k, k) = b2_part.mat();
  a_closed.topRightCorner(k, k) = -b_part.mat();
  a_closed.bottomLeftCorner(k, k) = -b_part.mat();
  a_closed.bottomRightCorner(k, k) = -b2_part.mat();

  IdempotentResult out{
      GenericPair::create(0.5 * (p + p.adjoint().eval()),
                          0.5 * (q + q.adjoint().eval()), tol),
      operator_norm(a - a_closed), 0.0, 0, true, 0.0};

  // Commutant description [[Y, Z], [Z, Y + 2BZ]] with Y, Z commuting with
  // B: verify on random samples that such elements commute with A0.
  Rng rng = make_rng(20240515u);
  const int samples = 25;
  out.commutant_samples = samples;
  std::vector<std::pair<Index, Index>> b_clusters;
  {
    Index begin = 0;
    for (Index i = 1; i <= k; ++i) {
      if (i == k ||
          std::abs(db.eigenvalues(i) - db.eigenvalues(begin)) > 1e-9) {
        b_clusters.emplace_back(begin, i);
        begin = i;
      }
    }
  }
  auto random_b_commuting = [&]() {
    CMat m = CMat::Zero(k, k);
    for (const auto& [begin, end] : b_clusters) {
      const Index kk = end - begin;
      m.block(begin, begin, kk, kk) = randn_complex(rng, kk, kk);
    }
    return CMat(db.eigenvectors * m * db.eigenvectors.adjoint());
  };
  const double norm_a = operator_norm(a);
  for (int t = 0; t < samples; ++t) {
    const CMat y = random_b_commuting();
    const CMat z = random_b_commuting();
    CMat m(n, n);
    m.topLeftCorner(k, k) = y;
    m.topRightCorner(k, k) = z;
    m.bottomLeftCorner(k, k) = z;
    m.bottomRightCorner(k, k) = y + 2.0 * b.mat() * z;
    const double res =
        operator_norm(m * a - a * m) /
        std::max(norm_a * operator_norm(m), 1e-300);
    out.commutant_residual = std::max(out.commutant_residual, res);
  }
  if (out.commutant_residual > 1e-9) {
    std::ostringstream msg;
    msg << "idempotent_pair: commutant description violated, residual "
        << out.commutant_residual;
    throw InconsistentReport(msg.str());
  }

  // Isotropy commutativity: commutative iff every eigenvalue of B (hence
  // every angle of Gamma = arctan(B)) is simple.
  out.isotropy_commutative =
      static_cast<Index>(b_clusters.size()) == k;
  if (!out.isotropy_commutative) {
    const IsotropyElement w1 = isotropy_sample(out.pair.frame(), 11u);
    const IsotropyElement w2 = isotropy_sample(out.pair.frame(), 22u);
    out.isotropy_commutator =
        operator_norm(w1.ambient * w2.ambient - w2.ambient * w1.ambient);
  }
  return out;
}

}  // namespace projpair
