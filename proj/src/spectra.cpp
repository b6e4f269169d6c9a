#include "kfold/spectra.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include "kfold/ensembles.hpp"

namespace kfold {

EighResult eigh(const Cmat& H, double tol) {
  long n = H.rows();
  if (H.cols() != n || (H - H.adjoint()).cwiseAbs().maxCoeff() >
                           tol * std::max(1.0, H.cwiseAbs().maxCoeff()))
    throw std::invalid_argument("eigh: input not Hermitian within tolerance");
  Eigen::SelfAdjointEigenSolver<Cmat> es(0.5 * (H + H.adjoint()));
  return {es.eigenvalues(), es.eigenvectors()};
}

EighResult eigh_deterministic(const Cmat& H, double tol) {
  EighResult r = eigh(H, tol);
  long n = r.eigenvalues.size();
  double width = std::max(r.eigenvalues(n - 1) - r.eigenvalues(0), 1e-300);
  // resolve degenerate clusters with a fixed diagonal perturbation
  long begin = 0;
  for (long i = 1; i <= n; ++i) {
    if (i == n || r.eigenvalues(i) - r.eigenvalues(i - 1) > 1e-10 * width) {
      long sz = i - begin;
      if (sz > 1) {
        Cmat V = r.eigenvectors.middleCols(begin, sz);
        Rvec diag(n);
        for (long j = 0; j < n; ++j) diag(j) = (double)(j + 1) / (double)n;
        Cmat sub = V.adjoint() * diag.asDiagonal() * V;
        Eigen::SelfAdjointEigenSolver<Cmat> es(0.5 * (sub + sub.adjoint()));
        r.eigenvectors.middleCols(begin, sz) = V * es.eigenvectors();
      }
      begin = i;
    }
  }
  for (long c = 0; c < n; ++c) {
    long imax = 0;
    r.eigenvectors.col(c).cwiseAbs().maxCoeff(&imax);
    std::complex<double> z = r.eigenvectors(imax, c);
    if (std::abs(z) > 0) r.eigenvectors.col(c) *= std::conj(z) / std::abs(z);
  }
  return r;
}

SpacingRatios spacing_ratios(const Rvec& eigenvalues) {
  long n = eigenvalues.size();
  if (n < 3) throw std::invalid_argument("spacing_ratios: need at least 3 eigenvalues");
  double width = std::max(eigenvalues(n - 1) - eigenvalues(0), 1e-300);
  std::vector<double> lev;
  lev.push_back(eigenvalues(0));
  SpacingRatios out;
  for (long i = 1; i < n; ++i) {
    if (eigenvalues(i) - lev.back() < 1e-12 * width)
      out.merged_degeneracies++;
    else
      lev.push_back(eigenvalues(i));
  }
  long m = (long)lev.size();
  if (m < 3) throw std::invalid_argument("spacing_ratios: spectrum collapses under merging");
  out.ratios.resize(m - 2);
  double acc = 0;
  for (long i = 0; i + 2 < m; ++i) {
    double s1 = lev[i + 1] - lev[i], s2 = lev[i + 2] - lev[i + 1];
    double r = std::min(s1, s2) / std::max(s1, s2);
    out.ratios(i) = r;
    acc += r;
  }
  out.mean = acc / (double)(m - 2);
  return out;
}

Rvec unfold(const Rvec& eigenvalues, int poly_degree) {
  long n = eigenvalues.size();
  if (n < 10) throw std::invalid_argument("unfold: need at least 10 eigenvalues");
  if (poly_degree < 3 || poly_degree > 15)
    throw std::invalid_argument("unfold: degree must be in [3, 15]");
  double lo = eigenvalues(0), hi = eigenvalues(n - 1);
  if (hi - lo <= 0) throw numerical_degeneracy_error("unfold: degenerate spectrum");
  // fit the staircase N(E) = i + 1/2 with a polynomial in the rescaled energy
  Rmat A(n, poly_degree + 1);
  for (long i = 0; i < n; ++i) {
    double x = 2.0 * (eigenvalues(i) - lo) / (hi - lo) - 1.0;
    double p = 1.0;
    for (int j = 0; j <= poly_degree; ++j) {
      A(i, j) = p;
      p *= x;
    }
  }
  Rvec y(n);
  for (long i = 0; i < n; ++i) y(i) = (double)i + 0.5;
  Eigen::ColPivHouseholderQR<Rmat> qr(A);
  if (qr.rank() < poly_degree + 1)
    throw numerical_degeneracy_error("unfold: rank-deficient polynomial fit");
  Rvec coef = qr.solve(y);
  Rvec fitted = A * coef;
  Rvec spacings(n - 1);
  for (long i = 0; i + 1 < n; ++i) spacings(i) = fitted(i + 1) - fitted(i);
  return spacings;
}

Rvec entanglement_spectrum(const Cvec& psi, int d_L, int d_R, double tol) {
  if ((long)d_L * d_R != psi.size())
    throw std::invalid_argument("entanglement_spectrum: shape mismatch");
  if (std::abs(psi.norm() - 1.0) > tol)
    throw std::invalid_argument("entanglement_spectrum: vector is not normalized");
  Cmat M(d_L, d_R);
  for (int a = 0; a < d_L; ++a)
    for (int b = 0; b < d_R; ++b) M(a, b) = psi((long)a * d_R + b);
  Eigen::JacobiSVD<Cmat> svd(M);
  return svd.singularValues();
}

std::complex<double> invariant_word_trace(const Cmat& H, int d, int k,
                                          const WordSpec& word) {
  long n = H.rows();
  long expect = 1;
  for (int i = 0; i < k; ++i) expect *= d;
  if (n != expect || H.cols() != n)
    throw std::invalid_argument("invariant_word_trace: H is not d^k x d^k");
  if (word.empty()) throw std::invalid_argument("invariant_word_trace: empty word");
  Cmat prod = Cmat::Identity(n, n);
  for (const auto& f : word) {
    if ((int)f.sigma.size() != k || f.power < 1)
      throw std::invalid_argument("invariant_word_trace: bad word factor");
    Cmat S = permutation_operator(f.sigma, d).mat;
    Cmat Hs = S * H * S.adjoint();
    for (int p = 0; p < f.power; ++p) prod = (prod * Hs).eval();
  }
  return prod.trace();
}

double schmidt_overlap_stat(const Cmat& H, int top_m) {
  long n2 = H.rows();
  int d = (int)std::llround(std::sqrt((double)n2));
  if ((long)d * d != n2) throw std::invalid_argument("schmidt_overlap_stat: size is not d^2");
  if (top_m < 1 || (long)top_m > n2)
    throw std::invalid_argument("schmidt_overlap_stat: bad top_m");
  EighResult er = eigh_deterministic(H);
  std::vector<Cvec> lead_l, lead_r;
  for (int m = 0; m < top_m; ++m) {
    Cvec psi = er.eigenvectors.col(n2 - 1 - m);
    Cmat M(d, d);
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) M(a, b) = psi((long)a * d + b);
    Eigen::JacobiSVD<Cmat> svd(M, Eigen::ComputeFullU | Eigen::ComputeFullV);
    lead_l.push_back(svd.matrixU().col(0));
    lead_r.push_back(svd.matrixV().col(0).conjugate());
  }
  double acc = 0;
  for (int a = 0; a < top_m; ++a)
    for (int b = 0; b < top_m; ++b)
      acc += std::norm(lead_l[a].dot(lead_r[b]));
  return acc / ((double)top_m * top_m);
}

Cmat twirl(const Cmat& X, int k, int d, int n_haar, std::uint64_t seed) {
  long n = X.rows();
  Cmat acc = Cmat::Zero(n, n);
  for (int s = 0; s < n_haar; ++s) {
    Cmat U = haar_unitary(d, derive_seed(seed, s));
    Cmat Uk = U;
    for (int i = 1; i < k; ++i) Uk = Eigen::kroneckerProduct(Uk, U).eval();
    acc += Uk * X * Uk.adjoint();
  }
  return acc / (double)n_haar;
}

Cmat refine_commutant(const Cmat& X, int k, int d, int n_unitaries,
                      std::uint64_t seed) {
  long n = X.rows();
  Cmat stacked(n_unitaries * n * n, n * n);
  for (int s = 0; s < n_unitaries; ++s) {
    Cmat U = haar_unitary(d, derive_seed(seed ^ 0xabcdef, s));
    Cmat Uk = U;
    for (int i = 1; i < k; ++i) Uk = Eigen::kroneckerProduct(Uk, U).eval();
    // vec([W, X]) = (I (x) W - W^T (x) I) vec(X), column stacking
    Cmat comm = Eigen::kroneckerProduct(Cmat::Identity(n, n), Uk).eval() -
                Eigen::kroneckerProduct(Uk.transpose(), Cmat::Identity(n, n)).eval();
    stacked.middleRows((long)s * n * n, n * n) = comm;
  }
  Eigen::BDCSVD<Cmat> svd(stacked, Eigen::ComputeThinV);
  Rvec sv = svd.singularValues();
  double top = sv(0);
  long rank = 0;
  while (rank < sv.size() && sv(rank) > 1e-10 * top) ++rank;
  Cmat N = svd.matrixV().rightCols(sv.size() - rank);
  Cvec v = complex_vec(X);
  return complex_unvec(N * (N.adjoint() * v), (int)n);
}

double perm_span_residual(const Cmat& X, int k, int d) {
  auto perms = all_permutations(k);
  std::vector<Cmat> ops;
  for (const auto& s : perms) ops.push_back(permutation_operator(s, d).mat);
  int r = (int)ops.size();
  Cmat G(r, r);
  Cvec rhs(r);
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < r; ++j) G(i, j) = (ops[i].conjugate().cwiseProduct(ops[j])).sum();
    rhs(i) = (ops[i].conjugate().cwiseProduct(X)).sum();
  }
  Cvec c = G.ldlt().solve(rhs);
  Cmat proj = Cmat::Zero(X.rows(), X.cols());
  for (int i = 0; i < r; ++i) proj += c(i) * ops[i];
  return (X - proj).norm() / std::max(X.norm(), 1e-300);
}

}  // namespace kfold
