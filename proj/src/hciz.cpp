#include "kfold/hciz.hpp"

#include <algorithm>
#include <numeric>

#include "kfold/ensembles.hpp"
#include "kfold/errors.hpp"
#include "kfold/partitions.hpp"
#include "kfold/rng.hpp"

namespace kfold {

static void validate(const HcizProblem& p) {
  if (p.n < 1 || p.a.size() != p.n || p.b.size() != p.n)
    throw std::invalid_argument("hciz: inconsistent problem sizes");
  if (!p.a.allFinite() || !p.b.allFinite() || !std::isfinite(p.t))
    throw std::invalid_argument("hciz: non-finite inputs");
}

static double vandermonde(const Rvec& v) {
  double prod = 1;
  for (long i = 0; i < v.size(); ++i)
    for (long j = i + 1; j < v.size(); ++j) prod *= v(j) - v(i);
  return prod;
}

static double min_separation(const Rvec& v) {
  std::vector<double> s(v.data(), v.data() + v.size());
  std::sort(s.begin(), s.end());
  double m = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i + 1 < s.size(); ++i) m = std::min(m, s[i + 1] - s[i]);
  return m;
}

static double hciz_determinantal(const Rvec& a, const Rvec& b, double t) {
  long n = a.size();
  Rmat M(n, n);
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) M(i, j) = std::exp(t * a(i) * b(j));
  double det = M.fullPivLu().determinant();
  double pref = 1;
  for (int p = 1; p < n; ++p) pref *= factorial(p);
  double tpow = std::pow(t, (double)(n * (n - 1)) / 2.0);
  return det * pref / (tpow * vandermonde(a) * vandermonde(b));
}

HcizResult hciz_exact(const HcizProblem& p) {
  validate(p);
  HcizResult out;
  long n = p.n;
  if (n == 1) {
    out.value = std::exp(p.t * p.a(0) * p.b(0));
    return out;
  }
  if (p.t == 0) {
    out.value = 1.0;
    return out;
  }
  double spread_a = p.a.maxCoeff() - p.a.minCoeff();
  double spread_b = p.b.maxCoeff() - p.b.minCoeff();
  // constant a or b: the integrand no longer depends on U
  if (spread_a == 0 || spread_b == 0) {
    out.value = std::exp(p.t * (spread_a == 0 ? p.a(0) * p.b.sum() : p.b(0) * p.a.sum()));
    return out;
  }
  double scale_a = std::max(1.0, p.a.cwiseAbs().maxCoeff());
  double scale_b = std::max(1.0, p.b.cwiseAbs().maxCoeff());
  if (min_separation(p.a) > 1e-8 * scale_a && min_separation(p.b) > 1e-8 * scale_b) {
    out.value = hciz_determinantal(p.a, p.b, p.t);
    return out;
  }
  // degenerate path: spread the clustered entries and Richardson-extrapolate
  auto perturbed = [&](const Rvec& v, double eps, double scale) {
    Rvec w = v;
    std::vector<long> idx(v.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](long x, long y) { return v(x) < v(y); });
    for (long r = 0; r < (long)idx.size(); ++r)
      w(idx[r]) += eps * scale * (double)r;
    return w;
  };
  const double eps = 1e-5;
  auto eval = [&](double e) {
    Rvec a2 = min_separation(p.a) > 1e-8 * scale_a ? p.a : perturbed(p.a, e, scale_a);
    Rvec b2 = min_separation(p.b) > 1e-8 * scale_b ? p.b : perturbed(p.b, e, scale_b);
    return hciz_determinantal(a2, b2, p.t);
  };
  double f1 = eval(eps), f2 = eval(eps / 2);
  out.value = 2 * f2 - f1;
  out.error_estimate = std::abs(f2 - f1);
  out.degenerate_path = true;
  return out;
}

McEstimate hciz_monte_carlo(const HcizProblem& p, int samples, std::uint64_t seed) {
  validate(p);
  if (samples < 1000) throw std::invalid_argument("hciz_monte_carlo: need >= 10^3 samples");
  if (p.n > 6) throw resource_limit_error("hciz_monte_carlo: n must be <= 6");
  double sum = 0, sum2 = 0;
  Rng rng(seed);
  for (int s = 0; s < samples; ++s) {
    Cmat U = haar_unitary(p.n, rng);
    double tr = 0;
    for (int i = 0; i < p.n; ++i)
      for (int j = 0; j < p.n; ++j) tr += p.a(i) * p.b(j) * std::norm(U(i, j));
    double v = std::exp(p.t * tr);
    sum += v;
    sum2 += v * v;
  }
  McEstimate est;
  est.value = sum / samples;
  double var = std::max(0.0, sum2 / samples - est.value * est.value);
  est.std_error = std::sqrt(var / (samples - 1.0));
  return est;
}

double weyl_sum(const Rvec& x, const Rvec& y) {
  if (x.size() != y.size()) throw std::invalid_argument("weyl_sum: length mismatch");
  int n = (int)x.size();
  double acc = 0;
  for (const auto& w : all_permutations(n)) {
    double dot = 0;
    for (int i = 0; i < n; ++i) dot += x(w[i]) * y(i);
    acc += perm_sign(w) * std::exp(dot);
  }
  return acc / (double)factorial(n);
}

}  // namespace kfold
