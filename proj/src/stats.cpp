#include "kfold/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace kfold {

MeanStdErr mean_stderr(const std::vector<double>& xs) {
  MeanStdErr r;
  r.n = (long)xs.size();
  if (r.n == 0) return r;
  double s = 0;
  for (double x : xs) s += x;
  r.mean = s / r.n;
  if (r.n < 2) return r;
  double v = 0;
  for (double x : xs) v += (x - r.mean) * (x - r.mean);
  r.std_error = std::sqrt(v / ((r.n - 1.0) * r.n));
  return r;
}

// series / continued fraction for the regularized incomplete gamma
static double gamma_p_series(double a, double x) {
  double ap = a, sum = 1.0 / a, del = sum;
  for (int i = 0; i < 500; ++i) {
    ap += 1;
    del *= x / ap;
    sum += del;
    if (std::abs(del) < std::abs(sum) * 1e-15) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

static double gamma_q_cf(double a, double x) {
  double b = x + 1 - a, c = 1e300, d = 1 / b, h = d;
  for (int i = 1; i <= 500; ++i) {
    double an = -i * (i - a);
    b += 2;
    d = an * d + b;
    if (std::abs(d) < 1e-300) d = 1e-300;
    c = b + an / c;
    if (std::abs(c) < 1e-300) c = 1e-300;
    d = 1 / d;
    double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-15) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

double gamma_q(double a, double x) {
  if (x < 0 || a <= 0) throw std::invalid_argument("gamma_q: bad arguments");
  if (x == 0) return 1.0;
  if (x < a + 1) return 1.0 - gamma_p_series(a, x);
  return gamma_q_cf(a, x);
}

double chi2_sf(double x, int dof) { return gamma_q(dof / 2.0, x / 2.0); }

double chi2_quantile(double p, int dof) {
  if (p <= 0 || p >= 1) throw std::invalid_argument("chi2_quantile: p in (0,1)");
  double lo = 0, hi = dof + 100.0 * std::sqrt((double)dof) + 100.0;
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    if (1.0 - chi2_sf(mid, dof) < p)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

KsResult ks_two_sample(std::vector<double> x, std::vector<double> y) {
  if (x.size() < 2 || y.size() < 2)
    throw std::invalid_argument("ks_two_sample: too few samples");
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  double nx = (double)x.size(), ny = (double)y.size();
  size_t i = 0, j = 0;
  double d = 0;
  while (i < x.size() && j < y.size()) {
    double vx = x[i], vy = y[j];
    if (vx <= vy) ++i;
    if (vy <= vx) ++j;
    d = std::max(d, std::abs(i / nx - j / ny));
  }
  double ne = nx * ny / (nx + ny);
  double lam = (std::sqrt(ne) + 0.12 + 0.11 / std::sqrt(ne)) * d;
  double p = 0;
  for (int k = 1; k <= 100; ++k) {
    double term = 2.0 * ((k % 2) ? 1.0 : -1.0) * std::exp(-2.0 * k * k * lam * lam);
    p += term;
    if (std::abs(term) < 1e-12) break;
  }
  return {d, std::clamp(p, 0.0, 1.0)};
}

double wigner_surmise_gue(double s) {
  const double c = 32.0 / (M_PI * M_PI);
  return c * s * s * std::exp(-4.0 * s * s / M_PI);
}

static double surmise_mass(double a, double b) {
  // Simpson on a fine grid
  int steps = 200;
  double h = (b - a) / steps, acc = 0;
  for (int i = 0; i < steps; ++i) {
    double x0 = a + i * h, x1 = x0 + h, xm = 0.5 * (x0 + x1);
    acc += (h / 6.0) * (wigner_surmise_gue(x0) + 4 * wigner_surmise_gue(xm) +
                        wigner_surmise_gue(x1));
  }
  return acc;
}

Chi2Gof chi2_gof_wigner_gue(const std::vector<double>& samples, int bins,
                            double lo, double hi) {
  if (bins < 3 || hi <= lo) throw std::invalid_argument("chi2_gof: bad binning");
  std::vector<double> prob(bins), count(bins, 0.0);
  double w = (hi - lo) / bins;
  for (int b = 0; b < bins; ++b) prob[b] = surmise_mass(lo + b * w, lo + (b + 1) * w);
  // fold tail mass into the edge bins
  prob[0] += surmise_mass(0, lo);
  prob[bins - 1] += 1.0 - surmise_mass(0, hi);
  for (double s : samples) {
    int b = (int)std::floor((s - lo) / w);
    b = std::clamp(b, 0, bins - 1);
    count[b] += 1.0;
  }
  double n = (double)samples.size();
  Chi2Gof r;
  for (int b = 0; b < bins; ++b) {
    double e = n * prob[b];
    if (e < 1e-12) continue;
    r.statistic += (count[b] - e) * (count[b] - e) / e;
  }
  r.dof = bins - 1;
  r.p_value = chi2_sf(r.statistic, r.dof);
  return r;
}

}  // namespace kfold
