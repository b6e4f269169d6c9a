#pragma once
#include <vector>

#include "kfold/tensor.hpp"

namespace kfold {

struct MeanStdErr {
  double mean = 0;
  double std_error = 0;
  long n = 0;
};

MeanStdErr mean_stderr(const std::vector<double>& xs);

// Upper regularized incomplete gamma Q(a, x) and the chi-square survival
// function / quantile built on it.
double gamma_q(double a, double x);
double chi2_sf(double x, int dof);
double chi2_quantile(double p, int dof);  // x with CDF(x) = p

// Two-sample Kolmogorov-Smirnov test; returns (statistic, asymptotic p).
struct KsResult {
  double statistic = 0;
  double p_value = 1;
};
KsResult ks_two_sample(std::vector<double> x, std::vector<double> y);

// Wigner surmise for the GUE, p(s) = (32/pi^2) s^2 exp(-4 s^2 / pi).
double wigner_surmise_gue(double s);

// Binned chi^2 GoF of samples against a density; bins over [lo, hi] plus
// implicit tail mass folded into the edge bins.
struct Chi2Gof {
  double statistic = 0;
  int dof = 0;
  double p_value = 0;
};
Chi2Gof chi2_gof_wigner_gue(const std::vector<double>& samples, int bins,
                            double lo, double hi);

}  // namespace kfold
