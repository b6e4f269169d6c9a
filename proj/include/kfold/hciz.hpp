#pragma once
#include "kfold/tensor.hpp"

namespace kfold {

struct HcizProblem {
  int n = 1;
  Rvec a, b;
  double t = 1.0;
};

struct HcizResult {
  double value = 0;
  double error_estimate = 0;   // nonzero only on the degenerate path
  bool degenerate_path = false;
};

// Determinantal HCIZ over U(n):
// det[e^{t a_i b_j}] * prod_{p=1}^{n-1} p! / (t^{n(n-1)/2} Delta(a) Delta(b)).
// Near-degenerate eigenvalues are handled by an epsilon-perturbation with
// two-point Richardson extrapolation.
HcizResult hciz_exact(const HcizProblem& p);

struct McEstimate {
  double value = 0;
  double std_error = 0;
};

McEstimate hciz_monte_carlo(const HcizProblem& p, int samples, std::uint64_t seed);

// The bare alternating Weyl-group sum (1/n!) sum_w sgn(w) e^{<w(x), y>}.
double weyl_sum(const Rvec& x, const Rvec& y);

}  // namespace kfold
