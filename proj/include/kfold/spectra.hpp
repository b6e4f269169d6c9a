#pragma once
#include "kfold/errors.hpp"
#include "kfold/tensor.hpp"

namespace kfold {

struct EighResult {
  Rvec eigenvalues;  // ascending
  Cmat eigenvectors; // orthonormal columns
};

EighResult eigh(const Cmat& H, double tol = 1e-10);

// eigh with deterministic eigenvector fixing: degenerate subspaces are
// resolved by a fixed diagonal perturbation and phases are set so the
// largest-modulus entry of each vector is real positive.
EighResult eigh_deterministic(const Cmat& H, double tol = 1e-10);

struct SpacingRatios {
  Rvec ratios;
  double mean = 0;
  int merged_degeneracies = 0;
};

// r_i = min(s_i, s_{i+1}) / max(s_i, s_{i+1}); spacings below
// 1e-12 * spectral width are merged first (physical degeneracies).
SpacingRatios spacing_ratios(const Rvec& eigenvalues);

// Polynomial unfolding of the integrated density; returns spacings in
// units of the local mean spacing (sample mean ~ 1).
Rvec unfold(const Rvec& eigenvalues, int poly_degree);

// Schmidt values (descending) of the d_L x d_R reshaping of a unit vector.
Rvec entanglement_spectrum(const Cvec& psi, int d_L, int d_R, double tol = 1e-10);

struct WordFactor {
  Perm sigma;
  int power = 1;
};
using WordSpec = std::vector<WordFactor>;

// Tr[ prod_i (S_sigma_i H S_sigma_i^dag)^{p_i} ] on V^{(x)k}.
std::complex<double> invariant_word_trace(const Cmat& H, int d, int k,
                                          const WordSpec& word);

// Mean |<psi^L_m | psi^R_m'>|^2 over the leading Schmidt vectors of the
// top_m highest-eigenvalue eigenvectors of H on C^{d^2}.
double schmidt_overlap_stat(const Cmat& H, int top_m);

// Monte-Carlo twirl of X into the commutant of U^{(x)k}.
Cmat twirl(const Cmat& X, int k, int d, int n_haar, std::uint64_t seed);

// Exact refinement: orthogonal projection of X onto the joint nullspace of
// the commutator maps with n_unitaries fixed Haar unitaries W^{(x)k}.
Cmat refine_commutant(const Cmat& X, int k, int d, int n_unitaries,
                      std::uint64_t seed);

// Relative residual of X against span{S_sigma : sigma in S_k}.
double perm_span_residual(const Cmat& X, int k, int d);

}  // namespace kfold
