#pragma once
#include <functional>

#include "kfold/commutant.hpp"
#include "kfold/rng.hpp"

namespace kfold {

Cmat haar_unitary(int n, Rng& rng);
Cmat haar_unitary(int n, std::uint64_t seed);

// Haar-distributed element of O(3).
Rmat haar_o3(Rng& rng);

Cmat sample_gue(int n, double scale, std::uint64_t seed);
Rmat sample_goe(int n, double scale, std::uint64_t seed);

// Samples H with vec_h(H) ~ N(0, Delta^{-1}); precomputes the transform
// once so large batches are cheap.
class KFoldSampler {
 public:
  explicit KFoldSampler(const PrecisionForm& pf);
  Cmat sample(std::uint64_t seed) const;
  int n() const { return n_; }

 private:
  Rmat transform_;  // Q diag(1/sqrt(eig)) on vec_h coordinates
  int n_;
};

Cmat sample_kfold(const PrecisionForm& pf, std::uint64_t seed);

Cmat sample_tensor_product(const std::vector<int>& dims, double scale,
                           std::uint64_t seed);
Cmat power_fold(const Cmat& H, int k);
Cmat sample_power_fold(int n, double scale, int k, std::uint64_t seed);

struct Edge {
  int i = 0;
  int j = 0;
  double J = 1.0;
};

// Spin-1/2 disordered Heisenberg: H = sum_e J_e S_i.S_j + sum_i n_i.S_i
// with i.i.d. isotropic Gaussian fields n_i of the given scale.
class HeisenbergSampler {
 public:
  HeisenbergSampler(int n_sites, const std::vector<Edge>& edges, double noise_scale);
  Cmat sample(std::uint64_t seed) const;
  const Cmat& noiseless() const { return H0_; }
  int n_sites() const { return n_sites_; }

 private:
  int n_sites_;
  double noise_scale_;
  Cmat H0_;
  std::vector<Cmat> field_ops_;  // S^x_i, S^y_i, S^z_i per site
};

Cmat sample_heisenberg(int n_sites, const std::vector<Edge>& edges,
                       double noise_scale, std::uint64_t seed);

// Spin-1 disordered O(3) model in the real Cartesian basis:
// H = sum_e J_e S_i^T O_e S_j with O_e Haar on O(3) (identity when
// disorder is disabled).
Rmat sample_o3(int n_sites, const std::vector<Edge>& edges, std::uint64_t seed,
               bool disorder = true);

struct QuantumDouble {
  int group_order = 0;
  int n_edges = 0;
  int width = 0, height = 0;
  std::vector<Cmat> vertex_ops;     // A(v)
  std::vector<Cmat> plaquette_ops;  // B(p)
  Cmat hamiltonian;                 // -sum A - sum B
};

// Kitaev-style quantum double of a finite group (given by its
// multiplication table, 0 = identity) on a width x height torus.
QuantumDouble quantum_double(const std::vector<std::vector<int>>& table,
                             int width, int height);

// Conjugation implementing the relabeling |g> -> |qg> on every edge.
Cmat gauge_relabel_operator(const QuantumDouble& qd, int q,
                            const std::vector<std::vector<int>>& table);

struct FirstMomentFit {
  Cmat estimate;  // MC mean of U (x) conj(U)
  double alpha = 0, beta = 0;
  double alpha_se = 0, beta_se = 0;
  double residual_op_norm = 0;  // ||estimate - fit||_2
  double estimate_op_norm = 0;
};

FirstMomentFit unitary_double_first_moment(int d, int mc_samples, std::uint64_t seed);

struct SampleBatch {
  std::uint64_t master_seed = 0;
  std::vector<std::uint64_t> seeds;
  std::vector<Cmat> samples;
};

// Deterministic batch: per-sample seed = derive_seed(master, index);
// identical results for any thread count.
SampleBatch generate_batch(const std::function<Cmat(std::uint64_t)>& sampler,
                           int n_samples, std::uint64_t master_seed, int threads = 1);

}  // namespace kfold
