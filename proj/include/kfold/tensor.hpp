#pragma once
#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "kfold/partitions.hpp"

namespace kfold {

using Cmat = Eigen::MatrixXcd;
using Cvec = Eigen::VectorXcd;
using Rmat = Eigen::MatrixXd;
using Rvec = Eigen::VectorXd;

// Permutation of {0..k-1}, images listed in order.
using Perm = std::vector<int>;

// Dense operator on (C^d)^{(x)legs}; leg 1 is the slowest index.
struct TensorOperator {
  Cmat mat;
  int d = 0;
  int legs = 0;
};

std::vector<Perm> all_permutations(int k);
Perm compose(const Perm& s, const Perm& t);  // (s*t)(p) = s(t(p))
Perm inverse(const Perm& s);
int cycle_count(const Perm& s);
int perm_sign(const Perm& s);
Partition cycle_type(const Perm& s);

// S_sigma |i_1 ... i_k> = |j_1 ... j_k> with j_{sigma(p)} = i_p,
// so S_s S_t = S_{st}.
TensorOperator permutation_operator(const Perm& sigma, int d);

// Involution exchanging the first k and last k legs of V^{(x)2k}.
TensorOperator half_swap(int k, int d);

// Keep the listed legs (0-based, any order-insensitive subset).
TensorOperator partial_trace(const TensorOperator& O, const std::vector<int>& kept);

// Transpose the listed legs only.
TensorOperator partial_transpose(const TensorOperator& O, const std::vector<int>& legs);

struct SchmidtDecomposition {
  Rvec values;               // descending, nonnegative
  std::vector<Cmat> left;    // orthonormal under Tr[A^dag B]
  std::vector<Cmat> right;
};

// Operator Schmidt decomposition across the split (left legs | rest).
SchmidtDecomposition operator_schmidt(const TensorOperator& O,
                                      const std::vector<int>& left_legs);

// Orthonormal Hermitian basis: n diagonal units, then per pair i<j the
// (E_ij+E_ji)/sqrt2 and i(E_ij-E_ji)/sqrt2 elements, pairs in lex order.
std::vector<Cmat> hermitian_basis(int n);

// Real coordinates of a Hermitian matrix in that basis (isometry:
// |vec_h(H)|^2 = Tr[H^2]); mutually inverse with unvec_h.
Rvec vec_h(const Cmat& H, double tol = 1e-10);
Cmat unvec_h(const Rvec& v);

// Column stacking, vec(ABC) = (C^T (x) A) vec(B).
Cvec complex_vec(const Cmat& H);
Cmat complex_unvec(const Cvec& v, int n);

// Real orthogonal R with vec_h(U H U^dag) = R vec_h(H).
Rmat adjoint_action_matrix(const Cmat& U, double tol = 1e-10);

// Real quadratic form on vec_h coordinates induced by a Hermitian operator
// X on the complex vec space: v^dag X v with v = complex_vec(H).
Rmat hermitian_coord_form(const Cmat& X, int n);

}  // namespace kfold
