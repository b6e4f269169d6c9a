#pragma once
#include "kfold/errors.hpp"
#include "kfold/tensor.hpp"

namespace kfold {

enum class PermSign { trivial, sign };

struct ConstraintSet {
  int k = 1;
  int d = 2;
  bool include_permutation_symmetry = true;
  PermSign permutation_sign = PermSign::trivial;
  bool include_half_swap = true;
};

// The family of quadratic forms allowed by the invariance constraints.
// All complex operators act on the n^2-dimensional vec space of H
// (n = d^k); real operators act on vec_h coordinates.
struct InvariantFamily {
  ConstraintSet constraints;
  int n = 0;  // d^k

  // orthonormal basis of the permutation-symmetrized mixed commutant
  std::vector<Cmat> complex_basis;
  // Hermitian basis of its self-adjoint part (used by block_decompose)
  std::vector<Cmat> complex_selfadjoint_basis;
  // Hermitian basis of the self-adjoint part after the half-swap
  // centralizer restriction (= complex_selfadjoint_basis when the
  // half-swap constraint is off); parameterizes build_precision.
  std::vector<Cmat> param_basis;
  // orthonormal real-symmetric basis on vec_h coordinates
  std::vector<Rmat> real_basis;

  int complex_commutant_dim = 0;
  int hermitian_dim = 0;
  int realized_real_dim = 0;

  // diagnostic singular spectra (descending)
  Rvec span_singular_values;        // of the stacked symmetrized operators
  Rvec centralizer_singular_values; // of the half-swap commutator map
  Rvec realized_singular_values;    // of the stacked realized real forms
};

struct PrecisionForm {
  Rvec coefficients;
  Rmat delta;  // real symmetric PD on vec_h coordinates
  double eigenvalue_floor = 0.0;
  int n = 0;
};

struct BlockStructure {
  Cmat basis_change;  // unitary; columns grouped by sector
  // (multiplicity, identity-factor dimension) per sector
  std::vector<std::pair<int, int>> sectors;
};

// (2k)! partial-transposed permutation operators spanning the commutant
// of the mixed action U^{(x)k} (x) conj(U)^{(x)k}.
std::vector<TensorOperator> mixed_commutant_basis(int k, int d);

InvariantFamily symmetrized_family(const ConstraintSet& cs);

struct DimensionAuditRow {
  int d = 0;
  int complex_dim = 0;
  int hermitian_dim = 0;
  int hermitian_dim_no_half_swap = 0;
  int sign_complex_dim = 0;
  int sign_hermitian_dim = 0;
  int realized_real_dim = 0;
  double span_gap = 0.0;  // ratio of smallest kept to largest dropped s.v.
  Rvec span_singular_values;
  Rvec centralizer_singular_values;
  Rvec realized_singular_values;
  bool d_dependence_warning = false;
};

std::vector<DimensionAuditRow> dimension_audit(int k, const std::vector<int>& ds);

BlockStructure block_decompose(const InvariantFamily& family,
                               std::uint64_t seed = 12345);

PrecisionForm build_precision(const InvariantFamily& family, const Rvec& coefficients);

// Coefficients over param_basis reproducing lambda * identity
// (the GUE precision when lambda > 0).
Rvec scalar_precision_coefficients(const InvariantFamily& family, double lambda);

}  // namespace kfold
