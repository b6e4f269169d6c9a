#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unsupported/Eigen/KroneckerProduct>

#include "kfold/commutant.hpp"
#include "kfold/ensembles.hpp"

using namespace kfold;

TEST_CASE("mixed commutant basis commutes with the mixed action") {
  int k = 2, d = 2;
  auto ops = mixed_commutant_basis(k, d);
  REQUIRE(ops.size() == 24);
  Cmat U = haar_unitary(d, 5u);
  Cmat Uk = Eigen::kroneckerProduct(U, U).eval();
  Cmat W = Eigen::kroneckerProduct(Uk.conjugate().eval(), Uk).eval();
  for (const auto& op : ops)
    CHECK((W * op.mat - op.mat * W).norm() < 1e-11 * op.mat.norm());
}

TEST_CASE("mixed commutant cap") {
  CHECK_THROWS_AS(mixed_commutant_basis(2, 9), resource_limit_error);
  CHECK_THROWS_AS(mixed_commutant_basis(3, 5), resource_limit_error);
}

TEST_CASE("commutant dimensions k=2") {
  struct Row { int d, cdim, hdim; };
  for (auto [d, cdim, hdim] : std::vector<Row>{{2, 10, 8}, {3, 15, 12}, {4, 16, 13}}) {
    ConstraintSet cs;
    cs.k = 2;
    cs.d = d;
    auto fam = symmetrized_family(cs);
    CHECK(fam.complex_commutant_dim == cdim);
    CHECK(fam.hermitian_dim == hdim);
    CHECK((int)fam.complex_basis.size() == cdim);
    CHECK((int)fam.param_basis.size() == hdim);
  }
  // without the transpose constraint the self-adjoint part has full dimension
  ConstraintSet cs;
  cs.k = 2;
  cs.d = 4;
  cs.include_half_swap = false;
  auto fam = symmetrized_family(cs);
  CHECK(fam.hermitian_dim == 16);
  CHECK((int)fam.complex_selfadjoint_basis.size() == 16);
}

TEST_CASE("commutant dimensions k=1") {
  ConstraintSet cs;
  cs.k = 1;
  cs.d = 3;
  auto fam = symmetrized_family(cs);
  CHECK(fam.complex_commutant_dim == 2);
  CHECK(fam.hermitian_dim == 2);
}

TEST_CASE("sign-twisted family k=2 d=4") {
  ConstraintSet cs;
  cs.k = 2;
  cs.d = 4;
  cs.permutation_sign = PermSign::sign;
  auto fam = symmetrized_family(cs);
  CHECK(fam.complex_commutant_dim == 8);
  CHECK(fam.hermitian_dim == 4);
  // sign-twisted span is orthogonal to the trivially symmetrized span
  ConstraintSet cst = cs;
  cst.permutation_sign = PermSign::trivial;
  auto triv = symmetrized_family(cst);
  for (const auto& a : fam.complex_basis)
    for (const auto& b : triv.complex_basis)
      CHECK(std::abs((a.adjoint() * b).trace()) < 1e-9);
}

TEST_CASE("family elements commute with the symmetrized mixed action") {
  ConstraintSet cs;
  cs.k = 2;
  cs.d = 3;
  auto fam = symmetrized_family(cs);
  Cmat U = haar_unitary(3, 17u);
  Cmat Uk = Eigen::kroneckerProduct(U, U).eval();
  Cmat W = Eigen::kroneckerProduct(Uk.conjugate().eval(), Uk).eval();
  Cmat S = permutation_operator({1, 0}, 3).mat;
  Cmat WS = Eigen::kroneckerProduct(S, S).eval();
  Cmat T = half_swap(2, 3).mat;
  for (const auto& e : fam.complex_basis) {
    CHECK((W * e - e * W).norm() < 1e-10);
    CHECK((WS * e - e * WS).norm() < 1e-10);
  }
  for (const auto& e : fam.param_basis) {
    CHECK((e - e.adjoint()).norm() < 1e-10);
    CHECK((T * e - e * T).norm() < 1e-9);
  }
}

TEST_CASE("dimension audit") {
  auto rows = dimension_audit(2, {2, 3, 4, 5});
  REQUIRE(rows.size() == 4);
  int expect_c[] = {10, 15, 16, 16};
  int expect_h[] = {8, 12, 13, 13};
  // matches the exact sign-sector C-coefficient square sums 4/8/8/8
  int expect_sc[] = {4, 8, 8, 8};
  for (int i = 0; i < 4; ++i) {
    CHECK(rows[i].complex_dim == expect_c[i]);
    CHECK(rows[i].hermitian_dim == expect_h[i]);
    CHECK(rows[i].hermitian_dim_no_half_swap == expect_c[i]);
    CHECK(rows[i].sign_complex_dim == expect_sc[i]);
    CHECK(rows[i].span_gap > 1e3);
    CHECK(rows[i].d_dependence_warning == (i < 2));
  }
  // the realization onto real quadratic forms has a 2-dim kernel at d >= 4
  // (purely imaginary Hermitian combinations), confirmed by a ~1e14
  // singular-value gap
  CHECK(rows[2].realized_real_dim == 11);
  CHECK(rows[3].realized_real_dim == 11);
}

TEST_CASE("block decomposition k=2 d=4") {
  ConstraintSet cs;
  cs.k = 2;
  cs.d = 4;
  auto fam = symmetrized_family(cs);
  auto bs = block_decompose(fam);
  REQUIRE(bs.sectors.size() == 7);
  std::vector<int> mults, dims;
  for (auto [m, dim] : bs.sectors) {
    mults.push_back(m);
    dims.push_back(dim);
  }
  std::sort(mults.begin(), mults.end());
  std::sort(dims.begin(), dims.end());
  CHECK(mults == std::vector<int>{1, 1, 1, 1, 2, 2, 2});
  CHECK(dims == std::vector<int>{1, 15, 15, 20, 45, 45, 84});
  long total = 0, sq = 0;
  for (auto [m, dim] : bs.sectors) {
    total += (long)m * dim;
    sq += (long)m * m;
  }
  CHECK(total == 256);
  CHECK(sq == 16);
  CHECK((bs.basis_change.adjoint() * bs.basis_change -
         Cmat::Identity(256, 256)).norm() < 1e-10);
}

TEST_CASE("block decomposition k=1") {
  ConstraintSet cs;
  cs.k = 1;
  cs.d = 4;
  auto fam = symmetrized_family(cs);
  auto bs = block_decompose(fam);
  REQUIRE(bs.sectors.size() == 2);
  std::vector<int> dims;
  for (auto [m, dim] : bs.sectors) {
    CHECK(m == 1);
    dims.push_back(dim);
  }
  std::sort(dims.begin(), dims.end());
  CHECK(dims == std::vector<int>{1, 15});
}

TEST_CASE("build_precision contracts") {
  ConstraintSet cs;
  cs.k = 2;
  cs.d = 2;
  auto fam = symmetrized_family(cs);
  Rvec good = scalar_precision_coefficients(fam, 1.0);
  auto pf = build_precision(fam, good);
  CHECK(pf.n == 4);
  CHECK((pf.delta - Rmat::Identity(16, 16)).norm() < 1e-9);
  CHECK(pf.eigenvalue_floor > 0.99);
  // wrong coefficient count
  CHECK_THROWS_AS(build_precision(fam, Rvec::Ones(3)), std::invalid_argument);
  // indefinite combinations are rejected
  CHECK_THROWS_AS(build_precision(fam, -good), not_positive_definite_error);
  try {
    build_precision(fam, -good);
  } catch (const not_positive_definite_error& e) {
    CHECK(e.min_eigenvalue < 0);
  }
}

TEST_CASE("generic precision stays in the invariant family") {
  ConstraintSet cs;
  cs.k = 2;
  cs.d = 3;
  auto fam = symmetrized_family(cs);
  Rvec coeff = scalar_precision_coefficients(fam, 2.0);
  // perturb within the family while keeping positivity
  Rng rng(99u);
  for (long i = 0; i < coeff.size(); ++i) coeff(i) += 0.05 * rng.normal();
  auto pf = build_precision(fam, coeff);
  CHECK(pf.eigenvalue_floor > 0);
  // invariance of the form under the adjoint k-fold action
  Cmat U = haar_unitary(3, 123u);
  Rmat R = adjoint_action_matrix(Eigen::kroneckerProduct(U, U).eval());
  CHECK((R.transpose() * pf.delta * R - pf.delta).norm() < 1e-8 * pf.delta.norm());
  // and under transpose + swap symmetries
  Rmat Rt = adjoint_action_matrix(permutation_operator({1, 0}, 3).mat);
  CHECK((Rt.transpose() * pf.delta * Rt - pf.delta).norm() < 1e-8 * pf.delta.norm());
}
