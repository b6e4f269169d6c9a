#include "kfold/commutant.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <numeric>

#include "kfold/repcore.hpp"
#include "kfold/rng.hpp"

namespace kfold {

using namespace std::complex_literals;

static long ipow(int d, int k) {
  long r = 1;
  while (k-- > 0) r *= d;
  return r;
}

// Orthonormalize a spanning set via an SVD of the stacked flattened
// operators (columns = ops); returns the kept basis and the full singular
// spectrum (descending). A direct SVD keeps the noise floor near machine
// epsilon, so the 1e-8 relative rank cutoff sits in a wide gap.
static std::pair<std::vector<Cmat>, Rvec> orthonormalize_complex(
    const std::vector<Cmat>& ops, double rel_cutoff = 1e-8) {
  int r = (int)ops.size();
  long N = ops[0].size();
  Cmat A(N, r);
  for (int j = 0; j < r; ++j)
    A.col(j) = Eigen::Map<const Cvec>(ops[j].data(), N);
  Eigen::BDCSVD<Cmat> svd(A, Eigen::ComputeThinU);
  Rvec sv = svd.singularValues();
  std::vector<Cmat> basis;
  double top = sv(0);
  for (int i = 0; i < sv.size(); ++i) {
    if (sv(i) <= rel_cutoff * top) break;
    basis.push_back(Eigen::Map<const Cmat>(svd.matrixU().col(i).data(),
                                           ops[0].rows(), ops[0].cols()));
  }
  return {std::move(basis), std::move(sv)};
}

static std::pair<std::vector<Rmat>, Rvec> orthonormalize_real(
    const std::vector<Rmat>& ops, double rel_cutoff = 1e-8) {
  int r = (int)ops.size();
  long N = ops[0].size();
  Rmat A(N, r);
  for (int j = 0; j < r; ++j)
    A.col(j) = Eigen::Map<const Rvec>(ops[j].data(), N);
  Eigen::BDCSVD<Rmat> svd(A, Eigen::ComputeThinU);
  Rvec sv = svd.singularValues();
  std::vector<Rmat> basis;
  double top = sv(0);
  for (int i = 0; i < sv.size(); ++i) {
    if (sv(i) <= rel_cutoff * top) break;
    basis.push_back(Eigen::Map<const Rmat>(svd.matrixU().col(i).data(),
                                           ops[0].rows(), ops[0].cols()));
  }
  return {std::move(basis), std::move(sv)};
}

// Hermitian orthonormal basis of the self-adjoint part of a complex span.
// The SVD runs over the reals (stacked Re/Im flattenings) so every kept
// basis element is a real combination of Hermitian candidates, hence
// Hermitian itself.
static std::pair<std::vector<Cmat>, Rvec> selfadjoint_part(
    const std::vector<Cmat>& basis, double rel_cutoff = 1e-8) {
  std::vector<Cmat> cand;
  for (const auto& e : basis) {
    cand.push_back(0.5 * (e + e.adjoint()));
    cand.push_back(-0.5i * (e - e.adjoint()));
  }
  int r = (int)cand.size();
  long N = cand[0].size();
  Rmat A(2 * N, r);
  for (int j = 0; j < r; ++j) {
    A.col(j).head(N) = Eigen::Map<const Cvec>(cand[j].data(), N).real();
    A.col(j).tail(N) = Eigen::Map<const Cvec>(cand[j].data(), N).imag();
  }
  // JacobiSVD: BDCSVD can return inaccurate singular vectors for small
  // trailing singular values at these aspect ratios
  Eigen::JacobiSVD<Rmat> svd(A, Eigen::ComputeThinU);
  Rvec sv = svd.singularValues();
  std::vector<Cmat> b;
  double top = sv(0);
  for (int i = 0; i < sv.size(); ++i) {
    if (sv(i) <= rel_cutoff * top) break;
    Rvec u = svd.matrixU().col(i);
    Cmat x(cand[0].rows(), cand[0].cols());
    Eigen::Map<Cvec>(x.data(), N).real() = u.head(N);
    Eigen::Map<Cvec>(x.data(), N).imag() = u.tail(N);
    b.push_back(0.5 * (x + x.adjoint().eval()));  // exact Hermitian
  }
  return {std::move(b), std::move(sv)};
}

std::vector<TensorOperator> mixed_commutant_basis(int k, int d) {
  if (k < 1 || d < 1) throw std::invalid_argument("mixed_commutant_basis: bad arguments");
  if (ipow(d, 2 * k) > 4096)
    throw resource_limit_error("mixed_commutant_basis: d^{2k} exceeds the 4096 cap");
  std::vector<int> last(k);
  std::iota(last.begin(), last.end(), k);
  std::vector<TensorOperator> out;
  for (const auto& pi : all_permutations(2 * k))
    out.push_back(partial_transpose(permutation_operator(pi, d), last));
  return out;
}

InvariantFamily symmetrized_family(const ConstraintSet& cs) {
  InvariantFamily fam;
  fam.constraints = cs;
  fam.n = (int)ipow(cs.d, cs.k);
  long m = (long)fam.n * fam.n;

  auto raw = mixed_commutant_basis(cs.k, cs.d);
  std::vector<Cmat> sym;
  if (cs.include_permutation_symmetry && cs.k > 1) {
    auto perms = all_permutations(cs.k);
    std::vector<Cmat> ws;
    std::vector<double> wsign;
    for (const auto& s : perms) {
      Cmat S = permutation_operator(s, cs.d).mat;
      Cmat W = Cmat::Zero(m, m);
      // W = S (x) S on the vec space (column legs slow)
      long n = fam.n;
      for (long a = 0; a < n; ++a)
        for (long b = 0; b < n; ++b)
          if (S(a, b) != 0.0)
            for (long c = 0; c < n; ++c)
              for (long e = 0; e < n; ++e)
                if (S(c, e) != 0.0) W(a * n + c, b * n + e) = S(a, b) * S(c, e);
      ws.push_back(std::move(W));
      wsign.push_back(cs.permutation_sign == PermSign::sign ? perm_sign(s) : 1.0);
    }
    for (const auto& op : raw) {
      Cmat avg = Cmat::Zero(m, m);
      for (size_t i = 0; i < ws.size(); ++i)
        avg += wsign[i] * (ws[i] * op.mat * ws[i].transpose());
      sym.push_back(avg / (double)ws.size());
    }
  } else {
    for (const auto& op : raw) sym.push_back(op.mat);
  }

  auto [cbasis, csv] = orthonormalize_complex(sym);
  fam.span_singular_values = csv;
  fam.complex_commutant_dim = (int)cbasis.size();
  fam.complex_basis = cbasis;
  fam.complex_selfadjoint_basis = selfadjoint_part(cbasis).first;

  if (cs.include_half_swap) {
    // Half-swap centralizer as a real nullspace over the Hermitian family
    // basis: X -> T X T - X preserves Hermiticity (T is real symmetric),
    // so real combinations given by the trailing right-singular vectors
    // stay Hermitian and orthonormal.
    Cmat T = half_swap(cs.k, cs.d).mat;
    const auto& hb = fam.complex_selfadjoint_basis;
    int r = (int)hb.size();
    long N = m * m;
    Rmat A(2 * N, r);
    for (int j = 0; j < r; ++j) {
      Cmat c = T * hb[j] * T - hb[j];
      A.col(j).head(N) = Eigen::Map<const Cvec>(c.data(), N).real();
      A.col(j).tail(N) = Eigen::Map<const Cvec>(c.data(), N).imag();
    }
    Eigen::JacobiSVD<Rmat> svd(A, Eigen::ComputeThinV);
    Rvec sv = svd.singularValues();
    fam.centralizer_singular_values = sv;
    double top = sv(0);
    std::vector<Cmat> pb;
    for (int i = (int)sv.size() - 1; i >= 0; --i) {
      if (sv(i) > 1e-8 * std::max(top, 1.0)) break;
      Cmat b = Cmat::Zero(m, m);
      for (int j = 0; j < r; ++j) b += svd.matrixV()(j, i) * hb[j];
      pb.push_back(0.5 * (b + b.adjoint().eval()));
    }
    fam.param_basis = pb;
  } else {
    fam.param_basis = fam.complex_selfadjoint_basis;
  }
  fam.hermitian_dim = (int)fam.param_basis.size();

  std::vector<Rmat> realized;
  for (const auto& p : fam.param_basis)
    realized.push_back(hermitian_coord_form(p, fam.n));
  auto [rb, rsv] = orthonormalize_real(realized);
  fam.real_basis = rb;
  fam.realized_singular_values = rsv;
  fam.realized_real_dim = (int)rb.size();
  return fam;
}

std::vector<DimensionAuditRow> dimension_audit(int k, const std::vector<int>& ds) {
  std::vector<DimensionAuditRow> out;
  // d-independent reference value: the C-coefficient square sum at d = 2k
  std::int64_t ref = 0;
  for (const auto& c : c_coefficients(k, 2 * k)) ref += c.value * c.value;
  for (int d : ds) {
    DimensionAuditRow row;
    row.d = d;
    ConstraintSet cs{k, d, true, PermSign::trivial, true};
    auto fam = symmetrized_family(cs);
    row.complex_dim = fam.complex_commutant_dim;
    row.hermitian_dim = fam.hermitian_dim;
    row.realized_real_dim = fam.realized_real_dim;
    row.span_singular_values = fam.span_singular_values;
    row.centralizer_singular_values = fam.centralizer_singular_values;
    row.realized_singular_values = fam.realized_singular_values;
    int r = fam.complex_commutant_dim;
    if (r < fam.span_singular_values.size() && fam.span_singular_values(r) > 0)
      row.span_gap = fam.span_singular_values(r - 1) / fam.span_singular_values(r);
    else
      row.span_gap = std::numeric_limits<double>::infinity();
    ConstraintSet nohs = cs;
    nohs.include_half_swap = false;
    row.hermitian_dim_no_half_swap = symmetrized_family(nohs).hermitian_dim;
    if (k > 1) {
      ConstraintSet sgn = cs;
      sgn.permutation_sign = PermSign::sign;
      auto sfam = symmetrized_family(sgn);
      row.sign_complex_dim = sfam.complex_commutant_dim;
      row.sign_hermitian_dim = sfam.hermitian_dim;
    }
    row.d_dependence_warning = (row.complex_dim != (int)ref);
    out.push_back(std::move(row));
  }
  return out;
}

// eigenvalue clustering + linkage by family elements
static std::vector<std::pair<int, int>> decompose_once(
    const std::vector<Cmat>& zs, const Cmat& G, std::vector<int>* order,
    Cmat* vecs_out, std::vector<std::pair<int, int>>* cluster_ranges) {
  Eigen::SelfAdjointEigenSolver<Cmat> es(G);
  Rvec ev = es.eigenvalues();
  Cmat V = es.eigenvectors();
  long n = ev.size();
  double width = std::max(ev(n - 1) - ev(0), 1e-300);
  std::vector<std::pair<int, int>> clusters;  // [begin, end)
  int begin = 0;
  for (long i = 1; i <= n; ++i) {
    if (i == n || ev(i) - ev(i - 1) > 1e-7 * width) {
      clusters.push_back({begin, (int)i});
      begin = (int)i;
    }
  }
  int nc = (int)clusters.size();
  // union-find over clusters, linked when some family element couples them
  std::vector<int> parent(nc);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int a = 0; a < nc; ++a)
    for (int b = a + 1; b < nc; ++b) {
      bool linked = false;
      for (const auto& z : zs) {
        Cmat blk = V.middleCols(clusters[a].first, clusters[a].second - clusters[a].first)
                       .adjoint() *
                   z *
                   V.middleCols(clusters[b].first, clusters[b].second - clusters[b].first);
        if (blk.norm() > 1e-6) {
          linked = true;
          break;
        }
      }
      if (linked) parent[find(a)] = find(b);
    }
  std::map<int, std::vector<int>> comps;
  for (int a = 0; a < nc; ++a) comps[find(a)].push_back(a);
  std::vector<std::pair<int, int>> sectors;
  std::vector<int> colorder;
  for (auto& [root, cls] : comps) {
    int dim = clusters[cls[0]].second - clusters[cls[0]].first;
    for (int c : cls) {
      if (clusters[c].second - clusters[c].first != dim)
        throw numerical_degeneracy_error(
            "block_decompose: unequal cluster sizes within a linked component");
      for (int i = clusters[c].first; i < clusters[c].second; ++i) colorder.push_back(i);
    }
    sectors.push_back({(int)cls.size(), dim});
  }
  if (order) *order = colorder;
  if (vecs_out) *vecs_out = V;
  if (cluster_ranges) *cluster_ranges = clusters;
  return sectors;
}

BlockStructure block_decompose(const InvariantFamily& family, std::uint64_t seed) {
  const auto& zs = family.complex_selfadjoint_basis;
  if (zs.empty()) throw std::invalid_argument("block_decompose: empty family");
  long m = zs[0].rows();
  Rng rng(seed);
  Cmat G = Cmat::Zero(m, m);
  for (const auto& z : zs) G += (1.0 + rng.uniform()) * z;
  std::vector<int> order;
  Cmat V;
  auto sectors = decompose_once(zs, G, &order, &V, nullptr);

  // validate block structure with a second generic element
  Cmat G2 = Cmat::Zero(m, m);
  for (const auto& z : zs) G2 += (1.0 + rng.uniform()) * z;
  auto sectors2 = decompose_once(zs, G2, nullptr, nullptr, nullptr);
  auto key = [](std::vector<std::pair<int, int>> s) {
    std::sort(s.begin(), s.end());
    return s;
  };
  if (key(sectors) != key(sectors2))
    throw numerical_degeneracy_error(
        "block_decompose: block structure not reproduced by a second generic element");

  BlockStructure out;
  out.sectors = sectors;
  out.basis_change.resize(m, m);
  for (long i = 0; i < m; ++i) out.basis_change.col(i) = V.col(order[i]);

  // reconstruction: every family element must be block diagonal w.r.t. the
  // grouped sectors
  for (const auto& z : zs) {
    Cmat Y = out.basis_change.adjoint() * z * out.basis_change;
    long off = 0;
    double off_norm2 = 0;
    for (const auto& [mult, dim] : out.sectors) {
      long size = (long)mult * dim;
      Y.block(off, off, size, size).setZero();
      off += size;
    }
    off_norm2 = Y.squaredNorm();
    if (std::sqrt(off_norm2) > 1e-8 * z.norm())
      throw numerical_degeneracy_error("block_decompose: off-block residual above tolerance");
  }
  return out;
}

PrecisionForm build_precision(const InvariantFamily& family, const Rvec& coefficients) {
  if (coefficients.size() != family.hermitian_dim)
    throw std::invalid_argument("build_precision: coefficient length must equal hermitian_dim");
  long m = (long)family.n * family.n;
  Cmat X = Cmat::Zero(m, m);
  for (int i = 0; i < family.hermitian_dim; ++i)
    X += coefficients(i) * family.param_basis[i];
  Rmat delta = hermitian_coord_form(X, family.n);
  delta = 0.5 * (delta + delta.transpose().eval());
  Eigen::SelfAdjointEigenSolver<Rmat> es(delta);
  double mineig = es.eigenvalues()(0);
  if (mineig <= 0) throw not_positive_definite_error(mineig);
  // confirm membership in the realized family span
  Rmat resid = delta;
  for (const auto& b : family.real_basis) resid -= (b.cwiseProduct(delta)).sum() * b;
  if (resid.norm() > 1e-10 * std::max(1.0, delta.norm()))
    throw numerical_degeneracy_error("build_precision: realized form left the family span");
  PrecisionForm pf;
  pf.coefficients = coefficients;
  pf.delta = std::move(delta);
  pf.eigenvalue_floor = mineig;
  pf.n = family.n;
  return pf;
}

Rvec scalar_precision_coefficients(const InvariantFamily& family, double lambda) {
  long m = (long)family.n * family.n;
  Rvec c(family.hermitian_dim);
  for (int i = 0; i < family.hermitian_dim; ++i)
    c(i) = lambda * family.param_basis[i].trace().real();
  // sanity: the identity must lie in the parameter span
  Cmat X = Cmat::Zero(m, m);
  for (int i = 0; i < family.hermitian_dim; ++i) X += c(i) * family.param_basis[i];
  if ((X - lambda * Cmat::Identity(m, m)).norm() > 1e-8 * std::abs(lambda) * std::sqrt((double)m))
    throw numerical_degeneracy_error("scalar_precision_coefficients: identity not in span");
  return c;
}

}  // namespace kfold
