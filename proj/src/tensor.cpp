#include "kfold/tensor.hpp"

#include <algorithm>
#include <numeric>

namespace kfold {

using namespace std::complex_literals;

std::vector<Perm> all_permutations(int k) {
  Perm p(k);
  std::iota(p.begin(), p.end(), 0);
  std::vector<Perm> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

Perm compose(const Perm& s, const Perm& t) {
  Perm r(s.size());
  for (size_t p = 0; p < s.size(); ++p) r[p] = s[t[p]];
  return r;
}

Perm inverse(const Perm& s) {
  Perm r(s.size());
  for (size_t p = 0; p < s.size(); ++p) r[s[p]] = (int)p;
  return r;
}

int cycle_count(const Perm& s) {
  std::vector<bool> seen(s.size(), false);
  int c = 0;
  for (size_t i = 0; i < s.size(); ++i) {
    if (seen[i]) continue;
    ++c;
    for (size_t j = i; !seen[j]; j = s[j]) seen[j] = true;
  }
  return c;
}

int perm_sign(const Perm& s) {
  return ((int)s.size() - cycle_count(s)) % 2 == 0 ? 1 : -1;
}

Partition cycle_type(const Perm& s) {
  std::vector<bool> seen(s.size(), false);
  Partition t;
  for (size_t i = 0; i < s.size(); ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (size_t j = i; !seen[j]; j = s[j]) {
      seen[j] = true;
      ++len;
    }
    t.push_back(len);
  }
  std::sort(t.rbegin(), t.rend());
  return t;
}

static long ipow(int d, int k) {
  long r = 1;
  while (k-- > 0) r *= d;
  return r;
}

static void digits_of(long g, int d, int k, int* out) {
  for (int p = k - 1; p >= 0; --p) {
    out[p] = (int)(g % d);
    g /= d;
  }
}

static long index_of(const int* dig, int d, int k) {
  long g = 0;
  for (int p = 0; p < k; ++p) g = g * d + dig[p];
  return g;
}

TensorOperator permutation_operator(const Perm& sigma, int d) {
  int k = (int)sigma.size();
  if (k < 1 || d < 1) throw std::invalid_argument("permutation_operator: bad size");
  long n = ipow(d, k);
  Cmat M = Cmat::Zero(n, n);
  std::vector<int> in(k), out(k);
  for (long g = 0; g < n; ++g) {
    digits_of(g, d, k, in.data());
    for (int p = 0; p < k; ++p) out[sigma[p]] = in[p];
    M(index_of(out.data(), d, k), g) = 1.0;
  }
  return {std::move(M), d, k};
}

TensorOperator half_swap(int k, int d) {
  Perm s(2 * k);
  for (int p = 0; p < k; ++p) {
    s[p] = p + k;
    s[p + k] = p;
  }
  return permutation_operator(s, d);
}

TensorOperator partial_trace(const TensorOperator& O, const std::vector<int>& kept) {
  int k = O.legs, d = O.d;
  std::vector<int> keep = kept;
  std::sort(keep.begin(), keep.end());
  if (keep.empty() || keep.front() < 0 || keep.back() >= k ||
      std::adjacent_find(keep.begin(), keep.end()) != keep.end())
    throw std::invalid_argument("partial_trace: invalid leg subset");
  std::vector<int> traced;
  for (int p = 0; p < k; ++p)
    if (!std::binary_search(keep.begin(), keep.end(), p)) traced.push_back(p);
  int mk = (int)keep.size(), mt = (int)traced.size();
  long nk = ipow(d, mk), nt = ipow(d, mt);
  Cmat R = Cmat::Zero(nk, nk);
  std::vector<int> ar(mk), ac(mk), t(mt), full_r(k), full_c(k);
  for (long r = 0; r < nk; ++r) {
    digits_of(r, d, mk, ar.data());
    for (long c = 0; c < nk; ++c) {
      digits_of(c, d, mk, ac.data());
      std::complex<double> s = 0;
      for (long g = 0; g < nt; ++g) {
        digits_of(g, d, mt, t.data());
        for (int p = 0; p < mk; ++p) {
          full_r[keep[p]] = ar[p];
          full_c[keep[p]] = ac[p];
        }
        for (int p = 0; p < mt; ++p) {
          full_r[traced[p]] = t[p];
          full_c[traced[p]] = t[p];
        }
        s += O.mat(index_of(full_r.data(), d, k), index_of(full_c.data(), d, k));
      }
      R(r, c) = s;
    }
  }
  return {std::move(R), d, mk};
}

TensorOperator partial_transpose(const TensorOperator& O, const std::vector<int>& legs) {
  int k = O.legs, d = O.d;
  std::vector<int> tset = legs;
  std::sort(tset.begin(), tset.end());
  if (tset.empty() || tset.front() < 0 || tset.back() >= k ||
      std::adjacent_find(tset.begin(), tset.end()) != tset.end())
    throw std::invalid_argument("partial_transpose: invalid leg subset");
  long n = O.mat.rows();
  Cmat R(n, n);
  std::vector<int> dr(k), dc(k);
  for (long r = 0; r < n; ++r)
    for (long c = 0; c < n; ++c) {
      digits_of(r, d, k, dr.data());
      digits_of(c, d, k, dc.data());
      for (int p : tset) std::swap(dr[p], dc[p]);
      R(index_of(dr.data(), d, k), index_of(dc.data(), d, k)) = O.mat(r, c);
    }
  return {std::move(R), d, k};
}

SchmidtDecomposition operator_schmidt(const TensorOperator& O,
                                      const std::vector<int>& left_legs) {
  int k = O.legs, d = O.d;
  std::vector<int> L = left_legs;
  std::sort(L.begin(), L.end());
  if (L.empty() || (int)L.size() >= k || L.front() < 0 || L.back() >= k ||
      std::adjacent_find(L.begin(), L.end()) != L.end())
    throw std::invalid_argument("operator_schmidt: split must be a proper nonempty leg subset");
  std::vector<int> Rl;
  for (int p = 0; p < k; ++p)
    if (!std::binary_search(L.begin(), L.end(), p)) Rl.push_back(p);
  int ml = (int)L.size(), mr = (int)Rl.size();
  long nl = ipow(d, ml), nr = ipow(d, mr), n = O.mat.rows();
  // realign: M[(a,a'),(b,b')] = O[(a,b),(a',b')]
  Cmat M(nl * nl, nr * nr);
  std::vector<int> dr(k), dc(k), la(ml), lb(ml), ra(mr), rb(mr);
  for (long r = 0; r < n; ++r) {
    digits_of(r, d, k, dr.data());
    for (long c = 0; c < n; ++c) {
      digits_of(c, d, k, dc.data());
      for (int p = 0; p < ml; ++p) {
        la[p] = dr[L[p]];
        lb[p] = dc[L[p]];
      }
      for (int p = 0; p < mr; ++p) {
        ra[p] = dr[Rl[p]];
        rb[p] = dc[Rl[p]];
      }
      M(index_of(la.data(), d, ml) * nl + index_of(lb.data(), d, ml),
        index_of(ra.data(), d, mr) * nr + index_of(rb.data(), d, mr)) = O.mat(r, c);
    }
  }
  Eigen::BDCSVD<Cmat> svd(M, Eigen::ComputeThinU | Eigen::ComputeThinV);
  SchmidtDecomposition out;
  out.values = svd.singularValues();
  for (long l = 0; l < out.values.size(); ++l) {
    Cmat A(nl, nl), B(nr, nr);
    for (long a = 0; a < nl; ++a)
      for (long ap = 0; ap < nl; ++ap) A(a, ap) = svd.matrixU()(a * nl + ap, l);
    for (long b = 0; b < nr; ++b)
      for (long bp = 0; bp < nr; ++bp) B(b, bp) = std::conj(svd.matrixV()(b * nr + bp, l));
    out.left.push_back(std::move(A));
    out.right.push_back(std::move(B));
  }
  return out;
}

std::vector<Cmat> hermitian_basis(int n) {
  if (n < 1) throw std::invalid_argument("hermitian_basis: n must be >= 1");
  std::vector<Cmat> B;
  B.reserve((size_t)n * n);
  for (int i = 0; i < n; ++i) {
    Cmat E = Cmat::Zero(n, n);
    E(i, i) = 1.0;
    B.push_back(E);
  }
  const double s = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Cmat E = Cmat::Zero(n, n);
      E(i, j) = s;
      E(j, i) = s;
      B.push_back(E);
      Cmat F = Cmat::Zero(n, n);
      F(i, j) = 1i * s;
      F(j, i) = -1i * s;
      B.push_back(F);
    }
  return B;
}

Rvec vec_h(const Cmat& H, double tol) {
  long n = H.rows();
  if (H.cols() != n || (H - H.adjoint()).cwiseAbs().maxCoeff() > tol)
    throw std::invalid_argument("vec_h: input not Hermitian within tolerance");
  Rvec v(n * n);
  long idx = 0;
  for (long i = 0; i < n; ++i) v(idx++) = H(i, i).real();
  const double s = std::sqrt(2.0);
  for (long i = 0; i < n; ++i)
    for (long j = i + 1; j < n; ++j) {
      v(idx++) = s * H(i, j).real();
      v(idx++) = s * H(i, j).imag();
    }
  return v;
}

Cmat unvec_h(const Rvec& v) {
  long n = (long)std::llround(std::sqrt((double)v.size()));
  if (n * n != v.size()) throw std::invalid_argument("unvec_h: length not a square");
  Cmat H(n, n);
  long idx = 0;
  for (long i = 0; i < n; ++i) H(i, i) = v(idx++);
  const double s = 1.0 / std::sqrt(2.0);
  for (long i = 0; i < n; ++i)
    for (long j = i + 1; j < n; ++j) {
      double re = v(idx++) * s, im = v(idx++) * s;
      H(i, j) = std::complex<double>(re, im);
      H(j, i) = std::complex<double>(re, -im);
    }
  return H;
}

Cvec complex_vec(const Cmat& H) {
  return Cvec(Eigen::Map<const Cvec>(H.data(), H.size()));
}

Cmat complex_unvec(const Cvec& v, int n) {
  if ((long)n * n != v.size()) throw std::invalid_argument("complex_unvec: size mismatch");
  return Cmat(Eigen::Map<const Cmat>(v.data(), n, n));
}

Rmat adjoint_action_matrix(const Cmat& U, double tol) {
  long n = U.rows();
  if (U.cols() != n ||
      (U.adjoint() * U - Cmat::Identity(n, n)).cwiseAbs().maxCoeff() > tol)
    throw std::invalid_argument("adjoint_action_matrix: input not unitary within tolerance");
  // Images of basis elements are outer products of columns of U:
  // U E_ij U^dag = u_i u_j^dag, so no basis matrices are materialized.
  Rmat R(n * n, n * n);
  long idx = 0;
  const double s = 1.0 / std::sqrt(2.0);
  Cmat img(n, n);
  for (long i = 0; i < n; ++i) {
    img.noalias() = U.col(i) * U.col(i).adjoint();
    R.col(idx++) = vec_h(img, 1e-8);
  }
  for (long i = 0; i < n; ++i)
    for (long j = i + 1; j < n; ++j) {
      Cmat uij = U.col(i) * U.col(j).adjoint();
      img = s * (uij + uij.adjoint());
      R.col(idx++) = vec_h(img, 1e-8);
      img = 1i * s * (uij - uij.adjoint());
      R.col(idx++) = vec_h(img, 1e-8);
    }
  return R;
}

Rmat hermitian_coord_form(const Cmat& X, int n) {
  long m = (long)n * n;
  if (X.rows() != m || X.cols() != m)
    throw std::invalid_argument("hermitian_coord_form: operator size must be n^2");
  auto basis = hermitian_basis(n);
  Cmat A(m, m);
  for (long b = 0; b < m; ++b) A.col(b) = complex_vec(basis[b]);
  Cmat M = A.adjoint() * X * A;
  Rmat out = M.real();
  return 0.5 * (out + out.transpose());
}

}  // namespace kfold
