#include "kfold/ensembles.hpp"

#include <thread>
#include <unsupported/Eigen/KroneckerProduct>

namespace kfold {

using namespace std::complex_literals;

Cmat haar_unitary(int n, Rng& rng) {
  Cmat G(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      G(i, j) = std::complex<double>(rng.normal(), rng.normal());
  Eigen::HouseholderQR<Cmat> qr(G);
  Cmat Q = qr.householderQ();
  Cmat R = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    std::complex<double> r = R(j, j);
    Q.col(j) *= (std::abs(r) > 0 ? r / std::abs(r) : 1.0);
  }
  return Q;
}

Cmat haar_unitary(int n, std::uint64_t seed) {
  Rng rng(seed);
  return haar_unitary(n, rng);
}

Rmat haar_o3(Rng& rng) {
  Rmat G(3, 3);
  for (int j = 0; j < 3; ++j)
    for (int i = 0; i < 3; ++i) G(i, j) = rng.normal();
  Eigen::HouseholderQR<Rmat> qr(G);
  Rmat Q = qr.householderQ();
  Rmat R = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < 3; ++j)
    if (R(j, j) < 0) Q.col(j) *= -1.0;
  return Q;
}

Cmat sample_gue(int n, double scale, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("sample_gue: n must be >= 1");
  if (scale <= 0) throw std::invalid_argument("sample_gue: scale must be positive");
  Rng rng(seed);
  Cmat H(n, n);
  const double s = scale / std::sqrt(2.0);
  for (int i = 0; i < n; ++i) {
    H(i, i) = scale * rng.normal();
    for (int j = i + 1; j < n; ++j) {
      H(i, j) = std::complex<double>(s * rng.normal(), s * rng.normal());
      H(j, i) = std::conj(H(i, j));
    }
  }
  return H;
}

Rmat sample_goe(int n, double scale, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("sample_goe: n must be >= 1");
  if (scale <= 0) throw std::invalid_argument("sample_goe: scale must be positive");
  Rng rng(seed);
  Rmat H(n, n);
  for (int i = 0; i < n; ++i) {
    H(i, i) = std::sqrt(2.0) * scale * rng.normal();
    for (int j = i + 1; j < n; ++j) H(i, j) = H(j, i) = scale * rng.normal();
  }
  return H;
}

KFoldSampler::KFoldSampler(const PrecisionForm& pf) : n_(pf.n) {
  Eigen::SelfAdjointEigenSolver<Rmat> es(pf.delta);
  if (es.eigenvalues()(0) <= 0)
    throw not_positive_definite_error(es.eigenvalues()(0));
  transform_ = es.eigenvectors() *
               es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal();
}

Cmat KFoldSampler::sample(std::uint64_t seed) const {
  Rng rng(seed);
  Rvec z(transform_.cols());
  for (long i = 0; i < z.size(); ++i) z(i) = rng.normal();
  return unvec_h(transform_ * z);
}

Cmat sample_kfold(const PrecisionForm& pf, std::uint64_t seed) {
  return KFoldSampler(pf).sample(seed);
}

Cmat sample_tensor_product(const std::vector<int>& dims, double scale,
                           std::uint64_t seed) {
  if (dims.empty()) throw std::invalid_argument("sample_tensor_product: empty dims");
  long total = 1;
  for (int d : dims) total *= d;
  if (total > 4096) throw resource_limit_error("sample_tensor_product: dimension cap");
  Cmat H = sample_gue(dims[0], scale, derive_seed(seed, 0));
  for (size_t f = 1; f < dims.size(); ++f) {
    Cmat Hf = sample_gue(dims[f], scale, derive_seed(seed, f));
    H = Eigen::kroneckerProduct(H, Hf).eval();
  }
  return H;
}

Cmat power_fold(const Cmat& H, int k) {
  if (k < 1) throw std::invalid_argument("power_fold: k must be >= 1");
  long total = 1;
  for (int i = 0; i < k; ++i) total *= H.rows();
  if (total > 4096) throw resource_limit_error("power_fold: dimension cap");
  Cmat R = H;
  for (int i = 1; i < k; ++i) R = Eigen::kroneckerProduct(R, H).eval();
  return R;
}

Cmat sample_power_fold(int n, double scale, int k, std::uint64_t seed) {
  return power_fold(sample_gue(n, scale, seed), k);
}

// Embed a two-site operator (acting on sites si (slow) and sj) into the
// n_sites chain with local dimension d.
static Cmat embed_pair(const Cmat& op, int si, int sj, int n_sites, int d) {
  long n = 1;
  for (int i = 0; i < n_sites; ++i) n *= d;
  long nspec = n / ((long)d * d);
  Cmat out = Cmat::Zero(n, n);
  std::vector<int> spec_sites;
  for (int s = 0; s < n_sites; ++s)
    if (s != si && s != sj) spec_sites.push_back(s);
  std::vector<int> dig(n_sites, 0), digc(n_sites, 0);
  for (long sp = 0; sp < nspec; ++sp) {
    long t = sp;
    for (int p = (int)spec_sites.size() - 1; p >= 0; --p) {
      dig[spec_sites[p]] = (int)(t % d);
      t /= d;
    }
    digc = dig;
    for (int a = 0; a < d * d; ++a)
      for (int b = 0; b < d * d; ++b) {
        if (op(a, b) == 0.0) continue;
        dig[si] = a / d;
        dig[sj] = a % d;
        digc[si] = b / d;
        digc[sj] = b % d;
        long r = 0, c = 0;
        for (int s = 0; s < n_sites; ++s) {
          r = r * d + dig[s];
          c = c * d + digc[s];
        }
        out(r, c) += op(a, b);
      }
  }
  return out;
}

static Cmat embed_single(const Cmat& op, int si, int n_sites, int d) {
  long n = 1;
  for (int i = 0; i < n_sites; ++i) n *= d;
  long stride = 1;
  for (int s = si + 1; s < n_sites; ++s) stride *= d;
  Cmat out = Cmat::Zero(n, n);
  for (long g = 0; g < n; ++g) {
    int a = (int)((g / stride) % d);
    for (int b = 0; b < d; ++b) {
      if (op(b, a) == 0.0) continue;
      long r = g + (long)(b - a) * stride;
      out(r, g) += op(b, a);
    }
  }
  return out;
}

static std::vector<Cmat> pauli_half() {
  Cmat sx(2, 2), sy(2, 2), sz(2, 2);
  sx << 0, 1, 1, 0;
  sy << 0, -1i, 1i, 0;
  sz << 1, 0, 0, -1;
  return {0.5 * sx, 0.5 * sy, 0.5 * sz};
}

HeisenbergSampler::HeisenbergSampler(int n_sites, const std::vector<Edge>& edges,
                                     double noise_scale)
    : n_sites_(n_sites), noise_scale_(noise_scale) {
  if (n_sites < 2 || n_sites > 12)
    throw resource_limit_error("HeisenbergSampler: site count must be in [2, 12]");
  if (noise_scale < 0) throw std::invalid_argument("HeisenbergSampler: negative noise");
  auto S = pauli_half();
  long n = 1;
  for (int i = 0; i < n_sites; ++i) n *= 2;
  // two-site S.S
  Cmat ss = Cmat::Zero(4, 4);
  for (int a = 0; a < 3; ++a) ss += Eigen::kroneckerProduct(S[a], S[a]).eval();
  H0_ = Cmat::Zero(n, n);
  for (const auto& e : edges) {
    if (e.i < 0 || e.j < 0 || e.i >= n_sites || e.j >= n_sites || e.i == e.j)
      throw std::invalid_argument("HeisenbergSampler: bad edge");
    H0_ += e.J * embed_pair(ss, e.i, e.j, n_sites, 2);
  }
  for (int s = 0; s < n_sites; ++s)
    for (int a = 0; a < 3; ++a)
      field_ops_.push_back(embed_single(S[a], s, n_sites, 2));
}

Cmat HeisenbergSampler::sample(std::uint64_t seed) const {
  Cmat H = H0_;
  if (noise_scale_ > 0) {
    Rng rng(seed);
    for (const auto& op : field_ops_) H += (noise_scale_ * rng.normal()) * op;
  }
  return H;
}

Cmat sample_heisenberg(int n_sites, const std::vector<Edge>& edges,
                       double noise_scale, std::uint64_t seed) {
  return HeisenbergSampler(n_sites, edges, noise_scale).sample(seed);
}

Rmat sample_o3(int n_sites, const std::vector<Edge>& edges, std::uint64_t seed,
               bool disorder) {
  if (n_sites < 2 || n_sites > 6)
    throw resource_limit_error("sample_o3: site count must be in [2, 6]");
  // spin-1 in the real Cartesian basis: (S^a)_{bc} = -i eps_{abc}
  std::vector<Cmat> S(3, Cmat::Zero(3, 3));
  auto eps = [](int a, int b, int c) {
    return ((a + 1) % 3 == b && (b + 1) % 3 == c) ? 1 :
           ((a + 2) % 3 == b && (b + 2) % 3 == c) ? -1 : 0;
  };
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c)
        if (eps(a, b, c)) S[a](b, c) = -1i * (double)eps(a, b, c);
  Rng rng(seed);
  long n = 1;
  for (int i = 0; i < n_sites; ++i) n *= 3;
  Cmat H = Cmat::Zero(n, n);
  for (const auto& e : edges) {
    Rmat O = disorder ? haar_o3(rng) : Rmat::Identity(3, 3);
    Cmat pair = Cmat::Zero(9, 9);
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        if (O(a, b) != 0) pair += O(a, b) * Eigen::kroneckerProduct(S[a], S[b]).eval();
    H += e.J * embed_pair(pair, e.i, e.j, n_sites, 3);
  }
  if (H.imag().cwiseAbs().maxCoeff() > 1e-12)
    throw std::runtime_error("sample_o3: result unexpectedly complex");
  return H.real();
}

static void check_group(const std::vector<std::vector<int>>& t) {
  int g = (int)t.size();
  for (const auto& row : t)
    if ((int)row.size() != g) throw std::invalid_argument("quantum_double: ragged table");
  for (int a = 0; a < g; ++a)
    if (t[0][a] != a || t[a][0] != a)
      throw std::invalid_argument("quantum_double: element 0 is not an identity");
  for (int a = 0; a < g; ++a) {
    bool inv = false;
    for (int b = 0; b < g; ++b)
      if (t[a][b] == 0 && t[b][a] == 0) inv = true;
    if (!inv) throw std::invalid_argument("quantum_double: missing inverse");
  }
  for (int a = 0; a < g; ++a)
    for (int b = 0; b < g; ++b)
      for (int c = 0; c < g; ++c)
        if (t[t[a][b]][c] != t[a][t[b][c]])
          throw std::invalid_argument("quantum_double: table is not associative");
}

static int ginv(const std::vector<std::vector<int>>& t, int a) {
  for (int b = 0; b < (int)t.size(); ++b)
    if (t[a][b] == 0) return b;
  throw std::invalid_argument("quantum_double: missing inverse");
}

QuantumDouble quantum_double(const std::vector<std::vector<int>>& table,
                             int width, int height) {
  check_group(table);
  int g = (int)table.size();
  int W = width, Hh = height;
  if (W < 1 || Hh < 1) throw std::invalid_argument("quantum_double: bad lattice");
  int ne = 2 * W * Hh;
  double dim_d = std::pow((double)g, ne);
  if (dim_d > 4096.0)
    throw resource_limit_error("quantum_double: |G|^{edges} exceeds the 4096 cap");
  long n = (long)std::llround(dim_d);

  // edge indices: horizontal e_h(x,y) = y*W + x (from v(x,y) to v(x+1,y)),
  // vertical e_v(x,y) = W*Hh + y*W + x (from v(x,y) to v(x,y+1))
  auto eh = [&](int x, int y) { return ((y % Hh + Hh) % Hh) * W + ((x % W + W) % W); };
  auto ev = [&](int x, int y) { return W * Hh + ((y % Hh + Hh) % Hh) * W + ((x % W + W) % W); };

  auto digit = [&](long state, int e) {
    long s = state;
    for (int i = ne - 1; i > e; --i) s /= g;
    return (int)(s % g);
  };
  std::vector<long> stride(ne, 1);
  for (int e = ne - 2; e >= 0; --e) stride[e] = stride[e + 1] * g;

  QuantumDouble qd;
  qd.group_order = g;
  qd.n_edges = ne;
  qd.width = W;
  qd.height = Hh;

  for (int y = 0; y < Hh; ++y)
    for (int x = 0; x < W; ++x) {
      // outgoing: eh(x,y), ev(x,y); incoming: eh(x-1,y), ev(x,y-1)
      int out1 = eh(x, y), out2 = ev(x, y), in1 = eh(x - 1, y), in2 = ev(x, y - 1);
      Cmat A = Cmat::Zero(n, n);
      for (int gg = 0; gg < g; ++gg) {
        int gi = ginv(table, gg);
        for (long s = 0; s < n; ++s) {
          long r = s;
          r += ((long)table[gg][digit(s, out1)] - digit(s, out1)) * stride[out1];
          r += ((long)table[gg][digit(s, out2)] - digit(s, out2)) * stride[out2];
          r += ((long)table[digit(s, in1)][gi] - digit(s, in1)) * stride[in1];
          r += ((long)table[digit(s, in2)][gi] - digit(s, in2)) * stride[in2];
          A(r, s) += 1.0;
        }
      }
      qd.vertex_ops.push_back(std::move(A));
    }

  for (int y = 0; y < Hh; ++y)
    for (int x = 0; x < W; ++x) {
      // counterclockwise: eh(x,y) +, ev(x+1,y) +, eh(x,y+1) -, ev(x,y) -
      Cmat B = Cmat::Zero(n, n);
      for (long s = 0; s < n; ++s) {
        int u = table[digit(s, eh(x, y))][digit(s, ev(x + 1, y))];
        u = table[u][ginv(table, digit(s, eh(x, y + 1)))];
        u = table[u][ginv(table, digit(s, ev(x, y)))];
        if (u == 0) B(s, s) = 1.0;
      }
      qd.plaquette_ops.push_back(std::move(B));
    }

  qd.hamiltonian = Cmat::Zero(n, n);
  for (const auto& A : qd.vertex_ops) qd.hamiltonian -= A;
  for (const auto& B : qd.plaquette_ops) qd.hamiltonian -= B;
  return qd;
}

Cmat gauge_relabel_operator(const QuantumDouble& qd, int q,
                            const std::vector<std::vector<int>>& table) {
  int g = qd.group_order, ne = qd.n_edges;
  long n = qd.hamiltonian.rows();
  std::vector<long> stride(ne, 1);
  for (int e = ne - 2; e >= 0; --e) stride[e] = stride[e + 1] * g;
  Cmat Q = Cmat::Zero(n, n);
  for (long s = 0; s < n; ++s) {
    long r = 0, t = s;
    for (int e = ne - 1; e >= 0; --e) {
      int h = (int)(t % g);
      t /= g;
      r += (long)table[q][h] * stride[e];
    }
    Q(r, s) = 1.0;
  }
  return Q;
}

FirstMomentFit unitary_double_first_moment(int d, int mc_samples, std::uint64_t seed) {
  if (d < 1 || d > 8) throw std::invalid_argument("unitary_double_first_moment: d must be in [1, 8]");
  if (mc_samples < 1000)
    throw std::invalid_argument("unitary_double_first_moment: need at least 10^3 samples");
  long m = (long)d * d;
  Cmat I = Cmat::Identity(m, m);
  Cmat P = (d == 1) ? Cmat::Identity(1, 1)
                    : partial_transpose(permutation_operator({1, 0}, d), {1}).mat;
  // 2x2 normal equations for the fit onto span{I, P}
  Eigen::Matrix2d G;
  G << (double)m, P.trace().real(), P.trace().real(), P.squaredNorm();
  Eigen::Matrix2d Gi = G.inverse();

  Cmat M = Cmat::Zero(m, m);
  double sa = 0, sa2 = 0, sb = 0, sb2 = 0;
  for (int s = 0; s < mc_samples; ++s) {
    Cmat U = haar_unitary(d, derive_seed(seed, s));
    Cmat X = Eigen::kroneckerProduct(U, U.conjugate()).eval();
    M += X;
    double pi = X.trace().real();
    double pp = P.conjugate().cwiseProduct(X).sum().real();
    double a = Gi(0, 0) * pi + Gi(0, 1) * pp;
    double b = Gi(1, 0) * pi + Gi(1, 1) * pp;
    sa += a;
    sa2 += a * a;
    sb += b;
    sb2 += b * b;
  }
  M /= (double)mc_samples;
  FirstMomentFit fit;
  fit.estimate = M;
  fit.alpha = sa / mc_samples;
  fit.beta = sb / mc_samples;
  fit.alpha_se = std::sqrt(std::max(0.0, sa2 / mc_samples - fit.alpha * fit.alpha) /
                           (mc_samples - 1.0));
  fit.beta_se = std::sqrt(std::max(0.0, sb2 / mc_samples - fit.beta * fit.beta) /
                          (mc_samples - 1.0));
  Cmat R = M - fit.alpha * I - fit.beta * P;
  Eigen::JacobiSVD<Cmat> svd_r(R), svd_m(M);
  fit.residual_op_norm = svd_r.singularValues()(0);
  fit.estimate_op_norm = svd_m.singularValues()(0);
  return fit;
}

SampleBatch generate_batch(const std::function<Cmat(std::uint64_t)>& sampler,
                           int n_samples, std::uint64_t master_seed, int threads) {
  SampleBatch batch;
  batch.master_seed = master_seed;
  batch.seeds.resize(n_samples);
  batch.samples.resize(n_samples);
  for (int i = 0; i < n_samples; ++i) batch.seeds[i] = derive_seed(master_seed, i);
  int nt = std::max(1, threads);
  if (nt == 1) {
    for (int i = 0; i < n_samples; ++i) batch.samples[i] = sampler(batch.seeds[i]);
  } else {
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    for (int t = 0; t < nt; ++t)
      pool.emplace_back([&]() {
        for (int i = next.fetch_add(1); i < n_samples; i = next.fetch_add(1))
          batch.samples[i] = sampler(batch.seeds[i]);
      });
    for (auto& th : pool) th.join();
  }
  return batch;
}

}  // namespace kfold
