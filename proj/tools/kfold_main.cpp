// kfold: command-line front end for constructing, sampling, and validating
// k-fold invariant Gaussian random matrix ensembles.
#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <unsupported/Eigen/KroneckerProduct>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "kfold/commutant.hpp"
#include "kfold/ensembles.hpp"
#include "kfold/hciz.hpp"
#include "kfold/io.hpp"
#include "kfold/repcore.hpp"
#include "kfold/spectra.hpp"
#include "kfold/stats.hpp"

using namespace kfold;
namespace fs = std::filesystem;

namespace {

struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

constexpr int kSchemaVersion = 1;

// ---------------------------------------------------------------------------
// configuration handling

Json load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw config_error("cannot open config file: " + path);
  Json j;
  try {
    j = Json::parse(f);
  } catch (const std::exception& e) {
    throw config_error(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw config_error("config root must be an object (at /)");
  if (!j.contains("schema_version"))
    throw config_error("missing key (at /schema_version)");
  if (!j["schema_version"].is_number_integer() ||
      j["schema_version"].get<int>() != kSchemaVersion)
    throw config_error("unsupported schema_version (at /schema_version)");
  return j;
}

void check_keys(const Json& obj, const std::set<std::string>& allowed,
                const std::string& pointer) {
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!allowed.count(it.key()))
      throw config_error("unknown key (at " + pointer + "/" + it.key() + ")");
}

void check_ensemble_keys(const Json& ens) {
  if (!ens.is_object()) throw config_error("ensemble must be an object (at /ensemble)");
  check_keys(ens,
             {"type", "n", "scale", "k", "d", "lambda", "coefficients", "sites",
              "edges", "noise", "disorder", "dims", "fold"},
             "/ensemble");
  if (!ens.contains("type") || !ens["type"].is_string())
    throw config_error("ensemble type missing (at /ensemble/type)");
}

std::vector<Edge> edges_from_json(const Json& ens, int sites) {
  std::vector<Edge> edges;
  if (ens.contains("edges")) {
    if (ens["edges"].is_string() && ens["edges"].get<std::string>() == "chain") {
      for (int i = 0; i + 1 < sites; ++i) edges.push_back({i, i + 1, 1.0});
    } else if (ens["edges"].is_array()) {
      for (const auto& e : ens["edges"]) {
        if (!e.is_array() || e.size() != 3)
          throw config_error("edge entries must be [i, j, J] (at /ensemble/edges)");
        edges.push_back({e[0].get<int>(), e[1].get<int>(), e[2].get<double>()});
      }
    } else {
      throw config_error("edges must be \"chain\" or a list (at /ensemble/edges)");
    }
  } else {
    for (int i = 0; i + 1 < sites; ++i) edges.push_back({i, i + 1, 1.0});
  }
  return edges;
}

// Sampler closure built once per run; heavy setup (invariant family) happens
// here, per-sample work stays cheap.
std::function<Cmat(std::uint64_t)> make_sampler(const Json& ens) {
  check_ensemble_keys(ens);
  std::string type = ens["type"].get<std::string>();
  double scale = ens.value("scale", 1.0);
  if (type == "gue") {
    int n = ens.value("n", 16);
    return [n, scale](std::uint64_t s) { return sample_gue(n, scale, s); };
  }
  if (type == "goe") {
    int n = ens.value("n", 16);
    return [n, scale](std::uint64_t s) {
      return Cmat(sample_goe(n, scale, s).cast<std::complex<double>>());
    };
  }
  if (type == "poisson") {
    // diagonal of i.i.d. uniforms: uncorrelated levels
    int n = ens.value("n", 16);
    return [n, scale](std::uint64_t s) {
      Rng rng(s);
      Cmat H = Cmat::Zero(n, n);
      for (int i = 0; i < n; ++i) H(i, i) = scale * rng.uniform();
      return H;
    };
  }
  if (type == "kfold") {
    ConstraintSet cs;
    cs.k = ens.value("k", 2);
    cs.d = ens.value("d", 2);
    auto fam = symmetrized_family(cs);
    Rvec coeff;
    if (ens.contains("coefficients")) {
      const auto& c = ens["coefficients"];
      if (!c.is_array() || (int)c.size() != fam.hermitian_dim)
        throw config_error("coefficients must have length " +
                           std::to_string(fam.hermitian_dim) +
                           " (at /ensemble/coefficients)");
      coeff.resize(fam.hermitian_dim);
      for (int i = 0; i < fam.hermitian_dim; ++i) coeff(i) = c[i].get<double>();
    } else {
      coeff = scalar_precision_coefficients(fam, ens.value("lambda", 1.0));
    }
    auto sampler = std::make_shared<KFoldSampler>(build_precision(fam, coeff));
    return [sampler](std::uint64_t s) { return sampler->sample(s); };
  }
  if (type == "heisenberg") {
    int sites = ens.value("sites", 6);
    auto sampler = std::make_shared<HeisenbergSampler>(
        sites, edges_from_json(ens, sites), ens.value("noise", 0.1));
    return [sampler](std::uint64_t s) { return sampler->sample(s); };
  }
  if (type == "o3") {
    int sites = ens.value("sites", 4);
    auto edges = edges_from_json(ens, sites);
    bool dis = ens.value("disorder", true);
    return [sites, edges, dis](std::uint64_t s) {
      return Cmat(sample_o3(sites, edges, s, dis).cast<std::complex<double>>());
    };
  }
  if (type == "tensor_product") {
    std::vector<int> dims;
    if (!ens.contains("dims") || !ens["dims"].is_array())
      throw config_error("dims required (at /ensemble/dims)");
    for (const auto& d : ens["dims"]) dims.push_back(d.get<int>());
    return [dims, scale](std::uint64_t s) {
      return sample_tensor_product(dims, scale, s);
    };
  }
  if (type == "power_fold") {
    int n = ens.value("n", 4);
    int fold = ens.value("fold", 2);
    return [n, scale, fold](std::uint64_t s) {
      return sample_power_fold(n, scale, fold, s);
    };
  }
  throw config_error("unknown ensemble type '" + type + "' (at /ensemble/type)");
}

// ---------------------------------------------------------------------------
// output helpers

struct OutputSet {
  fs::path dir;
  bool csv = true, json = true, svg = true;

  void emit(const std::string& name, const std::string& content) const {
    bool is_csv = name.size() > 4 && name.substr(name.size() - 4) == ".csv";
    bool is_svg = name.size() > 4 && name.substr(name.size() - 4) == ".svg";
    if (is_csv && !csv) return;
    if (is_svg && !svg) return;
    if (!is_csv && !is_svg && !json) return;
    write_text((dir / name).string(), content);
  }
  void emit(const std::string& name, const Json& j) const {
    emit(name, j.dump(2) + "\n");
  }
};

OutputSet make_outputs(const std::string& out_dir,
                       const std::vector<std::string>& formats) {
  OutputSet o;
  o.dir = out_dir.empty() ? fs::path(".") : fs::path(out_dir);
  fs::create_directories(o.dir);
  if (!formats.empty()) {
    o.csv = o.json = o.svg = false;
    for (const auto& f : formats) {
      if (f == "csv") o.csv = true;
      else if (f == "json") o.json = true;
      else if (f == "svg") o.svg = true;
      else throw config_error("unknown format '" + f + "'");
    }
  }
  return o;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string r = "\"";
  for (char c : s) {
    if (c == '"') r += '"';
    r += c;
  }
  return r + "\"";
}

std::string fmt_double(double v) {
  std::ostringstream s;
  s.precision(17);
  s << v;
  return s.str();
}

// ---------------------------------------------------------------------------
// tables

int run_tables(int k, int d, const OutputSet& out) {
  if (k < 1 || k > 4) throw config_error("tables: k must be in [1, 4]");
  Json report;
  report["schema_version"] = kSchemaVersion;
  report["k"] = k;
  report["d"] = d;

  auto t = character_table(k);
  check_orthogonality(t);
  {
    Json jt;
    std::ostringstream csv;
    csv << "irrep";
    for (const auto& c : t.classes) csv << "," << csv_escape(partition_str(c));
    csv << "\n";
    Json rows = Json::array();
    for (const auto& lam : t.irreps) {
      Json row;
      row["irrep"] = partition_str(lam);
      Json vals = Json::array();
      csv << csv_escape(partition_str(lam));
      for (const auto& c : t.classes) {
        auto v = character(lam, c);
        vals.push_back(v);
        csv << "," << v;
      }
      row["values"] = vals;
      rows.push_back(row);
      csv << "\n";
    }
    jt["classes"] = Json::array();
    for (const auto& c : t.classes) jt["classes"].push_back(partition_str(c));
    jt["class_sizes"] = Json::array();
    for (const auto& s : t.sizes) jt["class_sizes"].push_back(s);
    jt["rows"] = rows;
    report["characters"] = jt;
    out.emit("characters.csv", csv.str());
  }

  if (k % 2 == 0) {
    int h = k / 2;
    {
      Json jb = Json::array();
      std::ostringstream csv;
      csv << "mu,lambda,lambda_prime,multiplicity\n";
      for (const auto& mu : enumerate_partitions(k))
        for (const auto& [pair, b] : branching(mu, h, h)) {
          Json row;
          row["mu"] = partition_str(mu);
          row["lambda"] = partition_str(pair.first);
          row["lambda_prime"] = partition_str(pair.second);
          row["multiplicity"] = b;
          jb.push_back(row);
          csv << csv_escape(partition_str(mu)) << ","
              << csv_escape(partition_str(pair.first)) << ","
              << csv_escape(partition_str(pair.second)) << "," << b << "\n";
        }
      report["branching"] = jb;
      out.emit("branching.csv", csv.str());
    }
    {
      Json jk = Json::array();
      std::ostringstream csv;
      csv << "lambda,lambda_prime,mu,multiplicity\n";
      for (const auto& lam : enumerate_partitions(h))
        for (const auto& lamp : enumerate_partitions(h))
          for (const auto& mu : enumerate_partitions(h)) {
            auto v = kronecker(lam, lamp, mu);
            if (v == 0) continue;
            Json row;
            row["lambda"] = partition_str(lam);
            row["lambda_prime"] = partition_str(lamp);
            row["mu"] = partition_str(mu);
            row["multiplicity"] = v;
            jk.push_back(row);
            csv << csv_escape(partition_str(lam)) << ","
                << csv_escape(partition_str(lamp)) << ","
                << csv_escape(partition_str(mu)) << "," << v << "\n";
          }
      report["kronecker"] = jk;
      out.emit("kronecker.csv", csv.str());
    }
    {
      Json jc = Json::array();
      std::ostringstream csv;
      csv << "mu,mu_prime,sign,value\n";
      std::int64_t sum2 = 0;
      for (const auto& c : c_coefficients(h, d)) {
        Json row;
        row["mu"] = partition_str(c.mu);
        row["mu_prime"] = partition_str(c.mu_prime);
        row["sign"] = std::string(1, c.sign);
        row["value"] = c.value;
        jc.push_back(row);
        csv << csv_escape(partition_str(c.mu)) << ","
            << csv_escape(partition_str(c.mu_prime)) << "," << c.sign << ","
            << c.value << "\n";
        sum2 += c.value * c.value;
      }
      report["c_coefficients"] = jc;
      report["c_square_sum"] = sum2;
      out.emit("c_coefficients.csv", csv.str());
    }
  }

  // discrepancies against the reference tabulation
  Json disc = Json::array();
  if (k == 4) {
    Json rowlabel;
    rowlabel["table"] = "characters";
    rowlabel["note"] =
        "the reference tabulation interchanges the rows labelled (3,1) and "
        "(2,1,1); this tool uses the standard Murnaghan-Nakayama labelling, "
        "under which both row/column orthogonality relations hold";
    disc.push_back(rowlabel);
  }
  if (k == 4 && d >= 4) {
    std::int64_t computed = 0;
    for (const auto& c : c_coefficients(2, d))
      if (c.mu == Partition{2, 2} && c.sign == '+') computed = c.value;
    Json e;
    e["table"] = "c_coefficients";
    e["entry"] = "(2,2) (2) +";
    e["computed"] = computed;
    e["reference"] = 1;
    e["note"] =
        "the reference list prints 1; the branching-Kronecker sum gives 2, "
        "which is required for the square sum 4*1^2 + 3*2^2 = 16";
    disc.push_back(e);
  }
  report["discrepancies"] = disc;

  out.emit("tables.json", report);
  return 0;
}

// ---------------------------------------------------------------------------
// audit

int run_audit(int k, const std::vector<int>& ds, const OutputSet& out) {
  auto rows = dimension_audit(k, ds);
  Json report;
  report["schema_version"] = kSchemaVersion;
  report["k"] = k;
  Json jr = Json::array();
  std::ostringstream csv;
  csv << "d,complex_dim,hermitian_dim,hermitian_dim_no_half_swap,"
         "sign_complex_dim,sign_hermitian_dim,realized_real_dim,span_gap,"
         "d_dependence_warning\n";
  for (const auto& r : rows) {
    Json row;
    row["d"] = r.d;
    row["complex_dim"] = r.complex_dim;
    row["hermitian_dim"] = r.hermitian_dim;
    row["hermitian_dim_no_half_swap"] = r.hermitian_dim_no_half_swap;
    row["sign_complex_dim"] = r.sign_complex_dim;
    row["sign_hermitian_dim"] = r.sign_hermitian_dim;
    row["realized_real_dim"] = r.realized_real_dim;
    row["span_gap"] = r.span_gap;
    row["d_dependence_warning"] = r.d_dependence_warning;
    row["span_singular_values"] = json_vector(r.span_singular_values);
    row["centralizer_singular_values"] = json_vector(r.centralizer_singular_values);
    row["realized_singular_values"] = json_vector(r.realized_singular_values);
    jr.push_back(row);
    csv << r.d << "," << r.complex_dim << "," << r.hermitian_dim << ","
        << r.hermitian_dim_no_half_swap << "," << r.sign_complex_dim << ","
        << r.sign_hermitian_dim << "," << r.realized_real_dim << ","
        << fmt_double(r.span_gap) << "," << (r.d_dependence_warning ? 1 : 0)
        << "\n";
  }
  report["rows"] = jr;
  out.emit("audit.json", report);
  out.emit("audit.csv", csv.str());
  return 0;
}

// ---------------------------------------------------------------------------
// sample

int run_sample(const Json& cfg, std::uint64_t seed, int n_samples, int threads,
               const OutputSet& out) {
  auto sampler = make_sampler(cfg.at("ensemble"));
  auto batch = generate_batch(sampler, n_samples, seed, threads);
  Json report;
  report["schema_version"] = kSchemaVersion;
  report["ensemble"] = cfg.at("ensemble");
  report["master_seed"] = batch.master_seed;
  report["n_samples"] = n_samples;
  Json seeds = Json::array(), samples = Json::array();
  for (int i = 0; i < n_samples; ++i) {
    seeds.push_back(batch.seeds[i]);
    samples.push_back(json_matrix(batch.samples[i]));
  }
  report["seeds"] = seeds;
  report["samples"] = samples;
  out.emit("batch.json", report);

  std::ostringstream csv;
  csv << "sample,row,col,re,im\n";
  for (int i = 0; i < n_samples; ++i)
    for (long r = 0; r < batch.samples[i].rows(); ++r)
      for (long c = 0; c < batch.samples[i].cols(); ++c)
        csv << i << "," << r << "," << c << ","
            << fmt_double(batch.samples[i](r, c).real()) << ","
            << fmt_double(batch.samples[i](r, c).imag()) << "\n";
  out.emit("batch.csv", csv.str());
  return 0;
}

// ---------------------------------------------------------------------------
// analyze

int run_analyze(const Json& cfg, std::uint64_t seed, int n_samples, int threads,
                const OutputSet& out) {
  Json analysis = cfg.value("analysis", Json::object());
  check_keys(analysis,
             {"spacings", "unfolding_degree", "entanglement_split",
              "invariant_words", "level_window", "bins"},
             "/analysis");
  int degree = analysis.value("unfolding_degree", 9);
  int bins = analysis.value("bins", 24);
  std::pair<int, int> window{-1, -1};
  if (analysis.contains("level_window")) {
    const auto& w = analysis["level_window"];
    if (!w.is_array() || w.size() != 2)
      throw config_error("level_window must be [lo, hi] (at /analysis/level_window)");
    window = {w[0].get<int>(), w[1].get<int>()};
  }

  auto sampler = make_sampler(cfg.at("ensemble"));
  auto batch = generate_batch(sampler, n_samples, seed, threads);

  std::vector<double> all_ratios, all_unfolded, all_raw;
  std::ostringstream csv;
  csv << "sample,seed,n,r_mean,ratio_count,merged_degeneracies,e_min,e_max\n";
  std::vector<double> ent_values;
  Json words_out = Json::array();
  for (int i = 0; i < n_samples; ++i) {
    const Cmat& H = batch.samples[i];
    auto er = eigh(H);
    Rvec ev = er.eigenvalues;
    if (window.first >= 0) {
      int lo = std::max(0, window.first);
      int hi = std::min<int>((int)ev.size(), window.second);
      if (hi - lo < 4)
        throw config_error("level_window too narrow (at /analysis/level_window)");
      ev = ev.segment(lo, hi - lo).eval();
    }
    auto sr = spacing_ratios(ev);
    for (long j = 0; j < sr.ratios.size(); ++j) all_ratios.push_back(sr.ratios(j));
    double mean_sp = (ev(ev.size() - 1) - ev(0)) / (double)(ev.size() - 1);
    for (long j = 0; j + 1 < ev.size(); ++j)
      all_raw.push_back((ev(j + 1) - ev(j)) / mean_sp);
    if ((long)ev.size() > degree + 2) {
      Rvec u = unfold(ev, degree);
      for (long j = 0; j < u.size(); ++j) all_unfolded.push_back(u(j));
    }
    if (analysis.contains("entanglement_split")) {
      const auto& sp = analysis["entanglement_split"];
      int dl = sp[0].get<int>(), dr = sp[1].get<int>();
      auto ed = eigh_deterministic(H);
      Rvec sv = entanglement_spectrum(ed.eigenvectors.col(0), dl, dr);
      ent_values.push_back(sv(0));
    }
    csv << i << "," << batch.seeds[i] << "," << er.eigenvalues.size() << ","
        << fmt_double(sr.mean) << "," << sr.ratios.size() << ","
        << sr.merged_degeneracies << "," << fmt_double(er.eigenvalues(0)) << ","
        << fmt_double(er.eigenvalues(er.eigenvalues.size() - 1)) << "\n";
  }
  out.emit("spectral_summary.csv", csv.str());

  Json agg;
  agg["schema_version"] = kSchemaVersion;
  agg["ensemble"] = cfg.at("ensemble");
  agg["master_seed"] = seed;
  agg["n_samples"] = n_samples;
  auto rstat = mean_stderr(all_ratios);
  agg["ratio_mean"] = rstat.mean;
  agg["ratio_std_error"] = rstat.std_error;
  agg["ratio_count"] = rstat.n;
  if (!all_unfolded.empty()) {
    auto ustat = mean_stderr(all_unfolded);
    agg["unfolded_mean"] = ustat.mean;
    auto gof = chi2_gof_wigner_gue(all_unfolded, bins, 0.05, 2.8);
    agg["wigner_gof"] = {{"statistic", gof.statistic},
                         {"dof", gof.dof},
                         {"p_value", gof.p_value}};
  }
  if (!ent_values.empty()) {
    auto estat = mean_stderr(ent_values);
    agg["leading_schmidt_mean"] = estat.mean;
    agg["leading_schmidt_std_error"] = estat.std_error;
  }
  out.emit("aggregate.json", agg);

  // reference curves
  auto wigner = [](double s) { return wigner_surmise_gue(s); };
  auto poisson = [](double s) { return std::exp(-s); };
  // folded ratio densities: GUE surmise and Poisson 2/(1+r)^2
  auto ratio_gue = [](double r) {
    double z = 1 + r + r * r;
    return 2.0 * (81.0 * std::sqrt(3.0) / (4.0 * M_PI)) * (r + r * r) * (r + r * r) /
           (z * z * z * z);
  };
  auto ratio_poisson = [](double r) { return 2.0 / ((1 + r) * (1 + r)); };
  out.emit("raw_spacing.svg",
           svg_histogram(all_raw, bins, 0.0, 3.0, "spacings (mean normalized)",
                         {{"Wigner surmise (GUE)", wigner}, {"Poisson", poisson}}));
  if (!all_unfolded.empty())
    out.emit("unfolded_spacing.svg",
             svg_histogram(all_unfolded, bins, 0.0, 3.0, "unfolded spacings",
                           {{"Wigner surmise (GUE)", wigner}, {"Poisson", poisson}}));
  out.emit("ratio_hist.svg",
           svg_histogram(all_ratios, bins, 0.0, 1.0, "spacing ratios r",
                         {{"GUE surmise", ratio_gue}, {"Poisson", ratio_poisson}}));
  return 0;
}

// ---------------------------------------------------------------------------
// verify

Json check_entry(const std::string& name, bool pass, Json details) {
  Json c;
  c["name"] = name;
  c["pass"] = pass;
  c["details"] = std::move(details);
  return c;
}

// Deviation of the empirical vec_h covariance from its image under a fixed
// conjugation R, with a noise threshold calibrated by a Rademacher wild
// bootstrap over batch-level deviations.
struct InvarianceStat {
  double stat = 0;
  double threshold = 0;
};

InvarianceStat covariance_invariance_stat(
    const std::function<Cmat(std::uint64_t)>& sampler, const Rmat& R, int n,
    int n_samples, int n_batches, std::uint64_t seed) {
  long m = (long)n * n;
  int per = std::max(1, n_samples / n_batches);
  std::vector<Rmat> devs;
  for (int b = 0; b < n_batches; ++b) {
    Rmat X(per, m);
    for (int i = 0; i < per; ++i)
      X.row(i) =
          vec_h(sampler(derive_seed(seed, (std::uint64_t)b * per + i))).transpose();
    Rmat Y = X * R.transpose();
    devs.push_back((X.transpose() * X - Y.transpose() * Y) / per);
  }
  Rmat G(n_batches, n_batches);
  for (int a = 0; a < n_batches; ++a)
    for (int b = a; b < n_batches; ++b)
      G(a, b) = G(b, a) = devs[a].cwiseProduct(devs[b]).sum();
  InvarianceStat out;
  out.stat = std::sqrt(std::max(0.0, G.sum())) / n_batches;
  Rvec rowmean = G.rowwise().mean();
  double total = rowmean.mean();
  Rmat Gc = G;
  for (int a = 0; a < n_batches; ++a)
    for (int b = 0; b < n_batches; ++b)
      Gc(a, b) -= rowmean(a) + rowmean(b) - total;
  Rng rng(derive_seed(seed, 999999));
  double acc = 0;
  const int reps = 64;
  for (int r = 0; r < reps; ++r) {
    Rvec eps(n_batches);
    for (int b = 0; b < n_batches; ++b) eps(b) = rng.uniform() < 0.5 ? -1.0 : 1.0;
    acc += eps.dot(Gc * eps) / (double)((long)n_batches * n_batches);
  }
  out.threshold = 3.0 * std::sqrt(std::max(acc / reps, 0.0));
  return out;
}

int run_verify(std::uint64_t seed, int n_samples, const OutputSet& out) {
  Json checks = Json::array();
  bool all = true;

  {
    // statistical invariance of the sampled covariance under a fixed
    // 2-fold conjugation, plus a corrupted-precision negative control
    ConstraintSet cs;
    cs.k = 2;
    cs.d = 2;
    auto fam = symmetrized_family(cs);
    Rvec coeff = scalar_precision_coefficients(fam, 1.0);
    Rng rng(derive_seed(seed, 9001));
    for (long i = 0; i < coeff.size(); ++i) coeff(i) += 0.05 * rng.normal();
    auto pf = build_precision(fam, coeff);
    auto sampler = std::make_shared<KFoldSampler>(pf);
    Cmat U = haar_unitary(2, derive_seed(seed, 9002));
    Rmat R = adjoint_action_matrix(
        Cmat(Eigen::kroneckerProduct(U, U)));
    auto inv = covariance_invariance_stat(
        [&](std::uint64_t s) { return sampler->sample(s); }, R, 4, n_samples, 10,
        derive_seed(seed, 9003));
    // corrupted precision: half the vec_h directions are rescaled, which is
    // strongly non-invariant under any mixing conjugation
    Rmat bad = Rmat::Identity(16, 16);
    for (int i = 0; i < 16; i += 2) bad(i, i) = 1.0 / 25.0;
    PrecisionForm bpf;
    bpf.delta = bad;
    bpf.n = 4;
    bpf.eigenvalue_floor = 1.0 / 25.0;
    auto badsampler = std::make_shared<KFoldSampler>(bpf);
    auto ctrl = covariance_invariance_stat(
        [&](std::uint64_t s) { return badsampler->sample(s); }, R, 4, n_samples, 10,
        derive_seed(seed, 9004));
    bool pass = inv.stat < inv.threshold && ctrl.stat > ctrl.threshold;
    all = all && pass;
    checks.push_back(check_entry(
        "covariance_invariance", pass,
        {{"invariant_stat", inv.stat},
         {"invariant_threshold", inv.threshold},
         {"control_stat", ctrl.stat},
         {"control_threshold", ctrl.threshold},
         {"n_samples", n_samples}}));
  }

  {
    // trace identity: direct product trace vs operator-Schmidt quadruple sum
    double worst = 0;
    for (int d : {2, 3}) {
      for (int trial = 0; trial < 5; ++trial) {
        Cmat H = sample_gue(d * d, 1.0, derive_seed(seed, 100 + 10 * d + trial));
        Cmat S = permutation_operator({1, 0}, d).mat;
        Cmat HS = S * H * S.adjoint();
        std::complex<double> direct = (HS * HS * H * H).trace();
        auto sd = operator_schmidt({H, d, 2}, {0});
        long r = sd.values.size();
        std::complex<double> sum = 0;
        for (long a = 0; a < r; ++a)
          for (long b = 0; b < r; ++b)
            for (long c = 0; c < r; ++c)
              for (long e = 0; e < r; ++e)
                sum += sd.values(a) * sd.values(b) * sd.values(c) * sd.values(e) *
                       (sd.left[a] * sd.left[b] * sd.right[c] * sd.right[e]).trace() *
                       (sd.right[a] * sd.right[b] * sd.left[c] * sd.left[e]).trace();
        worst = std::max(worst, std::abs(direct - sum) / std::abs(direct));
      }
    }
    bool pass = worst < 1e-8;
    all = all && pass;
    checks.push_back(check_entry("trace_identity", pass, {{"worst_relative", worst}}));
  }

  {
    // Schur-Weyl projection residual after twirl + exact refinement
    double worst = 0;
    for (auto [k, d] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}}) {
      Cmat X = sample_gue((int)std::pow(d, k), 1.0, derive_seed(seed, 200 + k * 10 + d));
      Cmat Y = twirl(X, k, d, 100, derive_seed(seed, 300 + k * 10 + d));
      Y = refine_commutant(Y, k, d, 4, derive_seed(seed, 400 + k * 10 + d));
      worst = std::max(worst, perm_span_residual(Y, k, d));
    }
    bool pass = worst < 1e-6;
    all = all && pass;
    checks.push_back(check_entry("schur_weyl_residual", pass, {{"worst_residual", worst}}));
  }

  {
    // quantum double gauge invariance on the Z2 torus
    std::vector<std::vector<int>> z2 = {{0, 1}, {1, 0}};
    auto qd = quantum_double(z2, 2, 2);
    Cmat G = gauge_relabel_operator(qd, 1, z2);
    double worst = 0;
    for (const auto& A : qd.vertex_ops)
      worst = std::max(worst, (G * A * G.adjoint() - A).norm());
    for (const auto& B : qd.plaquette_ops)
      worst = std::max(worst, (G * B * G.adjoint() - B).norm());
    for (const auto& A : qd.vertex_ops)
      for (const auto& B : qd.plaquette_ops)
        worst = std::max(worst, (A * B - B * A).norm());
    auto er = eigh(qd.hamiltonian);
    bool pass = worst < 1e-12 && std::abs(er.eigenvalues(0) + 12.0) < 1e-10;
    all = all && pass;
    checks.push_back(check_entry(
        "quantum_double_gauge", pass,
        {{"worst_norm", worst}, {"ground_energy", er.eigenvalues(0)}}));
  }

  {
    // HCIZ determinantal formula vs Monte Carlo
    Rng rng(derive_seed(seed, 500));
    double worst_sigma = 0;
    for (int trial = 0; trial < 4; ++trial) {
      int n = 2 + trial % 2;
      HcizProblem p;
      p.n = n;
      p.a.resize(n);
      p.b.resize(n);
      for (int i = 0; i < n; ++i) {
        p.a(i) = rng.normal();
        p.b(i) = rng.normal();
      }
      p.t = 1.0;
      auto exact = hciz_exact(p);
      auto mc = hciz_monte_carlo(p, 20000, derive_seed(seed, 600 + trial));
      worst_sigma = std::max(worst_sigma,
                             std::abs(mc.value - exact.value) / mc.std_error);
    }
    bool pass = worst_sigma < 3.0;
    all = all && pass;
    checks.push_back(check_entry("hciz_exact_vs_mc", pass, {{"worst_sigma", worst_sigma}}));
  }

  Json report;
  report["schema_version"] = kSchemaVersion;
  report["master_seed"] = seed;
  report["checks"] = checks;
  report["all_pass"] = all;
  out.emit("verify.json", report);
  std::cout << report.dump(2) << "\n";
  return all ? 0 : 1;
}

// ---------------------------------------------------------------------------
// hciz

int run_hciz(const Json& cfg, std::uint64_t seed, int n_samples,
             const OutputSet& out) {
  check_keys(cfg, {"schema_version", "n", "a", "b", "t", "samples", "seed"}, "");
  HcizProblem p;
  if (!cfg.contains("a") || !cfg.contains("b"))
    throw config_error("hciz requires 'a' and 'b' spectra (at /a)");
  const auto& a = cfg["a"];
  const auto& b = cfg["b"];
  if (!a.is_array() || !b.is_array() || a.size() != b.size() || a.empty())
    throw config_error("'a' and 'b' must be equal-length arrays (at /a)");
  p.n = (int)a.size();
  p.a.resize(p.n);
  p.b.resize(p.n);
  for (int i = 0; i < p.n; ++i) {
    p.a(i) = a[i].get<double>();
    p.b(i) = b[i].get<double>();
  }
  p.t = cfg.value("t", 1.0);
  auto exact = hciz_exact(p);
  auto mc = hciz_monte_carlo(p, n_samples, seed);
  Json report;
  report["schema_version"] = kSchemaVersion;
  report["n"] = p.n;
  report["t"] = p.t;
  report["a"] = a;
  report["b"] = b;
  report["exact"] = {{"value", exact.value},
                     {"error_estimate", exact.error_estimate},
                     {"degenerate_path", exact.degenerate_path}};
  report["monte_carlo"] = {{"value", mc.value},
                           {"std_error", mc.std_error},
                           {"samples", n_samples},
                           {"seed", seed}};
  // the bare alternating sum omits the discriminant normalization; the
  // ratio to the determinantal value is reported for reference
  double bare = weyl_sum(Rvec(p.t * p.a), p.b);
  report["weyl_sum_bare"] = bare;
  report["weyl_sum_ratio"] = bare / exact.value;
  out.emit("hciz.json", report);
  std::cout << report.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"k-fold invariant Gaussian matrix ensembles"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  std::vector<std::string> formats;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int samples = -1, threads = -1;
  int k = 2, d = 4;
  std::vector<int> ds;

  auto add_common = [&](CLI::App* sub, bool with_seed = true) {
    sub->add_option("--config", config_path, "JSON config file");
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--format", formats, "output formats (csv, json, svg)");
    if (with_seed)
      sub->add_option_function<std::uint64_t>(
          "--seed",
          [&](const std::uint64_t& v) {
            seed = v;
            seed_set = true;
          },
          "master seed");
    sub->add_option("--samples", samples, "sample count");
    sub->add_option("--threads", threads, "worker threads");
  };

  auto* tables = app.add_subcommand("tables", "emit exact representation tables");
  tables->add_option("--k", k, "symmetric group order parameter");
  tables->add_option("--d", d, "unitary dimension for C coefficients");
  add_common(tables, false);

  auto* audit = app.add_subcommand("audit", "dimension audit of the invariant family");
  audit->add_option("--k", k, "fold count");
  audit->add_option("--d", ds, "dimensions to audit (repeatable)");
  add_common(audit, false);

  auto* sample = app.add_subcommand("sample", "generate a deterministic sample batch");
  add_common(sample);
  auto* analyze = app.add_subcommand("analyze", "spectral statistics of a batch");
  add_common(analyze);
  auto* verify = app.add_subcommand("verify", "run the validation suite");
  add_common(verify);
  auto* hciz = app.add_subcommand("hciz", "evaluate an HCIZ integral");
  add_common(hciz);

  CLI11_PARSE(app, argc, argv);

  try {
    Json cfg = Json::object();
    if (!config_path.empty()) cfg = load_config(config_path);

    if (const char* env = std::getenv("KFOLD_THREADS"); env && threads < 0)
      threads = std::atoi(env);

    auto cfg_u64 = [&](const char* key, std::uint64_t fallback, bool* found =
                                                                    nullptr) {
      if (cfg.contains(key)) {
        if (found) *found = true;
        return cfg[key].get<std::uint64_t>();
      }
      return fallback;
    };
    bool cfg_has_seed = false;
    std::uint64_t eff_seed = seed_set ? seed : cfg_u64("seed", 0, &cfg_has_seed);
    int eff_samples = samples >= 0 ? samples : (int)cfg.value("samples", 100);
    int eff_threads = threads >= 1 ? threads : (int)cfg.value("threads", 1);

    OutputSet out = make_outputs(out_dir, formats);

    if (*tables) {
      if (!config_path.empty()) {
        check_keys(cfg, {"schema_version", "k", "d"}, "");
        k = cfg.value("k", k);
        d = cfg.value("d", d);
      }
      return run_tables(k, d, out);
    }
    if (*audit) {
      if (!config_path.empty()) {
        check_keys(cfg, {"schema_version", "k", "ds"}, "");
        k = cfg.value("k", k);
        if (cfg.contains("ds")) {
          ds.clear();
          for (const auto& v : cfg["ds"]) ds.push_back(v.get<int>());
        }
      }
      if (ds.empty()) ds = {2, 3, 4, 5};
      return run_audit(k, ds, out);
    }
    if (*sample || *analyze) {
      if (config_path.empty())
        throw config_error("sample/analyze require --config with an ensemble");
      check_keys(cfg,
                 {"schema_version", "seed", "samples", "threads", "ensemble",
                  "analysis"},
                 "");
      if (!cfg.contains("ensemble"))
        throw config_error("missing key (at /ensemble)");
      if (!seed_set && !cfg_has_seed)
        throw config_error("a seed is required (--seed or config key 'seed')");
      if (*sample) return run_sample(cfg, eff_seed, eff_samples, eff_threads, out);
      return run_analyze(cfg, eff_seed, eff_samples, eff_threads, out);
    }
    if (*verify) {
      if (!config_path.empty())
        check_keys(cfg, {"schema_version", "seed", "samples"}, "");
      if (!seed_set && !cfg_has_seed)
        throw config_error("a seed is required (--seed or config key 'seed')");
      int n = samples >= 0 ? samples : (int)cfg.value("samples", 2000);
      return run_verify(eff_seed, n, out);
    }
    if (*hciz) {
      if (config_path.empty())
        throw config_error("hciz requires --config with spectra");
      if (!seed_set && !cfg_has_seed)
        throw config_error("a seed is required (--seed or config key 'seed')");
      int n = samples >= 0 ? samples : (int)cfg.value("samples", 20000);
      return run_hciz(cfg, eff_seed, n, out);
    }
  } catch (const config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const resource_limit_error& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
