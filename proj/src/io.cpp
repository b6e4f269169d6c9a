#include "kfold/io.hpp"

#include <fstream>
#include <sstream>

namespace kfold {

void write_text(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f << content;
}

Json json_matrix(const Cmat& M) {
  Json rows = Json::array();
  for (long i = 0; i < M.rows(); ++i) {
    Json row = Json::array();
    for (long j = 0; j < M.cols(); ++j)
      row.push_back(Json::array({M(i, j).real(), M(i, j).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json json_matrix(const Rmat& M) {
  Json rows = Json::array();
  for (long i = 0; i < M.rows(); ++i) {
    Json row = Json::array();
    for (long j = 0; j < M.cols(); ++j) row.push_back(M(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json json_vector(const Rvec& v) {
  Json a = Json::array();
  for (long i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

Cmat matrix_from_json(const Json& j) {
  long rows = (long)j.size();
  long cols = rows ? (long)j[0].size() : 0;
  Cmat M(rows, cols);
  for (long r = 0; r < rows; ++r)
    for (long c = 0; c < cols; ++c)
      M(r, c) = std::complex<double>(j[r][c][0].get<double>(), j[r][c][1].get<double>());
  return M;
}

std::string svg_histogram(
    const std::vector<double>& data, int bins, double lo, double hi,
    const std::string& title,
    const std::vector<std::pair<std::string, std::function<double(double)>>>& curves) {
  const int W = 640, H = 420, ML = 60, MR = 20, MT = 40, MB = 45;
  const double pw = W - ML - MR, ph = H - MT - MB;
  std::vector<double> dens(bins, 0.0);
  double w = (hi - lo) / bins;
  long kept = 0;
  for (double x : data)
    if (x >= lo && x < hi) {
      dens[(int)((x - lo) / w)] += 1.0;
      ++kept;
    }
  double norm = kept > 0 ? 1.0 / (kept * w) : 0.0;
  double ymax = 1e-12;
  for (auto& d : dens) {
    d *= norm;
    ymax = std::max(ymax, d);
  }
  const int cs = 200;
  std::vector<std::vector<double>> cy(curves.size(), std::vector<double>(cs + 1));
  for (size_t c = 0; c < curves.size(); ++c)
    for (int i = 0; i <= cs; ++i) {
      cy[c][i] = curves[c].second(lo + (hi - lo) * i / cs);
      ymax = std::max(ymax, cy[c][i]);
    }
  ymax *= 1.08;
  auto X = [&](double x) { return ML + pw * (x - lo) / (hi - lo); };
  auto Y = [&](double y) { return MT + ph * (1.0 - y / ymax); };
  std::ostringstream s;
  s.precision(6);
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\""
    << H << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s << "<text x=\"" << W / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">"
    << title << "</text>\n";
  for (int b = 0; b < bins; ++b) {
    double x0 = X(lo + b * w), x1 = X(lo + (b + 1) * w), y = Y(dens[b]);
    s << "<rect x=\"" << x0 << "\" y=\"" << y << "\" width=\"" << x1 - x0
      << "\" height=\"" << Y(0) - y << "\" fill=\"#7aa6d6\" stroke=\"#3a6ea8\" stroke-width=\"0.5\"/>\n";
  }
  const char* colors[] = {"#c0392b", "#27ae60", "#8e44ad"};
  for (size_t c = 0; c < curves.size(); ++c) {
    s << "<polyline fill=\"none\" stroke=\"" << colors[c % 3]
      << "\" stroke-width=\"1.8\" points=\"";
    for (int i = 0; i <= cs; ++i)
      s << X(lo + (hi - lo) * i / cs) << "," << Y(cy[c][i]) << " ";
    s << "\"/>\n<text x=\"" << W - MR - 150 << "\" y=\"" << MT + 18 + 18 * c
      << "\" font-size=\"12\" fill=\"" << colors[c % 3] << "\">" << curves[c].first
      << "</text>\n";
  }
  // axes with a few ticks
  s << "<line x1=\"" << ML << "\" y1=\"" << Y(0) << "\" x2=\"" << W - MR
    << "\" y2=\"" << Y(0) << "\" stroke=\"black\"/>\n";
  s << "<line x1=\"" << ML << "\" y1=\"" << MT << "\" x2=\"" << ML << "\" y2=\""
    << Y(0) << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    double xv = lo + (hi - lo) * i / 4, yv = ymax * i / 4 / 1.08;
    s << "<text x=\"" << X(xv) << "\" y=\"" << Y(0) + 16
      << "\" text-anchor=\"middle\" font-size=\"11\">" << xv << "</text>\n";
    s << "<text x=\"" << ML - 6 << "\" y=\"" << Y(yv) + 4
      << "\" text-anchor=\"end\" font-size=\"11\">" << yv << "</text>\n";
  }
  s << "</svg>\n";
  return s.str();
}

}  // namespace kfold
