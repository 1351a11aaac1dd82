#include "qmetro/scan.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <sstream>
#include <thread>

namespace qmetro {

ScanRow scan_row(int particles, const ScanOptions& options) {
  ScanRow row;
  row.n = options.n;
  row.particles = particles;
  if (fock_dimension(options.n, particles) > options.cap) {
    row.skipped = true;
    return row;
  }
  auto rep = make_symmetric_rep(options.n, particles, options.cap);
  row.casimir = casimir_trace(*rep);
  if (options.floor) row.cs_floor = intrinsic_floor(*rep);
  if (options.ghz) {
    const ProbeState ghz = make_ghz(options.n, particles, options.cap);
    const RealMatrix cov = covariance_pure(ghz).covariance;
    if (spectrum_info(cov).singular(kDefaultConditionThreshold)) {
      row.cs_ghz_singular = true;
    } else {
      row.cs_ghz = intrinsic_bound(cov);
    }
  }
  if (options.optimized) {
    OptimizerConfig cfg = options.optimizer;
    cfg.jobs = 1;
    try {
      row.cs_optimized = optimize_probe(rep, cfg).bound_achieved;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::optimization_failed) throw;
    }
  }
  return row;
}

std::vector<ScanRow> run_scan(const ScanOptions& options) {
  if (options.n < 2) throw Error(ErrorCode::invalid_argument, "scan needs n >= 2");
  if (options.nmin < 1 || options.nmax < options.nmin) {
    throw Error(ErrorCode::invalid_argument, "scan needs 1 <= nmin <= nmax");
  }
  const int count = options.nmax - options.nmin + 1;
  std::vector<ScanRow> rows(static_cast<std::size_t>(count));
  const int jobs = std::clamp(options.jobs, 1, count);
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next++; i < count; i = next++) rows[static_cast<std::size_t>(i)] = scan_row(options.nmin + i, options);
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return rows;
}

std::string format_decimal(Real value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

void write_scan_csv(std::ostream& out, const std::vector<ScanRow>& rows) {
  out << "n,N,casimir,cs_ghz,cs_floor,cs_optimized\n";
  for (const auto& r : rows) {
    out << r.n << ',' << r.particles << ',';
    if (r.skipped) {
      out << "skipped,skipped,skipped,skipped\n";
      continue;
    }
    out << format_decimal(r.casimir) << ',';
    if (r.cs_ghz_singular) {
      out << "singular";
    } else if (r.cs_ghz) {
      out << format_decimal(*r.cs_ghz);
    }
    out << ',';
    if (r.cs_floor) out << format_decimal(*r.cs_floor);
    out << ',';
    if (r.cs_optimized) out << format_decimal(*r.cs_optimized);
    out << '\n';
  }
}

Real loglog_slope(const std::vector<Real>& x, const std::vector<Real>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw Error(ErrorCode::invalid_argument, "slope needs at least two paired points");
  }
  Eigen::MatrixX2d design(static_cast<Index>(x.size()), 2);
  RealVector rhs(static_cast<Index>(x.size()));
  for (std::size_t i = 0; i < x.size(); ++i) {
    design(static_cast<Index>(i), 0) = std::log(x[i]);
    design(static_cast<Index>(i), 1) = 1.0;
    rhs(static_cast<Index>(i)) = std::log(y[i]);
  }
  const Eigen::Vector2d fit = design.colPivHouseholderQr().solve(rhs);
  return fit(0);
}

namespace {

struct Series {
  std::string name;
  std::string color;
  std::string dash;
  std::vector<std::pair<Real, Real>> points;
};

}  // namespace

void write_scan_svg(std::ostream& out, const std::vector<ScanRow>& rows) {
  std::vector<Series> series = {
      {"GHZ", "#1f77b4", "", {}},
      {"floor d^2/(4 C2)", "#d62728", "6,4", {}},
      {"optimized", "#2ca02c", "2,3", {}},
  };
  for (const auto& r : rows) {
    if (r.skipped) continue;
    const auto x = static_cast<Real>(r.particles);
    if (r.cs_ghz && *r.cs_ghz > 0) series[0].points.emplace_back(x, *r.cs_ghz);
    if (r.cs_floor && *r.cs_floor > 0) series[1].points.emplace_back(x, *r.cs_floor);
    if (r.cs_optimized && *r.cs_optimized > 0) series[2].points.emplace_back(x, *r.cs_optimized);
  }

  Real xmin = std::numeric_limits<Real>::infinity(), xmax = -xmin, ymin = xmin, ymax = -xmin;
  for (const auto& s : series) {
    for (const auto& [x, y] : s.points) {
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
  }
  if (!std::isfinite(xmin)) xmin = 1, xmax = 10, ymin = 0.1, ymax = 1;
  const Real lx0 = std::floor(std::log10(xmin)), lx1 = std::max(std::ceil(std::log10(xmax)), lx0 + 1);
  const Real ly0 = std::floor(std::log10(ymin)), ly1 = std::max(std::ceil(std::log10(ymax)), ly0 + 1);

  const Real width = 640, height = 480, left = 80, right = 20, top = 30, bottom = 60;
  const Real pw = width - left - right, ph = height - top - bottom;
  auto px = [&](Real x) { return left + (std::log10(x) - lx0) / (lx1 - lx0) * pw; };
  auto py = [&](Real y) { return top + (ly1 - std::log10(y)) / (ly1 - ly0) * ph; };

  const int n = rows.empty() ? 0 : rows.front().n;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << width / 2 << "\" y=\"18\" text-anchor=\"middle\">Minimum total uncertainty C_S, SU(" << n
      << ")</text>\n";

  // Decade grid and labels.
  for (Real e = lx0; e <= lx1; e += 1) {
    const Real x = px(std::pow(10.0, e));
    out << "<line x1=\"" << x << "\" y1=\"" << top << "\" x2=\"" << x << "\" y2=\"" << top + ph
        << "\" stroke=\"#ddd\"/>\n";
    out << "<text x=\"" << x << "\" y=\"" << top + ph + 18 << "\" text-anchor=\"middle\">1e" << e << "</text>\n";
  }
  for (Real e = ly0; e <= ly1; e += 1) {
    const Real y = py(std::pow(10.0, e));
    out << "<line x1=\"" << left << "\" y1=\"" << y << "\" x2=\"" << left + pw << "\" y2=\"" << y
        << "\" stroke=\"#ddd\"/>\n";
    out << "<text x=\"" << left - 6 << "\" y=\"" << y + 4 << "\" text-anchor=\"end\">1e" << e << "</text>\n";
  }
  out << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw << "\" height=\"" << ph
      << "\" fill=\"none\" stroke=\"black\"/>\n";
  out << "<text x=\"" << left + pw / 2 << "\" y=\"" << height - 15 << "\" text-anchor=\"middle\">particles N</text>\n";
  out << "<text transform=\"translate(20," << top + ph / 2 << ") rotate(-90)\" text-anchor=\"middle\">C_S</text>\n";

  int legend_row = 0;
  for (const auto& s : series) {
    if (s.points.empty()) continue;
    out << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"2\"";
    if (!s.dash.empty()) out << " stroke-dasharray=\"" << s.dash << "\"";
    out << " points=\"";
    for (const auto& [x, y] : s.points) out << format_decimal(px(x)) << ',' << format_decimal(py(y)) << ' ';
    out << "\"/>\n";
    const Real ly = top + 15 + 18 * legend_row++;
    out << "<line x1=\"" << left + pw - 170 << "\" y1=\"" << ly << "\" x2=\"" << left + pw - 140 << "\" y2=\"" << ly
        << "\" stroke=\"" << s.color << "\" stroke-width=\"2\"";
    if (!s.dash.empty()) out << " stroke-dasharray=\"" << s.dash << "\"";
    out << "/>\n<text x=\"" << left + pw - 135 << "\" y=\"" << ly + 4 << "\">" << s.name << "</text>\n";
  }
  out << "</svg>\n";
}

}  // namespace qmetro
