#ifndef QMETRO_SCAN_HPP
#define QMETRO_SCAN_HPP

#include "qmetro/probe_optimizer.hpp"

#include <iosfwd>

namespace qmetro {

/// One particle number of the GHZ-versus-ideal comparison. Empty optionals
/// mean "not requested"; cs_ghz_singular marks a GHZ state whose covariance
/// cannot support estimating every parameter.
struct ScanRow {
  int n = 2;
  int particles = 1;
  bool skipped = false;
  Real casimir = 0.0;
  std::optional<Real> cs_ghz;
  bool cs_ghz_singular = false;
  std::optional<Real> cs_floor;
  std::optional<Real> cs_optimized;
};

struct ScanOptions {
  int n = 2;
  int nmin = 1;
  int nmax = 1;
  bool ghz = true;
  bool floor = true;
  bool optimized = false;
  OptimizerConfig optimizer;
  Index cap = kDefaultDimensionCap;
  /// Rows evaluated concurrently; output order is always by particle number.
  int jobs = 1;
};

ScanRow scan_row(int particles, const ScanOptions& options);

std::vector<ScanRow> run_scan(const ScanOptions& options);

/// 12 significant digits, shortest form ("%.12g").
std::string format_decimal(Real value);

/// Header n,N,casimir,cs_ghz,cs_floor,cs_optimized; unrequested cells empty.
void write_scan_csv(std::ostream& out, const std::vector<ScanRow>& rows);

/// Log-log plot of every requested series against particle number.
void write_scan_svg(std::ostream& out, const std::vector<ScanRow>& rows);

/// Least-squares slope of log(y) against log(x).
Real loglog_slope(const std::vector<Real>& x, const std::vector<Real>& y);

}  // namespace qmetro

#endif  // QMETRO_SCAN_HPP
