#include "ksobs/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <string>

#include "ksobs/errors.hpp"
#include "ksobs/format.hpp"

namespace ksobs {

std::vector<NormSample> error_norm_series(const TimeSeries& ts, NormKind kind) {
  if (kind == NormKind::DA) {
    throw DomainError("error series are recorded in the H and V norms only");
  }
  std::vector<NormSample> out;
  out.reserve(ts.size());
  for (const auto& r : ts.records) {
    out.push_back({r.t, kind == NormKind::H ? r.error_h : r.error_v});
  }
  return out;
}

FitWindow default_fit_window(double t_end) { return {0.5 * t_end, t_end}; }

DecayFit fit_decay_rate(std::span<const NormSample> series, FitWindow window) {
  std::vector<double> ts;
  std::vector<double> logs;
  std::vector<double> values;
  int dropped = 0;
  for (const auto& s : series) {
    if (s.t < window.start || s.t > window.end) continue;
    if (!(s.value > 0.0) || !std::isfinite(s.value)) {
      ++dropped;
      continue;
    }
    ts.push_back(s.t);
    values.push_back(s.value);
    logs.push_back(std::log(s.value));
  }
  const double tstart = ts.empty() ? 0.0 : ts.front();
  const double logstart = logs.empty() ? 0.0 : logs.front();
  // Shift to the first sample so a flat series yields exact zeros.
  for (std::size_t i = 0; i < ts.size(); ++i) {
    ts[i] -= tstart;
    logs[i] -= logstart;
  }
  if (ts.size() < 10) {
    throw DomainError("decay fit needs at least 10 positive samples in [" +
                      format_double(window.start) + ", " + format_double(window.end) + "], got " +
                      std::to_string(ts.size()) +
                      (dropped > 0 ? " (" + std::to_string(dropped) + " nonpositive dropped)" : ""));
  }

  const auto n = static_cast<double>(ts.size());
  double mt = 0.0;
  double ml = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    mt += ts[i];
    ml += logs[i];
  }
  mt /= n;
  ml /= n;
  double stt = 0.0;
  double stl = 0.0;
  double sll = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const double dt = ts[i] - mt;
    const double dl = logs[i] - ml;
    stt += dt * dt;
    stl += dt * dl;
    sll += dl * dl;
  }
  if (stt == 0.0) {
    throw DomainError("decay fit window contains a single time instant");
  }

  DecayFit fit;
  fit.slope = stl / stt;
  fit.rate = -fit.slope;
  fit.intercept = logstart + ml - fit.slope * (mt + tstart);
  // A perfectly flat series is fitted exactly.
  fit.rsq = sll > 0.0 ? std::clamp(stl * stl / (stt * sll), 0.0, 1.0) : 1.0;
  fit.window = window;
  fit.samples = static_cast<int>(ts.size());

  double rho = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const double envelope = std::exp(-fit.rate * ts[i]) * values.front();
    rho = std::max(rho, values[i] / envelope);
  }
  fit.rho = rho;
  return fit;
}

void export_csv(const TimeSeries& ts, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw IoError("cannot open '" + path.string() + "' for writing");
  }
  out << "t,norm_H,norm_V";
  for (int j = 1; j <= ts.sensor_count; ++j) out << ",out_err_" << j;
  out << '\n';
  for (const auto& r : ts.records) {
    out << format_double(r.t) << ',' << format_double(r.error_h) << ',' << format_double(r.error_v);
    for (Eigen::Index j = 0; j < r.output_error.size(); ++j) {
      out << ',' << format_double(r.output_error[j]);
    }
    out << '\n';
  }
  if (!out) {
    throw IoError("write failed for '" + path.string() + "'");
  }
}

}  // namespace ksobs
