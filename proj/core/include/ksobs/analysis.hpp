#pragma once

#include <filesystem>
#include <span>
#include <vector>

#include "ksobs/dynamics.hpp"

namespace ksobs {

struct NormSample {
  double t;
  double value;
};

// Recorded ||z(t_k)|| of the requested kind (H or V).
std::vector<NormSample> error_norm_series(const TimeSeries& ts, NormKind kind);

struct FitWindow {
  double start;
  double end;
};

// Second half of [0, t_end].
FitWindow default_fit_window(double t_end);

// Least-squares line through (t, log norm) over the window.
struct DecayFit {
  double rate = 0.0;       // mu-hat = -slope; positive means decay
  double slope = 0.0;
  double intercept = 0.0;  // log-amplitude at t = 0
  double rsq = 0.0;
  double rho = 1.0;        // max_t norm(t) / (exp(-rate (t - t0)) norm(t0)) over the window
  FitWindow window{0.0, 0.0};
  int samples = 0;
};

// Samples with nonpositive norm are dropped; fewer than 10 usable samples is
// an error.
DecayFit fit_decay_rate(std::span<const NormSample> series, FitWindow window);

// Header "t,norm_H,norm_V,out_err_1,...,out_err_<S_sigma>", one row per record,
// 17 significant digits.
void export_csv(const TimeSeries& ts, const std::filesystem::path& path);

}  // namespace ksobs
