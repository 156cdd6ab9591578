#pragma once

#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "chebsi/qr_engine.hpp"

namespace chebsi {

/// One row per solver pass.  Everything here is deterministic for a fixed
/// configuration; timings deliberately live elsewhere so traces can be
/// byte-compared across runs.
struct IterationTrace {
  int iter = 0;
  std::size_t locked = 0;       // locked count after this pass
  int deg_min = 0;              // active-column degrees used this pass
  int deg_max = 0;
  double cond_est = 0.0;        // +inf when no estimate exists (iteration 0)
  std::optional<double> cond_exact;
  QrVariant qr_variant = QrVariant::cholqr2;
  std::optional<double> shift;  // present only for the shifted variant
  double res_max = 0.0;         // residual range over active columns
  double res_min = 0.0;
  long long matvecs = 0;        // cumulative filter applications
};

/// 17 significant digits: lossless text round trip for binary64.
inline std::string fmt_g17(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string trace_csv_header() {
  return "iter,locked,deg_min,deg_max,cond_est,cond_exact,qr_variant,shift,"
         "res_max,res_min,matvecs";
}

inline std::string to_csv_row(const IterationTrace& t) {
  std::string s;
  s += std::to_string(t.iter);
  s += ',';
  s += std::to_string(t.locked);
  s += ',';
  s += std::to_string(t.deg_min);
  s += ',';
  s += std::to_string(t.deg_max);
  s += ',';
  s += fmt_g17(t.cond_est);
  s += ',';
  if (t.cond_exact) s += fmt_g17(*t.cond_exact);
  s += ',';
  s += to_string(t.qr_variant);
  s += ',';
  if (t.shift) s += fmt_g17(*t.shift);
  s += ',';
  s += fmt_g17(t.res_max);
  s += ',';
  s += fmt_g17(t.res_min);
  s += ',';
  s += std::to_string(t.matvecs);
  return s;
}

inline std::string to_csv(const std::vector<IterationTrace>& rows) {
  std::string out = trace_csv_header();
  out += '\n';
  for (const auto& r : rows) {
    out += to_csv_row(r);
    out += '\n';
  }
  return out;
}

}  // namespace chebsi
