#include "debias/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "debias/errors.hpp"

namespace debias {
namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 440.0;
constexpr double kMarginLeft = 70.0;
constexpr double kMarginRight = 150.0;
constexpr double kMarginTop = 20.0;
constexpr double kMarginBottom = 50.0;

std::string_view method_color(Method m) {
  switch (m) {
    case Method::kDebiased:
      return "#d62728";
    case Method::kLeverageOnly:
      return "#1f77b4";
    case Method::kRandomPhase:
      return "#2ca02c";
  }
  return "#7f7f7f";
}

std::string fmt(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

struct Frame {
  double x0, x1, y0, y1;
  double px(double x) const {
    return kMarginLeft + (x - x0) / (x1 - x0) * (kWidth - kMarginLeft - kMarginRight);
  }
  double py(double y) const {
    return kHeight - kMarginBottom - (y - y0) / (y1 - y0) * (kHeight - kMarginTop - kMarginBottom);
  }
};

void svg_open(std::ostream& os) {
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
     << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

void svg_axes(std::ostream& os, const Frame& f, std::string_view xlabel, std::string_view ylabel,
              bool log_y) {
  os << "<rect x=\"" << kMarginLeft << "\" y=\"" << kMarginTop << "\" width=\""
     << kWidth - kMarginLeft - kMarginRight << "\" height=\"" << kHeight - kMarginTop - kMarginBottom
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double x = f.x0 + (f.x1 - f.x0) * i / 4.0;
    os << "<text x=\"" << fmt(f.px(x)) << "\" y=\"" << kHeight - kMarginBottom + 16
       << "\" text-anchor=\"middle\">" << fmt(x, 3) << "</text>\n";
    const double y = f.y0 + (f.y1 - f.y0) * i / 4.0;
    os << "<text x=\"" << kMarginLeft - 6 << "\" y=\"" << fmt(f.py(y) + 4)
       << "\" text-anchor=\"end\">" << (log_y ? "1e" + fmt(y, 3) : fmt(y, 3)) << "</text>\n";
  }
  os << "<text x=\"" << fmt((kMarginLeft + kWidth - kMarginRight) / 2) << "\" y=\"" << kHeight - 12
     << "\" text-anchor=\"middle\">" << xlabel << "</text>\n";
  os << "<text x=\"16\" y=\"" << fmt((kMarginTop + kHeight - kMarginBottom) / 2)
     << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
     << fmt((kMarginTop + kHeight - kMarginBottom) / 2) << ")\">" << ylabel << "</text>\n";
}

void svg_band(std::ostream& os, const Frame& f, std::span<const double> xs,
              std::span<const double> lo, std::span<const double> hi, std::string_view color) {
  os << "<polygon fill=\"" << color << "\" fill-opacity=\"0.2\" stroke=\"none\" points=\"";
  for (std::size_t i = 0; i < xs.size(); ++i) os << fmt(f.px(xs[i])) << ',' << fmt(f.py(hi[i])) << ' ';
  for (std::size_t i = xs.size(); i-- > 0;) os << fmt(f.px(xs[i])) << ',' << fmt(f.py(lo[i])) << ' ';
  os << "\"/>\n";
}

void svg_line(std::ostream& os, const Frame& f, std::span<const double> xs,
              std::span<const double> ys, std::string_view color, bool dashed) {
  os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\""
     << (dashed ? " stroke-dasharray=\"4 3\"" : "") << " points=\"";
  for (std::size_t i = 0; i < xs.size(); ++i) os << fmt(f.px(xs[i])) << ',' << fmt(f.py(ys[i])) << ' ';
  os << "\"/>\n";
}

void svg_legend(std::ostream& os, std::size_t row, std::string_view label, std::string_view color) {
  const double x = kWidth - kMarginRight + 12;
  const double y = kMarginTop + 16 + 18.0 * static_cast<double>(row);
  os << "<line x1=\"" << x << "\" y1=\"" << y - 4 << "\" x2=\"" << x + 20 << "\" y2=\"" << y - 4
     << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n"
     << "<text x=\"" << x + 26 << "\" y=\"" << y << "\">" << label << "</text>\n";
}

}  // namespace

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void write_bias_csv(std::ostream& os, const BiasStudyResult& result) {
  os << "method,coeff_index,oracle,mean,std,stderr\n";
  for (const auto& m : result.methods) {
    for (std::size_t k = 0; k < m.mean.size(); ++k) {
      os << method_name(m.method) << ',' << k << ',' << format_double(result.oracle[k]) << ','
         << format_double(m.mean[k]) << ',' << format_double(m.stddev[k]) << ','
         << format_double(m.std_error[k]) << '\n';
    }
  }
}

void write_bias_grid_csv(std::ostream& os, const BiasStudyResult& result) {
  os << (result.config.measure.is_real() ? "t" : "theta") << ",oracle";
  for (const auto& m : result.methods) os << ',' << method_name(m.method) << "_mean," << method_name(m.method) << "_std";
  os << '\n';
  for (std::size_t g = 0; g < result.grid.size(); ++g) {
    os << format_double(result.grid[g]) << ',' << format_double(result.grid_oracle[g]);
    for (const auto& m : result.methods) {
      os << ',' << format_double(m.grid_mean[g]) << ',' << format_double(m.grid_stddev[g]);
    }
    os << '\n';
  }
}

void write_curves_csv(std::ostream& os, const ErrorCurveResult& result) {
  os << "method,n,q10,median,q90,trials\n";
  for (const auto& p : result.points) {
    os << method_name(p.method) << ',' << p.n << ',' << format_double(p.q10) << ','
       << format_double(p.median) << ',' << format_double(p.q90) << ',' << p.trials << '\n';
  }
}

void write_trials_csv(std::ostream& os, std::span<const TrialRecord> trials) {
  std::size_t width = 0;
  for (const auto& t : trials) width = std::max(width, t.coeffs.size());
  os << "method,n,trial,relative_error";
  for (std::size_t k = 0; k < width; ++k) os << ",c" << k;
  os << '\n';
  for (const auto& t : trials) {
    os << method_name(t.method) << ',' << t.n << ',' << t.trial << ',' << format_double(t.relative_error);
    for (double c : t.coeffs) os << ',' << format_double(c);
    os << '\n';
  }
}

void write_bias_svg(std::ostream& os, const BiasStudyResult& result) {
  Frame f{result.grid.front(), result.grid.back(), std::numeric_limits<double>::infinity(),
          -std::numeric_limits<double>::infinity()};
  for (double v : result.grid_oracle) {
    f.y0 = std::min(f.y0, v);
    f.y1 = std::max(f.y1, v);
  }
  for (const auto& m : result.methods) {
    for (std::size_t g = 0; g < m.grid_mean.size(); ++g) {
      f.y0 = std::min(f.y0, m.grid_mean[g] - m.grid_stddev[g]);
      f.y1 = std::max(f.y1, m.grid_mean[g] + m.grid_stddev[g]);
    }
  }
  // Keep the oracle readable when a baseline has very wide bands.
  const double span = std::max(1e-12, *std::max_element(result.grid_oracle.begin(), result.grid_oracle.end()) -
                                          *std::min_element(result.grid_oracle.begin(), result.grid_oracle.end()));
  f.y0 = std::max(f.y0, *std::min_element(result.grid_oracle.begin(), result.grid_oracle.end()) - 2.0 * span);
  f.y1 = std::min(f.y1, *std::max_element(result.grid_oracle.begin(), result.grid_oracle.end()) + 2.0 * span);
  if (!(f.y1 > f.y0)) f.y1 = f.y0 + 1.0;

  const auto clip = [&f](std::vector<double> v) {
    for (double& x : v) x = std::clamp(x, f.y0, f.y1);
    return v;
  };
  svg_open(os);
  svg_axes(os, f, result.config.measure.is_real() ? "t" : "theta", "p(t)", false);
  std::size_t row = 0;
  for (const auto& m : result.methods) {
    std::vector<double> lo(m.grid_mean.size()), hi(m.grid_mean.size());
    for (std::size_t g = 0; g < lo.size(); ++g) {
      lo[g] = m.grid_mean[g] - m.grid_stddev[g];
      hi[g] = m.grid_mean[g] + m.grid_stddev[g];
    }
    svg_band(os, f, result.grid, clip(lo), clip(hi), method_color(m.method));
  }
  svg_line(os, f, result.grid, clip(result.grid_oracle), "black", false);
  svg_legend(os, row++, "best fit", "black");
  for (const auto& m : result.methods) {
    svg_line(os, f, result.grid, clip(m.grid_mean), method_color(m.method), true);
    svg_legend(os, row++, method_name(m.method), method_color(m.method));
  }
  os << "</svg>\n";
}

void write_curves_svg(std::ostream& os, const ErrorCurveResult& result) {
  constexpr double kFloor = 1e-16;
  Frame f{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(),
          std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (const auto& p : result.points) {
    f.x0 = std::min(f.x0, static_cast<double>(p.n));
    f.x1 = std::max(f.x1, static_cast<double>(p.n));
    f.y0 = std::min(f.y0, std::log10(std::max(p.q10, kFloor)));
    f.y1 = std::max(f.y1, std::log10(std::max(p.q90, kFloor)));
  }
  if (!(f.x1 > f.x0)) f.x1 = f.x0 + 1.0;
  if (!(f.y1 > f.y0)) f.y1 = f.y0 + 1.0;
  svg_open(os);
  svg_axes(os, f, "n", "relative error", true);
  std::size_t row = 0;
  for (Method m : result.config.methods) {
    std::vector<double> xs, lo, mid, hi;
    for (const auto& p : result.points) {
      if (p.method != m) continue;
      xs.push_back(static_cast<double>(p.n));
      lo.push_back(std::log10(std::max(p.q10, kFloor)));
      mid.push_back(std::log10(std::max(p.median, kFloor)));
      hi.push_back(std::log10(std::max(p.q90, kFloor)));
    }
    svg_band(os, f, xs, lo, hi, method_color(m));
    svg_line(os, f, xs, mid, method_color(m), false);
    svg_legend(os, row++, method_name(m), method_color(m));
  }
  os << "</svg>\n";
}

void write_file_atomic(const std::filesystem::path& path, std::string_view contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InvalidArgument("cannot open '" + tmp.string() + "' for writing");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) throw NumericError("failed writing '" + tmp.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw InvalidArgument("cannot rename onto '" + path.string() + "': " + ec.message());
  }
}

}  // namespace debias
