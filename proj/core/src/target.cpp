#include "debias/target.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "debias/errors.hpp"

namespace debias {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::vector<double> parse_numbers(std::string_view text, std::string_view what) {
  std::vector<double> values;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    const std::string_view token =
        text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    double value = 0.0;
    const auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc{} || end != token.data() + token.size() ||
        !std::isfinite(value)) {
      throw InvalidArgument("malformed number '" + std::string(token) + "' in " +
                            std::string(what));
    }
    values.push_back(value);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return values;
}

double wrap_angle(double theta) {
  double r = std::fmod(theta, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  return r;
}

std::string join(const std::vector<double>& values) {
  std::ostringstream os;
  os.precision(17);
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) os << ',';
    os << values[i];
  }
  return os.str();
}

}  // namespace

Target::Target(Spec spec) : spec_(std::move(spec)) {
  if (const auto* ind = std::get_if<Indicator>(&spec_)) {
    if (!(ind->lower < ind->upper)) throw InvalidArgument("indicator needs lower < upper");
  } else if (const auto* arc = std::get_if<Arc>(&spec_)) {
    if (!(arc->lower < arc->upper) || arc->upper - arc->lower > kTwoPi) {
      throw InvalidArgument("arc needs lower < upper and length at most 2pi");
    }
  } else if (std::get<Polynomial>(spec_).coeffs.empty()) {
    throw InvalidArgument("polynomial target needs at least one coefficient");
  }
}

Target Target::parse(std::string_view text) {
  const std::size_t colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw InvalidArgument("target must look like indicator:a,b | arc:a,b | poly:c0,c1,...");
  }
  const std::string_view kind = text.substr(0, colon);
  const std::string_view args = text.substr(colon + 1);
  if (kind == "poly") return Target(Polynomial{parse_numbers(args, "poly target")});
  if (kind == "indicator" || kind == "arc") {
    const auto v = parse_numbers(args, "target bounds");
    if (v.size() != 2) throw InvalidArgument(std::string(kind) + " target needs exactly two bounds");
    if (kind == "indicator") return Target(Indicator{v[0], v[1]});
    return Target(Arc{v[0], v[1]});
  }
  throw InvalidArgument("unknown target kind '" + std::string(kind) + "'");
}

std::string Target::to_string() const {
  if (const auto* ind = std::get_if<Indicator>(&spec_)) {
    return "indicator:" + join({ind->lower, ind->upper});
  }
  if (const auto* arc = std::get_if<Arc>(&spec_)) return "arc:" + join({arc->lower, arc->upper});
  return "poly:" + join(std::get<Polynomial>(spec_).coeffs);
}

void Target::check_compatible(Measure measure) const {
  if (const auto* ind = std::get_if<Indicator>(&spec_)) {
    if (!measure.is_real()) throw InvalidArgument("indicator targets need a real measure");
    if (measure.kind() == MeasureKind::kUniform && (ind->lower < -1.0 || ind->upper > 1.0)) {
      throw InvalidArgument("indicator bounds must lie within [-1, 1] for the uniform measure");
    }
  } else if (std::holds_alternative<Arc>(spec_)) {
    if (measure.is_real()) throw InvalidArgument("arc targets need the circle measure");
  }
}

double Target::operator()(double t) const {
  if (const auto* ind = std::get_if<Indicator>(&spec_)) {
    return (t >= ind->lower && t <= ind->upper) ? 1.0 : 0.0;
  }
  if (std::holds_alternative<Arc>(spec_)) {
    throw InvalidArgument("arc targets are defined on the circle only");
  }
  const auto& c = std::get<Polynomial>(spec_).coeffs;
  double acc = 0.0;
  for (std::size_t k = c.size(); k-- > 0;) acc = acc * t + c[k];
  return acc;
}

std::complex<double> Target::operator()(std::complex<double> z) const {
  if (const auto* arc = std::get_if<Arc>(&spec_)) {
    const double offset = wrap_angle(std::arg(z) - arc->lower);
    return (offset <= arc->upper - arc->lower) ? 1.0 : 0.0;
  }
  if (std::holds_alternative<Indicator>(spec_)) {
    throw InvalidArgument("indicator targets are defined on the real line only");
  }
  const auto& c = std::get<Polynomial>(spec_).coeffs;
  std::complex<double> acc = 0.0;
  for (std::size_t k = c.size(); k-- > 0;) acc = acc * z + c[k];
  return acc;
}

std::vector<double> Target::breakpoints() const {
  if (const auto* ind = std::get_if<Indicator>(&spec_)) return {ind->lower, ind->upper};
  if (const auto* arc = std::get_if<Arc>(&spec_)) return {arc->lower, arc->upper};
  return {};
}

PiecewiseFunction Target::piecewise() const {
  return PiecewiseFunction{[self = *this](double t) { return self(t); }, breakpoints()};
}

double TargetReference::optimal_residual() const {
  double norm2 = 0.0;
  for (double c : coeffs) norm2 += c * c;
  for (const auto& c : fourier_coeffs) norm2 += std::norm(c);
  return mean_square - norm2;
}

std::vector<std::complex<double>> fourier_coeffs(const Target& target, int degree) {
  if (degree < 0) throw InvalidArgument("degree must be nonnegative");
  const auto d = static_cast<std::size_t>(degree);
  std::vector<std::complex<double>> c(d + 1, 0.0);
  if (const auto* arc = std::get_if<Arc>(&target.spec())) {
    const double length = arc->upper - arc->lower;
    c[0] = length / kTwoPi;
    for (std::size_t k = 1; k <= d; ++k) {
      // (1/2pi) int_a^b e^{-ik theta} d theta
      const double kd = static_cast<double>(k);
      const std::complex<double> ea = std::polar(1.0, -kd * arc->lower);
      const std::complex<double> eb = std::polar(1.0, -kd * arc->upper);
      c[k] = (ea - eb) / (std::complex<double>(0.0, kd) * kTwoPi);
    }
    return c;
  }
  if (const auto* poly = std::get_if<Polynomial>(&target.spec())) {
    for (std::size_t k = 0; k <= d && k < poly->coeffs.size(); ++k) c[k] = poly->coeffs[k];
    return c;
  }
  throw InvalidArgument("indicator targets have no circle Fourier expansion");
}

TargetReference make_reference(Measure measure, int degree, const Target& target) {
  target.check_compatible(measure);
  TargetReference ref;
  ref.measure = measure;
  ref.degree = degree;
  if (!measure.is_real()) {
    ref.fourier_coeffs = fourier_coeffs(target, degree);
    if (const auto* arc = std::get_if<Arc>(&target.spec())) {
      ref.mean_square = (arc->upper - arc->lower) / kTwoPi;
    } else {
      double sum = 0.0;
      for (double c : std::get<Polynomial>(target.spec()).coeffs) sum += c * c;
      ref.mean_square = sum;
    }
    return ref;
  }
  const OrthoBasis basis(measure, degree);
  const PiecewiseFunction pf = target.piecewise();
  ref.coeffs = best_fit_coeffs(basis, pf);
  std::size_t order = 4 * basis.size();
  if (const auto* poly = std::get_if<Polynomial>(&target.spec())) {
    order = std::max(order, 2 * poly->coeffs.size() + 8);
  }
  ref.mean_square = mean_square(measure, pf, order);
  return ref;
}

}  // namespace debias
