#include "aet/volterra.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "aet/error.hpp"

namespace aet {
namespace {

constexpr std::size_t kNearZeroPoints = 10;

void check_integrable_near_zero(const GridFunction& g) {
  const std::size_t count = std::min(kNearZeroPoints, g.points.size());
  if (count == 0) throw Error(ErrorCode::BadGrid, "empty grid");
  double worst = 0.0;
  for (std::size_t i = 0; i < count; ++i) worst = std::max(worst, std::abs(g.values[i]) / g.points[i]);
  const double reference = std::abs(g.values[count - 1]) / g.points[count - 1];
  // g(t)/t must stay bounded as t -> 0; a 1/t^a blow-up shows up as growth
  // across the first decade of samples.
  if (worst > 4.0 * reference + 1e-12) {
    throw Error(ErrorCode::NotIntegrableNearZero,
                "g(t)/t grows towards 0 (" + std::to_string(worst) + " vs " +
                    std::to_string(reference) + ")");
  }
}

std::size_t last_point_at_or_below(const std::vector<double>& points, double x) {
  const auto it = std::upper_bound(points.begin(), points.end(), x);
  return static_cast<std::size_t>(it - points.begin());  // count of points <= x
}

}  // namespace

std::vector<double> GridFunction::offset_grid(double X, double h) {
  if (!(h > 0.0) || !(X > 0.0) || h > X) throw Error(ErrorCode::BadGrid, "need 0 < h <= X");
  const double cells = X / h;
  const auto count = static_cast<std::size_t>(std::llround(cells));
  if (std::abs(static_cast<double>(count) - cells) > 1e-9 * cells) {
    throw Error(ErrorCode::BadGrid, "X must be a whole number of steps h");
  }
  std::vector<double> points(count);
  for (std::size_t i = 0; i < count; ++i) {
    points[i] = (static_cast<double>(2 * i + 1) * h) / 2.0;
    const double distance = std::abs(points[i] - std::round(points[i]));
    if (distance < 0.5 * h * (1.0 - 1e-6)) {
      throw Error(ErrorCode::BadGrid, "grid point " + std::to_string(points[i]) +
                                          " is closer than h/2 to an integer; use h = 1/k");
    }
  }
  return points;
}

GridFunction GridFunction::sample(const std::function<Complex(double)>& fn, double X, double h) {
  GridFunction g;
  g.h = h;
  g.X = X;
  g.points = offset_grid(X, h);
  g.values.reserve(g.points.size());
  for (double t : g.points) g.values.push_back(fn(t));
  return g;
}

PiecewiseFunction PiecewiseFunction::continuous(std::function<Complex(double)> fn) {
  return {fn, fn, fn};
}

PiecewiseFunction PiecewiseFunction::zero() {
  return continuous([](double) { return Complex{}; });
}

std::vector<Complex> cumulative_improper_integral(const GridFunction& g) {
  check_integrable_near_zero(g);
  std::vector<Complex> out(g.points.size());
  // model g(t) ~ c t on (0, t_1]: int_0^{t_1} c dt = c t_1 = g(t_1)
  out[0] = g.values[0];
  Complex previous = g.values[0] / g.points[0];
  for (std::size_t i = 1; i < g.points.size(); ++i) {
    const Complex current = g.values[i] / g.points[i];
    out[i] = out[i - 1] + 0.5 * (g.points[i] - g.points[i - 1]) * (previous + current);
    previous = current;
  }
  return out;
}

Complex improper_integral(const GridFunction& g, double x) {
  if (x < 0.0 || x > g.X * (1.0 + 1e-12)) {
    throw Error(ErrorCode::XBeyondGrid, "x = " + std::to_string(x) + " outside (0, X]");
  }
  const std::vector<Complex> cumulative = cumulative_improper_integral(g);
  const std::size_t below = last_point_at_or_below(g.points, x);
  if (below == 0) return g.values[0] / g.points[0] * x;

  const std::size_t j = below - 1;
  const Complex rj = g.values[j] / g.points[j];
  Complex rx = rj;
  if (j + 1 < g.points.size()) {
    const Complex rn = g.values[j + 1] / g.points[j + 1];
    rx = rj + (rn - rj) * ((x - g.points[j]) / (g.points[j + 1] - g.points[j]));
  }
  return cumulative[j] + 0.5 * (x - g.points[j]) * (rj + rx);
}

ResidualReport residual(const GridFunction& candidate, const PiecewiseFunction& e2) {
  const std::vector<Complex> integral = cumulative_improper_integral(candidate);
  ResidualReport report;
  report.points = candidate.points;
  report.residuals.resize(candidate.points.size());
  report.e2.resize(candidate.points.size());
  for (std::size_t i = 0; i < candidate.points.size(); ++i) {
    report.e2[i] = e2.value(candidate.points[i]);
    report.residuals[i] = candidate.values[i] - integral[i] - report.e2[i];
    const double size = std::abs(report.residuals[i]);
    if (size > report.sup) {
      report.sup = size;
      report.argmax = candidate.points[i];
    }
  }
  return report;
}

ResidualReport residual(const SolutionFamily& candidate, const PiecewiseFunction& e2, double X,
                        double h) {
  return residual(GridFunction::sample(candidate, X, h), e2);
}

GridFunction solve_from_e2(const PiecewiseFunction& e2, double X, double h, const Anchor& anchor) {
  if (!(anchor.x > 0.0) || anchor.x > X) {
    throw Error(ErrorCode::AnchorOutOfRange, "anchor must lie in (0, X]");
  }
  if (h > 0.1) throw Error(ErrorCode::BadGrid, "need at least 10 grid points below 1");

  GridFunction out;
  out.h = h;
  out.X = X;
  out.points = GridFunction::offset_grid(X, h);
  const auto& t = out.points;
  const std::size_t count = t.size();

  auto weight = [](double x, const Complex& value) { return value / (x * x); };
  std::vector<Complex> e2_values(count);
  std::vector<Complex> q(count);  // int_{t_1}^{t_i} E_2(u)/u^2 du
  for (std::size_t i = 0; i < count; ++i) e2_values[i] = e2.value(t[i]);
  for (std::size_t i = 1; i < count; ++i) {
    q[i] = q[i - 1] + 0.5 * (t[i] - t[i - 1]) *
                          (weight(t[i - 1], e2_values[i - 1]) + weight(t[i], e2_values[i]));
  }

  // Same integral up to the anchor, split at an integer if one is crossed.
  const double x0 = anchor.x;
  const Complex v0 = weight(x0, e2.value(x0));
  Complex q0;
  const std::size_t below = last_point_at_or_below(t, x0);
  if (below == 0) {
    q0 = -0.5 * (t[0] - x0) * (v0 + weight(t[0], e2_values[0]));
  } else {
    const std::size_t j = below - 1;
    const double k = std::floor(x0);
    const Complex vj = weight(t[j], e2_values[j]);
    if (k > t[j]) {
      q0 = q[j] + 0.5 * (k - t[j]) * (vj + weight(k, e2.left_limit(k)));
      if (x0 > k) q0 += 0.5 * (x0 - k) * (weight(k, e2.right_limit(k)) + v0);
    } else {
      q0 = q[j] + 0.5 * (x0 - t[j]) * (vj + v0);
    }
  }

  const Complex slope = (anchor.value - e2.value(x0)) / x0;
  out.values.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    out.values[i] = e2_values[i] + t[i] * (q[i] - q0) + slope * t[i];
  }
  return out;
}

Complex fit_family_parameter(const GridFunction& g, const std::function<Complex(double)>& f1) {
  Complex numerator{};
  double denominator = 0.0;
  for (std::size_t i = 0; i < g.points.size(); ++i) {
    const double x = g.points[i];
    numerator += x * (g.values[i] - x * f1(x));
    denominator += x * x;
  }
  return numerator / denominator;
}

ProbeResult homogeneous_probe(const GridFunction& g, double tolerance) {
  const ResidualReport check = residual(g, PiecewiseFunction::zero());
  double scale = 1.0;
  for (const Complex& v : g.values) scale = std::max(scale, std::abs(v));
  if (check.sup > tolerance * scale) {
    throw Error(ErrorCode::NotHomogeneous, "homogeneous residual " + std::to_string(check.sup) +
                                               " exceeds tolerance");
  }
  ProbeResult out;
  out.residual = check.sup;
  Complex numerator{};
  double denominator = 0.0;
  for (std::size_t i = 0; i < g.points.size(); ++i) {
    numerator += g.points[i] * g.values[i];
    denominator += g.points[i] * g.points[i];
  }
  out.A = numerator / denominator;
  for (std::size_t i = 0; i < g.points.size(); ++i) {
    out.deviation = std::max(out.deviation, std::abs(g.values[i] - out.A * g.points[i]));
  }
  return out;
}

}  // namespace aet
