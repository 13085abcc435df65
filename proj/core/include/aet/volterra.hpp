#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "aet/numeric.hpp"

namespace aet {

// Samples of a function on the half-offset grid t_i = (i - 1/2) h,
// i = 1..X/h. With h = 1/k every integer sits at the midpoint of a cell.
struct GridFunction {
  double h = 0.0;
  double X = 0.0;
  std::vector<double> points;
  std::vector<Complex> values;

  static std::vector<double> offset_grid(double X, double h);
  static GridFunction sample(const std::function<Complex(double)>& fn, double X, double h);
};

// A function whose only discontinuities are at integers, where it takes the
// half value. Limits default to the value for continuous functions.
struct PiecewiseFunction {
  std::function<Complex(double)> value;
  std::function<Complex(double)> left_limit;
  std::function<Complex(double)> right_limit;

  static PiecewiseFunction continuous(std::function<Complex(double)> fn);
  static PiecewiseFunction zero();
};

// F_1(x) = (f_1(x) + A) x.
struct SolutionFamily {
  std::function<Complex(double)> f1;
  Complex A{0.0, 0.0};

  Complex operator()(double x) const { return x == 0.0 ? Complex{} : (f1(x) + A) * x; }
};

// lim_{eps->0+} int_eps^x g(t)/t dt: trapezoid on the grid plus the model
// g(t) ~ c t on (0, t_1]. Throws Error(NotIntegrableNearZero | XBeyondGrid).
Complex improper_integral(const GridFunction& g, double x);

// The same integral evaluated at every grid point.
std::vector<Complex> cumulative_improper_integral(const GridFunction& g);

struct ResidualReport {
  std::vector<double> points;
  std::vector<Complex> residuals;  // F_1(x) - int_0^x F_1(t)/t dt - E_2(x)
  std::vector<Complex> e2;
  double sup = 0.0;
  double argmax = 0.0;
};

ResidualReport residual(const GridFunction& candidate, const PiecewiseFunction& e2);
ResidualReport residual(const SolutionFamily& candidate, const PiecewiseFunction& e2, double X,
                        double h);

struct Anchor {
  double x = 1.0;
  Complex value{};
};

// Solves F_1 - int_0^x F_1(t)/t dt = E_2 through (H/x)' = E_2/x^2:
//
//   F_1(x) = E_2(x) + x int_{x0}^x E_2(t)/t^2 dt + K x,
//
// with K fixed by F_1(x0) = value. Throws Error(AnchorOutOfRange | BadGrid).
GridFunction solve_from_e2(const PiecewiseFunction& e2, double X, double h, const Anchor& anchor);

// Least-squares A in g(x) ~ (f_1(x) + A) x over the grid.
Complex fit_family_parameter(const GridFunction& g, const std::function<Complex(double)>& f1);

struct ProbeResult {
  Complex A{};
  double deviation = 0.0;  // sup |g(x) - A x|
  double residual = 0.0;   // homogeneous residual of g
};

// Fits g(x) ~ A x for a solution of the homogeneous equation. Throws
// Error(NotHomogeneous) when the homogeneous residual exceeds
// tolerance * max(1, sup |g|).
ProbeResult homogeneous_probe(const GridFunction& g, double tolerance = 1e-6);

}  // namespace aet
