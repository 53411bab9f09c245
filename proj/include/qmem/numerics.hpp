#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

// Small numerical toolbox shared by the library: adaptive quadrature,
// golden-section maximization, bisection and grid quadrature rules.
namespace qmem {

using ScalarFunction = std::function<double(double)>;

// Adaptive Simpson quadrature with Richardson correction.
// tol is an absolute tolerance for the whole interval.
double adaptive_simpson(const ScalarFunction& f, double a, double b,
                        double tol = 1e-12, int max_depth = 48);

// Maximizes a unimodal function on [a, b]. rel_tol bounds the final
// bracket width relative to the bracket magnitude. Returns {argmax, max}.
std::pair<double, double> golden_section_max(const ScalarFunction& f,
                                             double a, double b,
                                             double rel_tol = 1e-10);

// Bisection for f(x) = 0 on a sign-changing bracket [a, b].
double bisect(const ScalarFunction& f, double a, double b,
              double x_tol = 1e-12, int max_iter = 200);

// Cumulative integral of uniformly sampled values (step h), returned at
// every sample. Composite Simpson at even indices, a one-sided 4th-order
// three-point rule at odd indices, so the whole series is O(h^4).
std::vector<double> cumulative_simpson(double h, const std::vector<double>& f);

// Total integral of a uniformly sampled series.
double simpson_total(double h, const std::vector<double>& f);

}  // namespace qmem
