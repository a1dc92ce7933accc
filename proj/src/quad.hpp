// quad.hpp — adaptive Gauss–Kronrod quadrature for smooth real integrands.

#pragma once

#include <functional>

#include "errors.hpp"

namespace ffd {

struct QuadOptions {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    int max_depth = 40;
};

// Integrates f over [a, b] with a 15-point Kronrod rule and recursive
// bisection until the embedded 7-point Gauss estimate agrees to tolerance.
// Throws accuracy_error when the recursion depth is exhausted.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadOptions& opt = {});

} // namespace ffd
