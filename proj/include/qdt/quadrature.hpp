#pragma once

#include <functional>

namespace qdt {

// Adaptive Gauss-Kronrod (7/15) integration to an absolute tolerance.
// Throws DivergenceError on non-finite integrand values or failure to
// reach the tolerance within the subdivision budget.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol);

} // namespace qdt
