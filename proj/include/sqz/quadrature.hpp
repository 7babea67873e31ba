#pragma once

#include <functional>
#include <vector>

namespace sqz {

// Adaptive Gauss-Kronrod (7/15) integration of f over [a, b]. Infinite limits
// are allowed and handled by the map x = t / (1 - t^2).
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = 1e-12, double rel_tol = 1e-12);

// Composite Gauss-Legendre nodes and weights on [a, b]: `panels` panels of
// ten points each.
void gauss_legendre(double a, double b, int panels, std::vector<double>& nodes,
                    std::vector<double>& weights);

}  // namespace sqz
