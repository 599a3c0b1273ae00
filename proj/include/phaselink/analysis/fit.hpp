#pragma once

#include <vector>

namespace phaselink {

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_se = 0.0;     // standard errors from the residual variance
    double intercept_se = 0.0;
    double residual_rms = 0.0;
};

// Ordinary least squares y = slope * x + intercept; needs at least two
// distinct abscissae, standard errors need at least three points.
LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y);

// Pearson correlation coefficient of two equal-length series.
double correlation(const std::vector<double>& a, const std::vector<double>& b);

} // namespace phaselink
