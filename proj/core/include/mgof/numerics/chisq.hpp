#pragma once

namespace mgof::num {

// Regularized incomplete gamma functions P(a, x) and Q(a, x) = 1 - P(a, x).
double gamma_p(double a, double x);
double gamma_q(double a, double x);

// P(chi2_df > x).
double chisq_sf(double x, int df);

}  // namespace mgof::num
