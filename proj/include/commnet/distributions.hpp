#pragma once

namespace commnet::stats {

// Regularized incomplete beta I_x(a, b) via the Lentz continued fraction.
// Throws DataError for a <= 0, b <= 0 or x outside [0, 1].
double incomplete_beta(double x, double a, double b);

// Student-t CDF. df >= 1 (real valued).
double t_cdf(double x, double df);
// Two-sided tail probability P(|T| >= |t|).
double t_two_sided_p(double t, double df);

// F distribution CDF and upper tail for x >= 0, df1, df2 >= 1.
double f_cdf(double x, double df1, double df2);
double f_sf(double x, double df1, double df2);

}  // namespace commnet::stats
