#include "commnet/distributions.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "commnet/errors.hpp"

namespace commnet::stats {

namespace {

// Continued fraction for I_x(a, b), modified Lentz. Converges quickly for
// x < (a + 1) / (a + b + 2).
double beta_continued_fraction(double x, double a, double b) {
  constexpr int kMaxIterations = 20000;
  constexpr double kEps = 1e-16;
  constexpr double kTiny = 1e-300;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIterations; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < kEps) return h;
  }
  throw DataError("incomplete beta continued fraction did not converge (a=" + std::to_string(a) +
                  ", b=" + std::to_string(b) + ", x=" + std::to_string(x) + ")");
}

void require_df(double df, const char* name) {
  if (!(df >= 1.0) || !std::isfinite(df)) throw DataError(std::string("degrees of freedom ") + name + " must be >= 1");
}

}  // namespace

double incomplete_beta(double x, double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw DataError("incomplete beta needs a > 0 and b > 0");
  if (!(x >= 0.0 && x <= 1.0)) throw DataError("incomplete beta needs x in [0, 1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_continued_fraction(x, a, b) / a;
  return 1.0 - front * beta_continued_fraction(1.0 - x, b, a) / b;
}

double t_cdf(double x, double df) {
  require_df(df, "df");
  if (std::isnan(x)) throw DataError("t_cdf of NaN");
  if (std::isinf(x)) return x > 0 ? 1.0 : 0.0;
  const double tail = 0.5 * incomplete_beta(df / (df + x * x), 0.5 * df, 0.5);
  return x >= 0.0 ? 1.0 - tail : tail;
}

double t_two_sided_p(double t, double df) {
  require_df(df, "df");
  if (std::isinf(t)) return 0.0;
  return incomplete_beta(df / (df + t * t), 0.5 * df, 0.5);
}

double f_cdf(double x, double df1, double df2) {
  require_df(df1, "df1");
  require_df(df2, "df2");
  if (!(x >= 0.0)) throw DataError("f_cdf needs x >= 0");
  if (std::isinf(x)) return 1.0;
  return incomplete_beta(df1 * x / (df1 * x + df2), 0.5 * df1, 0.5 * df2);
}

double f_sf(double x, double df1, double df2) {
  require_df(df1, "df1");
  require_df(df2, "df2");
  if (!(x >= 0.0)) throw DataError("f_sf needs x >= 0");
  if (std::isinf(x)) return 0.0;
  return incomplete_beta(df2 / (df2 + df1 * x), 0.5 * df2, 0.5 * df1);
}

}  // namespace commnet::stats
