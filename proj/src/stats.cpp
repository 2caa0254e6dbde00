#include "commnet/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "commnet/errors.hpp"

namespace commnet::stats {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kMaxCondition = 1e12;

using Matrix = std::vector<std::vector<double>>;

Matrix zeros(std::size_t n) { return Matrix(n, std::vector<double>(n, 0.0)); }

// Inverse of a symmetric positive definite matrix with unit diagonal via
// pivoted Cholesky. Pivots below 1 / kMaxCondition mean the matrix is
// numerically singular; the error names the next column and the pivoted
// columns it depends on.
Matrix spd_inverse(Matrix a, const std::vector<std::string>& names) {
  const std::size_t p = a.size();
  std::vector<std::size_t> perm(p);
  std::iota(perm.begin(), perm.end(), 0);
  Matrix l = zeros(p);
  std::vector<double> d(p);

  for (std::size_t k = 0; k < p; ++k) {
    for (std::size_t j = k; j < p; ++j) {
      double v = a[j][j];
      for (std::size_t m = 0; m < k; ++m) v -= l[j][m] * l[j][m];
      d[j] = v;
    }
    const std::size_t q = static_cast<std::size_t>(std::max_element(d.begin() + k, d.end()) - d.begin());
    if (q != k) {
      std::swap(a[k], a[q]);
      for (auto& row : a) std::swap(row[k], row[q]);
      std::swap(l[k], l[q]);
      std::swap(perm[k], perm[q]);
      std::swap(d[k], d[q]);
    }
    if (!(d[k] > 1.0 / kMaxCondition)) {
      // Column k is (nearly) a combination of the pivoted ones: x solves
      // L L' x = a[0..k)[k], and l[k][0..k) already holds L^-1 a[0..k)[k].
      std::vector<double> x(k);
      for (std::size_t i = k; i-- > 0;) {
        double v = l[k][i];
        for (std::size_t m = i + 1; m < k; ++m) v -= l[m][i] * x[m];
        x[i] = v / l[i][i];
      }
      std::string cols = names[perm[k]];
      for (std::size_t i = 0; i < k; ++i)
        if (std::fabs(x[i]) > 1e-6) cols += ", " + names[perm[i]];
      throw DataError("design matrix is rank deficient (condition estimate > 1e12): columns " + cols +
                      " are collinear");
    }
    l[k][k] = std::sqrt(d[k]);
    for (std::size_t i = k + 1; i < p; ++i) {
      double v = a[i][k];
      for (std::size_t m = 0; m < k; ++m) v -= l[i][m] * l[k][m];
      l[i][k] = v / l[k][k];
    }
  }

  // inv(L), lower triangular.
  Matrix li = zeros(p);
  for (std::size_t i = 0; i < p; ++i) {
    li[i][i] = 1.0 / l[i][i];
    for (std::size_t j = 0; j < i; ++j) {
      double v = 0.0;
      for (std::size_t m = j; m < i; ++m) v -= l[i][m] * li[m][j];
      li[i][j] = v / l[i][i];
    }
  }
  Matrix inv = zeros(p);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      double v = 0.0;
      for (std::size_t m = i; m < p; ++m) v += li[m][i] * li[m][j];
      inv[perm[i]][perm[j]] = v;
      inv[perm[j]][perm[i]] = v;
    }
  return inv;
}

}  // namespace

Descriptives descriptives(std::span<const double> column) {
  if (column.empty()) throw DataError("descriptives of an empty column");
  Descriptives out;
  out.n = column.size();
  const double n = static_cast<double>(out.n);
  out.mean = std::accumulate(column.begin(), column.end(), 0.0) / n;
  if (out.n > 1) {
    double ss = 0.0;
    for (double v : column) ss += (v - out.mean) * (v - out.mean);
    out.sd = std::sqrt(ss / (n - 1.0));
  }
  std::vector<double> sorted(column.begin(), column.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t mid = out.n / 2;
  out.median = out.n % 2 ? sorted[mid] : 0.5 * (sorted[mid - 1] + sorted[mid]);
  return out;
}

Correlation pearson_r(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw DataError("pearson_r needs columns of equal length");
  if (x.size() < 3) throw DataError("pearson_r needs at least 3 observations");
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) throw DataError("pearson_r undefined for a zero-variance column");
  Correlation c;
  c.n = x.size();
  c.r = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
  const double df = n - 2.0;
  if (std::fabs(c.r) >= 1.0) {
    c.p_value = 0.0;
  } else {
    const double t = c.r * std::sqrt(df / (1.0 - c.r * c.r));
    c.p_value = t_two_sided_p(t, df);
  }
  return c;
}

std::size_t OlsFit::index_of(const std::string& name) const {
  auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) throw DataError("model has no coefficient '" + name + "'");
  return static_cast<std::size_t>(it - names.begin());
}

OlsFit ols_fit(const std::vector<std::string>& predictor_names,
               const std::vector<std::vector<double>>& predictor_columns, std::span<const double> y) {
  if (predictor_names.size() != predictor_columns.size())
    throw DataError("ols_fit: predictor names and columns differ in count");
  const std::size_t n = y.size();
  const std::size_t p = predictor_columns.size() + 1;
  for (std::size_t j = 0; j < predictor_columns.size(); ++j)
    if (predictor_columns[j].size() != n)
      throw DataError("ols_fit: column '" + predictor_names[j] + "' length differs from response");
  for (double v : y)
    if (!std::isfinite(v)) throw DataError("ols_fit: response has non-finite values");
  for (std::size_t j = 0; j < predictor_columns.size(); ++j)
    for (double v : predictor_columns[j])
      if (!std::isfinite(v)) throw DataError("ols_fit: column '" + predictor_names[j] + "' has non-finite values");
  if (n < p) throw DataError("ols_fit: " + std::to_string(n) + " rows cannot identify " + std::to_string(p) + " coefficients");

  OlsFit fit;
  fit.names.push_back(kIntercept);
  fit.names.insert(fit.names.end(), predictor_names.begin(), predictor_names.end());
  fit.n = n;
  fit.df1 = p - 1;
  fit.df2 = n - p;

  auto x = [&](std::size_t row, std::size_t col) { return col == 0 ? 1.0 : predictor_columns[col - 1][row]; };

  Matrix xtx = zeros(p);
  std::vector<double> xty(p, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t a = 0; a < p; ++a) {
      const double xa = x(i, a);
      xty[a] += xa * y[i];
      for (std::size_t b = 0; b <= a; ++b) xtx[a][b] += xa * x(i, b);
    }
  for (std::size_t a = 0; a < p; ++a)
    for (std::size_t b = 0; b < a; ++b) xtx[b][a] = xtx[a][b];

  std::vector<double> scale(p);
  for (std::size_t a = 0; a < p; ++a) {
    if (!(xtx[a][a] > 0.0)) throw DataError("design matrix is rank deficient: column " + fit.names[a] + " is all zeros");
    scale[a] = std::sqrt(xtx[a][a]);
  }
  Matrix scaled = zeros(p);
  for (std::size_t a = 0; a < p; ++a)
    for (std::size_t b = 0; b < p; ++b) scaled[a][b] = xtx[a][b] / (scale[a] * scale[b]);
  Matrix xtx_inv = spd_inverse(std::move(scaled), fit.names);
  for (std::size_t a = 0; a < p; ++a)
    for (std::size_t b = 0; b < p; ++b) xtx_inv[a][b] /= scale[a] * scale[b];

  fit.coefficients.assign(p, 0.0);
  for (std::size_t a = 0; a < p; ++a)
    for (std::size_t b = 0; b < p; ++b) fit.coefficients[a] += xtx_inv[a][b] * xty[b];

  const double y_mean = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
  fit.fitted.assign(n, 0.0);
  fit.residuals.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double v = 0.0;
    for (std::size_t a = 0; a < p; ++a) v += x(i, a) * fit.coefficients[a];
    fit.fitted[i] = v;
    fit.residuals[i] = y[i] - v;
    fit.rss += fit.residuals[i] * fit.residuals[i];
    fit.tss += (y[i] - y_mean) * (y[i] - y_mean);
  }
  fit.r_squared = fit.tss > 0.0 ? std::clamp(1.0 - fit.rss / fit.tss, 0.0, 1.0) : 0.0;

  fit.sigma2 = fit.df2 > 0 ? fit.rss / static_cast<double>(fit.df2) : kNaN;
  fit.covariance = xtx_inv;
  for (auto& row : fit.covariance)
    for (double& v : row) v *= fit.sigma2;
  for (std::size_t a = 0; a < p; ++a) {
    const double se = std::sqrt(fit.covariance[a][a]);
    fit.std_errors.push_back(se);
    const double t = fit.coefficients[a] / se;
    fit.t_values.push_back(t);
    fit.p_values.push_back(fit.df2 > 0 && std::isfinite(t) ? t_two_sided_p(t, static_cast<double>(fit.df2))
                                                          : (fit.df2 > 0 ? 0.0 : kNaN));
  }

  if (fit.df2 == 0) {
    fit.f_statistic = kNaN;
    fit.f_p_value = kNaN;
  } else if (fit.df1 == 0 || fit.tss == 0.0) {
    fit.f_statistic = 0.0;
    fit.f_p_value = 1.0;
  } else {
    const double explained = std::max(fit.tss - fit.rss, 0.0) / static_cast<double>(fit.df1);
    fit.f_statistic = explained / (fit.rss / static_cast<double>(fit.df2));
    fit.f_p_value = f_sf(fit.f_statistic, static_cast<double>(fit.df1), static_cast<double>(fit.df2));
  }
  return fit;
}

FTestResult nested_f_test(const OlsFit& full, const OlsFit& reduced) {
  if (full.n != reduced.n) throw DataError("nested F test: models fitted on different row counts");
  for (const auto& name : reduced.names)
    if (std::find(full.names.begin(), full.names.end(), name) == full.names.end())
      throw DataError("nested F test: predictor '" + name + "' of the reduced model is not in the full model");
  if (full.df2 == 0) throw DataError("nested F test: full model has no residual degrees of freedom");
  FTestResult r;
  r.df1 = static_cast<double>(reduced.df2 - full.df2);
  r.df2 = static_cast<double>(full.df2);
  if (r.df1 == 0.0) {
    r.f_value = 0.0;
    r.p_value = 1.0;
    return r;
  }
  const double gain = std::max(reduced.rss - full.rss, 0.0);
  r.f_value = (gain / r.df1) / (full.rss / r.df2);
  r.p_value = f_sf(r.f_value, r.df1, r.df2);
  return r;
}

FTestResult linear_hypothesis(const OlsFit& fit, std::span<const double> combination, double target) {
  if (combination.size() != fit.coefficients.size())
    throw DataError("linear hypothesis: combination has " + std::to_string(combination.size()) +
                    " weights for " + std::to_string(fit.coefficients.size()) + " coefficients");
  if (fit.df2 == 0) throw DataError("linear hypothesis: model has no residual degrees of freedom");
  double estimate = 0.0;
  double variance = 0.0;
  for (std::size_t a = 0; a < combination.size(); ++a) {
    estimate += combination[a] * fit.coefficients[a];
    for (std::size_t b = 0; b < combination.size(); ++b)
      variance += combination[a] * fit.covariance[a][b] * combination[b];
  }
  if (!(variance > 0.0) || !std::isfinite(variance))
    throw DataError("linear hypothesis: restricted covariance is singular");
  FTestResult r;
  r.df1 = 1.0;
  r.df2 = static_cast<double>(fit.df2);
  const double diff = estimate - target;
  r.f_value = diff * diff / variance;
  r.p_value = f_sf(r.f_value, r.df1, r.df2);
  return r;
}

std::string significance_stars(double p) {
  if (std::isnan(p)) return "";
  if (p <= 0.001) return "***";
  if (p <= 0.05) return "*";
  return "";
}

}  // namespace commnet::stats
