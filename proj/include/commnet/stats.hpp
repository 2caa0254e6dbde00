#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "commnet/distributions.hpp"

namespace commnet::stats {

struct Descriptives {
  std::size_t n = 0;
  double mean = 0.0;
  std::optional<double> sd;  // sample SD (n - 1); absent for n == 1
  double median = 0.0;
};

// Throws DataError for an empty column.
Descriptives descriptives(std::span<const double> column);

struct Correlation {
  double r = 0.0;
  double p_value = 1.0;  // two-sided, t with n - 2 df
  std::size_t n = 0;
};

// Throws DataError for n < 3, unequal lengths or zero variance.
Correlation pearson_r(std::span<const double> x, std::span<const double> y);

struct OlsFit {
  std::vector<std::string> names;  // "(Intercept)" first, then predictors
  std::vector<double> coefficients;
  std::vector<double> std_errors;
  std::vector<double> t_values;
  std::vector<double> p_values;
  std::vector<std::vector<double>> covariance;  // sigma^2 (X'X)^-1
  std::vector<double> fitted;
  std::vector<double> residuals;
  double rss = 0.0;
  double tss = 0.0;
  double sigma2 = 0.0;
  double r_squared = 0.0;
  double f_statistic = 0.0;
  double f_p_value = 1.0;
  std::size_t n = 0;
  std::size_t df1 = 0;  // number of predictors
  std::size_t df2 = 0;  // n - df1 - 1

  std::size_t index_of(const std::string& name) const;  // throws DataError
};

inline constexpr const char* kIntercept = "(Intercept)";

// Least squares with an intercept. Solves the normal equations by pivoted
// Cholesky on the column-scaled X'X. Throws DataError naming the collinear
// columns when the condition estimate exceeds 1e12. With df2 == 0 the fit is
// exact and standard errors / F are NaN.
OlsFit ols_fit(const std::vector<std::string>& predictor_names,
               const std::vector<std::vector<double>>& predictor_columns, std::span<const double> y);

struct FTestResult {
  double f_value = 0.0;
  double df1 = 0.0;
  double df2 = 0.0;
  double p_value = 1.0;
};

// Compares a full model against one whose predictors are a subset, on the
// same rows. Throws DataError when the models are not nested.
FTestResult nested_f_test(const OlsFit& full, const OlsFit& reduced);

// Wald F test of H0: combination . b == target (one restriction).
FTestResult linear_hypothesis(const OlsFit& fit, std::span<const double> combination, double target);

// "***" for p <= .001, "*" for p <= .05, "" otherwise.
std::string significance_stars(double p);

}  // namespace commnet::stats
