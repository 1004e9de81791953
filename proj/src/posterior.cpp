#include "bcj/posterior.hpp"

#include <algorithm>
#include <cmath>
#include <math.h>  // lgamma_r
#include <string>

#include "bcj/errors.hpp"

namespace bcj {

namespace {

// std::lgamma stores the sign in a global, which races across sessions
// running on different threads; the reentrant form does not.
double log_gamma(double x) {
  int sign = 0;
  return ::lgamma_r(x, &sign);
}

}  // namespace

PairPosterior::PairPosterior(double a, double b) : alpha(a), beta(b) {
  if (!(a >= 1.0) || !(b >= 1.0) || !std::isfinite(a) || !std::isfinite(b)) {
    throw Error(ErrorCode::InvalidArgument,
                "Beta parameters must be finite and >= 1, got (" + std::to_string(a) + ", " +
                    std::to_string(b) + ")");
  }
}

PairPosterior update_pair(PairPosterior p, Winner outcome) {
  if (outcome == Winner::First) {
    p.alpha += 1.0;
  } else {
    p.beta += 1.0;
  }
  return p;
}

double posterior_mean(const PairPosterior& p) { return p.alpha / (p.alpha + p.beta); }

double posterior_mode(const PairPosterior& p) {
  const double denom = p.alpha + p.beta - 2.0;
  if (denom <= 0.0) {
    return 0.5;
  }
  return (p.alpha - 1.0) / denom;
}

double digamma(double x) {
  if (!(x > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "digamma requires a positive argument");
  }
  double shift = 0.0;
  while (x < 10.0) {
    shift -= 1.0 / x;
    x += 1.0;
  }
  // Asymptotic expansion with Bernoulli-number coefficients; at x >= 10 the
  // first omitted term is below 1e-14.
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  const double series =
      inv2 * (1.0 / 12.0 -
              inv2 * (1.0 / 120.0 -
                      inv2 * (1.0 / 252.0 - inv2 * (1.0 / 240.0 - inv2 * (1.0 / 132.0)))));
  return shift + std::log(x) - 0.5 * inv - series;
}

double beta_entropy(const PairPosterior& p) {
  // Evaluate in a canonical argument order so h(a,b) == h(b,a) exactly.
  const double a = std::min(p.alpha, p.beta);
  const double b = std::max(p.alpha, p.beta);
  const double log_beta_fn = log_gamma(a) + log_gamma(b) - log_gamma(a + b);
  return log_beta_fn - (a - 1.0) * digamma(a) - (b - 1.0) * digamma(b) +
         (a + b - 2.0) * digamma(a + b);
}

double beta_pdf(const PairPosterior& p, double x) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument,
                "pdf grid value outside [0, 1]: " + std::to_string(x));
  }
  const double log_norm = log_gamma(p.alpha + p.beta) - log_gamma(p.alpha) - log_gamma(p.beta);
  // pow keeps 0^0 == 1 at the boundary for alpha or beta equal to 1.
  return std::exp(log_norm) * std::pow(x, p.alpha - 1.0) * std::pow(1.0 - x, p.beta - 1.0);
}

std::vector<double> posterior_pdf(const PairPosterior& p, std::span<const double> grid) {
  std::vector<double> out;
  out.reserve(grid.size());
  for (double x : grid) {
    out.push_back(beta_pdf(p, x));
  }
  return out;
}

}  // namespace bcj
