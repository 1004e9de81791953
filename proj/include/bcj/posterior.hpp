#pragma once

#include <span>
#include <vector>

namespace bcj {

/// Which side of an oriented pair won a comparison. There is no tie.
enum class Winner { First, Second };

/// Beta(alpha, beta) belief over the probability that the first item of a
/// pair beats the second. Starts from the flat Beta(1, 1) prior; each
/// observed win adds one to the corresponding parameter.
struct PairPosterior {
  double alpha = 1.0;
  double beta = 1.0;

  PairPosterior() = default;
  /// Throws bcj::Error(InvalidArgument) unless alpha >= 1 and beta >= 1.
  PairPosterior(double alpha, double beta);

  /// The same belief seen from the other item's side.
  PairPosterior flipped() const { return PairPosterior{beta, alpha}; }

  /// Number of judgements folded in on top of the flat prior.
  double observations() const { return alpha + beta - 2.0; }

  friend bool operator==(const PairPosterior&, const PairPosterior&) = default;
};

PairPosterior update_pair(PairPosterior p, Winner outcome);

double posterior_mean(const PairPosterior& p);

/// (alpha-1)/(alpha+beta-2); the uniform Beta(1,1) has no unique mode and
/// is assigned 0.5.
double posterior_mode(const PairPosterior& p);

/// Differential entropy in nats:
///   ln B(a,b) - (a-1) psi(a) - (b-1) psi(b) + (a+b-2) psi(a+b).
/// Symmetric in (a, b) bit-for-bit.
double beta_entropy(const PairPosterior& p);

/// Density at a single point of [0, 1].
double beta_pdf(const PairPosterior& p, double x);

/// Density at each grid point. Throws bcj::Error(InvalidArgument) if any
/// grid value lies outside [0, 1].
std::vector<double> posterior_pdf(const PairPosterior& p, std::span<const double> grid);

/// Digamma function for x > 0, absolute error below 1e-12 for x >= 1.
double digamma(double x);

}  // namespace bcj
