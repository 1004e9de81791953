#pragma once

// Independent reference computations used only by the tests. None of these
// call into the library's numerical routines.

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

namespace bcj::oracle {

/// Composite Simpson's rule on [a, b] with an even number of intervals.
inline double simpson(const std::function<double(double)>& f, double a, double b, std::size_t intervals) {
  if (intervals % 2) ++intervals;
  const double h = (b - a) / static_cast<double>(intervals);
  double s = f(a) + f(b);
  for (std::size_t k = 1; k < intervals; ++k) {
    s += f(a + h * static_cast<double>(k)) * (k % 2 ? 4.0 : 2.0);
  }
  return s * h / 3.0;
}

/// Beta pdf for integer parameters via factorials: (a+b-1)!/((a-1)!(b-1)!).
inline double integer_beta_pdf(int a, int b, double x) {
  double norm = 1.0;
  for (int k = 1; k <= a + b - 1; ++k) norm *= k;
  for (int k = 1; k <= a - 1; ++k) norm /= k;
  for (int k = 1; k <= b - 1; ++k) norm /= k;
  double v = norm;
  for (int k = 0; k < a - 1; ++k) v *= x;
  for (int k = 0; k < b - 1; ++k) v *= (1.0 - x);
  return v;
}

/// -integral f ln f over [0, 1] for an integer Beta.
inline double integer_beta_entropy(int a, int b) {
  return simpson(
      [&](double x) {
        const double f = integer_beta_pdf(a, b, x);
        return f > 0.0 ? -f * std::log(f) : 0.0;
      },
      0.0, 1.0, 20000);
}

/// Rank pmf by enumerating every win/loss pattern against the opponents:
/// rank = N - wins, N = probs.size() + 1.
inline std::vector<double> enumerate_rank_pmf(const std::vector<double>& probs) {
  const std::size_t m = probs.size();
  std::vector<double> pmf(m + 1, 0.0);
  for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
    double pr = 1.0;
    std::size_t wins = 0;
    for (std::size_t k = 0; k < m; ++k) {
      if (mask & (std::size_t{1} << k)) {
        pr *= probs[k];
        ++wins;
      } else {
        pr *= 1.0 - probs[k];
      }
    }
    pmf[m - wins] += pr;  // rank - 1 = N - wins - 1 = m - wins
  }
  return pmf;
}

inline double total_variation(const std::vector<double>& p, const std::vector<double>& q) {
  double tv = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) tv += std::abs(p[k] - q[k]);
  return 0.5 * tv;
}

/// Bradley-Terry MLE by zooming grid search over log-strengths of three
/// items (item 0 pinned at 0). counts[i][j] = wins of i over j.
/// Returns pairwise win probabilities P(i beats j) for (0,1), (0,2), (1,2).
inline std::vector<double> btm_grid_search_3(const double counts[3][3]) {
  auto loglik = [&](double t1, double t2) {
    const double t[3] = {0.0, t1, t2};
    double ll = 0.0;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        if (i == j || counts[i][j] == 0.0) continue;
        // log sigmoid(t_i - t_j), computed stably
        const double d = t[i] - t[j];
        ll += counts[i][j] * (d > 0 ? -std::log1p(std::exp(-d)) : d - std::log1p(std::exp(d)));
      }
    }
    return ll;
  };
  double c1 = 0.0, c2 = 0.0, half = 12.0;
  const int steps = 8;
  for (int round = 0; round < 18; ++round) {
    double best = -INFINITY, b1 = c1, b2 = c2;
    for (int a = -steps; a <= steps; ++a) {
      for (int b = -steps; b <= steps; ++b) {
        const double t1 = c1 + half * a / steps;
        const double t2 = c2 + half * b / steps;
        const double ll = loglik(t1, t2);
        if (ll > best) {
          best = ll;
          b1 = t1;
          b2 = t2;
        }
      }
    }
    c1 = b1;
    c2 = b2;
    half *= 0.25;
  }
  auto sig = [](double d) { return 1.0 / (1.0 + std::exp(-d)); };
  return {sig(0.0 - c1), sig(0.0 - c2), sig(c1 - c2)};
}

}  // namespace bcj::oracle
