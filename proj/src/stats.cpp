#include "planwise/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace planwise::stats {
namespace {

double log_likelihood(std::span<const double> z, std::span<const int> y, double a, double b) {
  double ll = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    const double eta = a + b * z[i];
    // log(1 + exp(eta)) without overflow
    const double softplus = eta > 0 ? eta + std::log1p(std::exp(-eta)) : std::log1p(std::exp(eta));
    ll += y[i] * eta - softplus;
  }
  return ll;
}

double sigmoid(double eta) {
  if (eta >= 0) return 1.0 / (1.0 + std::exp(-eta));
  const double e = std::exp(eta);
  return e / (1.0 + e);
}

}  // namespace

LogisticFit fit_univariate_logistic(std::span<const double> x, std::span<const int> y) {
  if (x.size() != y.size()) throw std::invalid_argument("logistic fit: x and y differ in length");
  LogisticFit fit;
  const std::size_t n = x.size();
  if (n < 2) return fit;

  double min0 = INFINITY, max0 = -INFINITY, min1 = INFINITY, max1 = -INFINITY;
  std::size_t ones = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (y[i] != 0 && y[i] != 1) throw std::invalid_argument("logistic fit: labels must be 0/1");
    if (y[i]) {
      ++ones;
      min1 = std::min(min1, x[i]);
      max1 = std::max(max1, x[i]);
    } else {
      min0 = std::min(min0, x[i]);
      max0 = std::max(max0, x[i]);
    }
  }
  if (ones == 0 || ones == n) return fit;
  // Complete or quasi-complete separation: the MLE does not exist.
  if (max0 <= min1 || max1 <= min0) return fit;

  // Fit on standardized x, then map back. The Wald statistic of the slope is
  // unchanged by the affine map.
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
  double ss = 0.0;
  for (double v : x) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / static_cast<double>(n));
  if (!(sd > 0)) return fit;
  std::vector<double> z(n);
  for (std::size_t i = 0; i < n; ++i) z[i] = (x[i] - mean) / sd;

  const double prior = static_cast<double>(ones) / static_cast<double>(n);
  double a = std::log(prior / (1.0 - prior));
  double b = 0.0;
  double ll = log_likelihood(z, y, a, b);
  double h00 = 0, h01 = 0, h11 = 0;
  bool converged = false;
  int iter = 0;

  for (iter = 1; iter <= kLogisticMaxIterations; ++iter) {
    double g0 = 0, g1 = 0;
    h00 = h01 = h11 = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double p = sigmoid(a + b * z[i]);
      const double w = p * (1.0 - p);
      const double r = y[i] - p;
      g0 += r;
      g1 += r * z[i];
      h00 += w;
      h01 += w * z[i];
      h11 += w * z[i] * z[i];
    }
    const double det = h00 * h11 - h01 * h01;
    if (!(det > 0) || !std::isfinite(det)) break;
    double da = (h11 * g0 - h01 * g1) / det;
    double db = (h00 * g1 - h01 * g0) / det;

    double step = 1.0;
    double next_ll = log_likelihood(z, y, a + da, b + db);
    while (next_ll < ll - 1e-12 && step > 1e-6) {
      step *= 0.5;
      next_ll = log_likelihood(z, y, a + step * da, b + step * db);
    }
    a += step * da;
    b += step * db;
    const double change = std::abs(next_ll - ll);
    ll = next_ll;
    if (change < kLogisticTolerance) {
      converged = true;
      break;
    }
  }
  fit.iterations = std::min(iter, kLogisticMaxIterations);
  if (!converged) return fit;

  // Information matrix at the optimum.
  h00 = h01 = h11 = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double p = sigmoid(a + b * z[i]);
    const double w = p * (1.0 - p);
    h00 += w;
    h01 += w * z[i];
    h11 += w * z[i] * z[i];
  }
  const double det = h00 * h11 - h01 * h01;
  if (!(det > 0) || !std::isfinite(det)) return fit;
  const double se_b = std::sqrt(h00 / det);
  if (!std::isfinite(se_b) || !(se_b > 0)) return fit;

  fit.beta = b / sd;
  fit.alpha = a - b * mean / sd;
  fit.beta_se = se_b / sd;
  const double wald = b / se_b;
  fit.p_value = std::clamp(std::erfc(std::abs(wald) / std::sqrt(2.0)), 0.0, 1.0);
  fit.converged = std::isfinite(fit.alpha) && std::isfinite(fit.beta);
  return fit;
}

double entropy_from_counts(std::span<const std::size_t> counts) {
  std::size_t total = 0;
  for (auto c : counts) total += c;
  if (total == 0) return 0.0;
  double h = 0.0;
  for (auto c : counts) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / static_cast<double>(total);
    h -= p * std::log2(p);
  }
  return h;
}

double simpson_integrate(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw std::invalid_argument("simpson: x and f(x) differ in length");
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if (!(xs[i] > xs[i - 1])) throw std::invalid_argument("simpson: x must be strictly increasing");
  }
  const std::size_t n = xs.size();
  if (n < 2) return 0.0;

  auto same_width = [&](std::size_t i) {
    const double h0 = xs[i + 1] - xs[i];
    const double h1 = xs[i + 2] - xs[i + 1];
    return std::abs(h0 - h1) <= 1e-9 * std::max(std::abs(h0), std::abs(h1));
  };

  double area = 0.0;
  std::size_t i = 0;
  while (i + 1 < n) {
    if (i + 2 < n && same_width(i)) {
      const double h = (xs[i + 2] - xs[i]) / 2.0;
      area += h / 3.0 * (ys[i] + 4.0 * ys[i + 1] + ys[i + 2]);
      i += 2;
    } else {
      area += (xs[i + 1] - xs[i]) * (ys[i] + ys[i + 1]) / 2.0;
      i += 1;
    }
  }
  return area;
}

double median(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("median of an empty set");
  std::vector<double> v(values.begin(), values.end());
  std::sort(v.begin(), v.end());
  const std::size_t mid = v.size() / 2;
  return v.size() % 2 ? v[mid] : (v[mid - 1] + v[mid]) / 2.0;
}

}  // namespace planwise::stats
