#pragma once

// Reference values computed without touching the library's grid machinery:
// closed forms, error functions, and fine Simpson quadrature.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

inline double Phi(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

inline double normal_pdf(double x, double mean, double var) {
  const double d = x - mean;
  return std::exp(-0.5 * d * d / var) / std::sqrt(2.0 * std::numbers::pi * var);
}

/// Composite Simpson rule with an even number of panels.
inline double simpson(const std::function<double(double)>& f, double lo, double hi, int panels = 20000) {
  if (panels % 2 != 0) {
    ++panels;
  }
  const double h = (hi - lo) / panels;
  double sum = f(lo) + f(hi);
  for (int i = 1; i < panels; ++i) {
    sum += (i % 2 == 1 ? 4.0 : 2.0) * f(lo + i * h);
  }
  return sum * h / 3.0;
}

/// integral of |N(m1, v1) - N(m2, v2)| from the crossing points of the two
/// densities: 2 (P(A) - Q(A)) with A = {p > q}.
inline double gaussian_l1(double m1, double v1, double m2, double v2) {
  const double s1 = std::sqrt(v1);
  const double s2 = std::sqrt(v2);
  const auto mass = [](double m, double s, double lo, double hi) { return Phi((hi - m) / s) - Phi((lo - m) / s); };
  if (std::abs(v1 - v2) <= 1e-15 * std::max(v1, v2)) {
    const double d = std::abs(m1 - m2);
    return 2.0 * (2.0 * Phi(d / (2.0 * s1)) - 1.0);
  }
  // log p - log q = A t^2 + B t + C
  const double A = 0.5 / v2 - 0.5 / v1;
  const double B = m1 / v1 - m2 / v2;
  const double C = 0.5 * m2 * m2 / v2 - 0.5 * m1 * m1 / v1 + 0.5 * std::log(v2 / v1);
  const double disc = std::max(B * B - 4.0 * A * C, 0.0);
  double r1 = (-B - std::sqrt(disc)) / (2.0 * A);
  double r2 = (-B + std::sqrt(disc)) / (2.0 * A);
  if (r1 > r2) {
    std::swap(r1, r2);
  }
  const double p_in = mass(m1, s1, r1, r2);
  const double q_in = mass(m2, s2, r1, r2);
  // narrower density dominates between the roots
  return v1 < v2 ? 2.0 * (p_in - q_in) : 2.0 * (q_in - p_in);
}

/// Stone example: integral over x of m_n(x) L1(pi_n(. | x), N(x + shift, 1)).
inline double stone_probability_functional(double a, double n, double shift) {
  const double s = n / (1.0 + n);
  const double mean = a * n;
  const double sd = std::sqrt(1.0 + n);
  return simpson(
      [&](double x) { return normal_pdf(x, mean, 1.0 + n) * gaussian_l1(s * (x + a), s, x + shift, 1.0); },
      mean - 10.0 * sd, mean + 10.0 * sd, 4000);
}

/// Least-squares slope of log(values) against log(ns).
inline double loglog_slope(const std::vector<double>& ns, const std::vector<double>& values) {
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    mx += std::log(ns[i]);
    my += std::log(values[i]);
  }
  mx /= ns.size();
  my /= ns.size();
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    sxy += (std::log(ns[i]) - mx) * (std::log(values[i]) - my);
    sxx += (std::log(ns[i]) - mx) * (std::log(ns[i]) - mx);
  }
  return sxy / sxx;
}

}  // namespace oracle
