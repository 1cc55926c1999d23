#pragma once

#include "ltmor/types.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

namespace ltmor {

/// Ricker source time function
///   q(t) = (1 - a^2/2 (t - t0)^2) exp(-a^2/4 (t - t0)^2),
/// i.e. q = g'' with g(t) = -(2/a^2) exp(-a^2/4 (t - t0)^2).
struct RickerParams {
  double alpha = 2.0 * std::numbers::pi;  // 1/time
  double t0 = 2.5;                        // time

  void validate() const {
    if (!(alpha > 0.0) || !(t0 > 0.0)) {
      throw std::invalid_argument("RickerParams: alpha and t0 must be positive");
    }
  }
};

namespace detail {

// Physicists' Hermite polynomials H_2..H_4.
template <typename T>
T hermite2(T x) { return T(4) * x * x - T(2); }
template <typename T>
T hermite3(T x) { return (T(8) * x * x - T(12)) * x; }
template <typename T>
T hermite4(T x) {
  const T x2 = x * x;
  return (T(16) * x2 - T(48)) * x2 + T(12);
}

}  // namespace detail

template <typename T = double>
T ricker_eval(const RickerParams& p, T t) {
  const T x = T(p.alpha) * (t - T(p.t0)) / T(2);
  return -detail::hermite2(x) / T(2) * std::exp(-x * x);
}

template <typename T = double>
T ricker_dt_eval(const RickerParams& p, T t) {
  const T x = T(p.alpha) * (t - T(p.t0)) / T(2);
  return T(p.alpha) / T(4) * detail::hermite3(x) * std::exp(-x * x);
}

template <typename T = double>
T ricker_dt2_eval(const RickerParams& p, T t) {
  const T x = T(p.alpha) * (t - T(p.t0)) / T(2);
  return -T(p.alpha * p.alpha) / T(8) * detail::hermite4(x) * std::exp(-x * x);
}

/// Gaussian antiderivative g with g'' = q.
template <typename T = double>
T ricker_potential_eval(const RickerParams& p, T t) {
  const T x = T(p.alpha) * (t - T(p.t0)) / T(2);
  return -T(2) / T(p.alpha * p.alpha) * std::exp(-x * x);
}

/// Real part of the exponent in the closed-form transforms below.
inline double laplace_exponent_real(const RickerParams& p, Complex s) {
  const Complex z = s / p.alpha;
  return (z * z).real() - s.real() * p.t0;
}

inline void check_laplace_overflow(const RickerParams& p, Complex s) {
  const double e = laplace_exponent_real(p, s);
  if (!(e <= 700.0)) {
    throw NumericalError("bilateral Laplace transform overflows at s = (" +
                         std::to_string(s.real()) + ", " + std::to_string(s.imag()) +
                         "): exponent " + std::to_string(e) + " > 700");
  }
}

/// Bilateral Laplace transform of g: -(4 sqrt(pi)/a^3) exp((s/a)^2 - s t0).
inline Complex bilateral_laplace_g(const RickerParams& p, Complex s) {
  check_laplace_overflow(p, s);
  const Complex z = s / p.alpha;
  const double scale = -4.0 * std::sqrt(std::numbers::pi) / (p.alpha * p.alpha * p.alpha);
  return scale * std::exp(z * z - s * p.t0);
}

/// Bilateral Laplace transform of q'' (= g''''): s^4 * B{g}(s).
inline Complex bilateral_laplace_d2q(const RickerParams& p, Complex s) {
  const Complex s2 = s * s;
  return s2 * s2 * bilateral_laplace_g(p, s);
}

/// Upper bound |B{q''}(s)| <= (4 sqrt(pi)/a^3) e^{-Re s t0 + (Re s)^2/a^2} |s|^4 e^{-(Im s)^2/a^2}.
inline double bilateral_laplace_d2q_bound(const RickerParams& p, Complex s) {
  const double a2 = p.alpha * p.alpha;
  const double mod2 = std::norm(s);
  return 4.0 * std::sqrt(std::numbers::pi) / (a2 * p.alpha) *
         std::exp(-s.real() * p.t0 + s.real() * s.real() / a2 - s.imag() * s.imag() / a2) *
         mod2 * mod2;
}

}  // namespace ltmor
