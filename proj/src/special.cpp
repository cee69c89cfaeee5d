#include "layerpot/special.hpp"

#include <cmath>

#include "layerpot/errors.hpp"

namespace layerpot {

namespace {

constexpr double EULER_GAMMA = 0.57721566490153286060651209;

// Asymptotic tail sum_{k} prod_j (mu - (2j-1)^2) / (k! (8x)^k) with mu = 0,
// truncated at the smallest term.
double asym_tail(double x, bool alternating) {
  double sum = 1.0;
  double term = 1.0;
  double prev = 1.0;
  for (int k = 1; k < 64; ++k) {
    double num = (2.0 * k - 1.0) * (2.0 * k - 1.0);
    term *= num / (8.0 * x * k);
    if (term >= prev) break; // series started diverging
    prev = term;
    sum += (alternating && (k % 2 == 1)) ? -term : term;
  }
  return sum;
}

} // namespace

double bessel_I0(double x) {
  x = std::abs(x);
  if (x < ARG_SWITCH) {
    long double sum = 1.0L, term = 1.0L;
    long double q = (long double)(x) * (long double)(x) / 4.0L;
    for (int k = 1; k < 80; ++k) {
      term *= q / ((long double)k * (long double)k);
      sum += term;
      if (term < 1e-22L * sum) break;
    }
    return (double)sum;
  }
  return std::exp(x) / std::sqrt(2.0 * M_PI * x) * asym_tail(x, false);
}

double bessel_I1(double x) {
  double sign = x < 0 ? -1.0 : 1.0;
  x = std::abs(x);
  if (x < ARG_SWITCH) {
    long double q = (long double)(x) * (long double)(x) / 4.0L;
    long double term = (long double)(x) / 2.0L;
    long double sum = term;
    for (int k = 1; k < 80; ++k) {
      term *= q / ((long double)k * (long double)(k + 1));
      sum += term;
      if (term < 1e-22L * sum) break;
    }
    return sign * (double)sum;
  }
  // I1 asymptotic: mu = 4, terms prod_j (4 - (2j-1)^2)/(k! (8x)^k).
  double sum = 1.0, term = 1.0, prev = 1.0;
  for (int k = 1; k < 64; ++k) {
    double num = 4.0 - (2.0 * k - 1.0) * (2.0 * k - 1.0);
    term *= -num / (8.0 * x * k);
    double mag = std::abs(term);
    if (mag >= prev) break;
    prev = mag;
    sum += term;
  }
  return sign * std::exp(x) / std::sqrt(2.0 * M_PI * x) * sum;
}

double bessel_K0(double x) {
  if (x <= 0.0) throw OriginEvaluation("K0 requires a positive argument");
  if (x < ARG_SWITCH) {
    // K0 = -(ln(x/2)+gamma) I0(x) + sum_{k>=1} H_k (x^2/4)^k / (k!)^2
    long double q = (long double)(x) * (long double)(x) / 4.0L;
    long double i0 = 1.0L, iterm = 1.0L;
    long double hsum = 0.0L, hterm = 1.0L, hk = 0.0L;
    for (int k = 1; k < 80; ++k) {
      iterm *= q / ((long double)k * (long double)k);
      i0 += iterm;
      hk += 1.0L / (long double)k;
      hterm *= q / ((long double)k * (long double)k);
      hsum += hk * hterm;
      if (iterm < 1e-22L * i0 && hterm < 1e-22L) break;
    }
    long double lead = -(std::log((long double)x / 2.0L) + (long double)EULER_GAMMA);
    return (double)(lead * i0 + hsum);
  }
  return std::sqrt(M_PI / (2.0 * x)) * std::exp(-x) * asym_tail(x, true);
}

} // namespace layerpot
