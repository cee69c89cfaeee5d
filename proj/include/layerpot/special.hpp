#ifndef LAYERPOT_SPECIAL_HPP
#define LAYERPOT_SPECIAL_HPP

namespace layerpot {

// Modified Bessel functions for x >= 0. Power series below the switch point
// ARG_SWITCH, asymptotic series beyond it. The series branch carries long
// double accumulation; the asymptotic branch is truncated at its smallest
// term, which caps the achievable accuracy near the switch at roughly 2e-8
// for K0 (full double precision again for x > 15).
inline constexpr double ARG_SWITCH = 8.0;

double bessel_I0(double x);
double bessel_I1(double x);
double bessel_K0(double x);

} // namespace layerpot

#endif
