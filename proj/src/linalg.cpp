#include "layerpot/linalg.hpp"

#include <algorithm>

namespace layerpot {

double min_eigenvalue_sym(const Mat& A) {
  if (A.n == 2) {
    double a = A(0, 0), b = A(0, 1), c = A(1, 1);
    double mean = 0.5 * (a + c);
    double rad = std::sqrt(0.25 * (a - c) * (a - c) + b * b);
    return mean - rad;
  }
  // Trigonometric solution for the symmetric 3x3 case.
  double p1 = A(0, 1) * A(0, 1) + A(0, 2) * A(0, 2) + A(1, 2) * A(1, 2);
  if (p1 == 0.0) {
    return std::min({A(0, 0), A(1, 1), A(2, 2)});
  }
  double q = (A(0, 0) + A(1, 1) + A(2, 2)) / 3.0;
  double p2 = (A(0, 0) - q) * (A(0, 0) - q) + (A(1, 1) - q) * (A(1, 1) - q) +
              (A(2, 2) - q) * (A(2, 2) - q) + 2.0 * p1;
  double p = std::sqrt(p2 / 6.0);
  Mat B = Mat::zero(3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) B(i, j) = (A(i, j) - (i == j ? q : 0.0)) / p;
  double r = det(B) / 2.0;
  r = std::clamp(r, -1.0, 1.0);
  double phi = std::acos(r) / 3.0;
  double eig_max = q + 2.0 * p * std::cos(phi);
  double eig_min = q + 2.0 * p * std::cos(phi + 2.0 * M_PI / 3.0);
  double eig_mid = 3.0 * q - eig_max - eig_min;
  return std::min({eig_max, eig_mid, eig_min});
}

Mat cholesky_lower(const Mat& A) {
  Mat L = Mat::zero(A.n);
  for (int i = 0; i < A.n; ++i) {
    for (int j = 0; j <= i; ++j) {
      double s = A(i, j);
      for (int k = 0; k < j; ++k) s -= L(i, k) * L(j, k);
      if (i == j) {
        if (s <= 0.0) throw NotPositiveDefinite("pivot not positive in Cholesky factorization");
        L(i, i) = std::sqrt(s);
      } else {
        L(i, j) = s / L(j, j);
      }
    }
  }
  return L;
}

} // namespace layerpot
