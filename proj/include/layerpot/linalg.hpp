#ifndef LAYERPOT_LINALG_HPP
#define LAYERPOT_LINALG_HPP

#include <array>
#include <cmath>
#include <complex>

#include "layerpot/errors.hpp"

namespace layerpot {

using Complex = std::complex<double>;

// Small dense vector for ambient dimension n in {2,3}. Unused slots stay zero,
// so most operations can loop over all three entries.
struct Vec {
  std::array<double, 3> v{0.0, 0.0, 0.0};
  int n = 3;

  Vec() = default;
  Vec(double x, double y) : v{x, y, 0.0}, n(2) {}
  Vec(double x, double y, double z) : v{x, y, z}, n(3) {}
  static Vec zero(int dim) {
    Vec r;
    r.n = dim;
    return r;
  }

  double& operator[](int i) { return v[static_cast<std::size_t>(i)]; }
  double operator[](int i) const { return v[static_cast<std::size_t>(i)]; }
};

inline Vec operator+(const Vec& a, const Vec& b) {
  Vec r = a;
  for (int i = 0; i < 3; ++i) r[i] += b[i];
  return r;
}
inline Vec operator-(const Vec& a, const Vec& b) {
  Vec r = a;
  for (int i = 0; i < 3; ++i) r[i] -= b[i];
  return r;
}
inline Vec operator*(double s, const Vec& a) {
  Vec r = a;
  for (int i = 0; i < 3; ++i) r[i] *= s;
  return r;
}
inline Vec operator-(const Vec& a) { return -1.0 * a; }

inline double dot(const Vec& a, const Vec& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
inline double norm(const Vec& a) { return std::sqrt(dot(a, a)); }
inline Vec normalized(const Vec& a) {
  double m = norm(a);
  Vec r = a;
  for (int i = 0; i < 3; ++i) r[i] /= m;
  return r;
}
inline Vec cross(const Vec& a, const Vec& b) {
  Vec r(a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0]);
  return r;
}

// Complex vector with the same layout.
struct CVec {
  std::array<Complex, 3> v{Complex(0), Complex(0), Complex(0)};
  int n = 3;

  CVec() = default;
  explicit CVec(const Vec& a) : n(a.n) {
    for (int i = 0; i < 3; ++i) v[static_cast<std::size_t>(i)] = a[i];
  }
  static CVec zero(int dim) {
    CVec r;
    r.n = dim;
    return r;
  }

  Complex& operator[](int i) { return v[static_cast<std::size_t>(i)]; }
  Complex operator[](int i) const { return v[static_cast<std::size_t>(i)]; }
};

inline CVec operator+(const CVec& a, const CVec& b) {
  CVec r = a;
  for (int i = 0; i < 3; ++i) r[i] += b[i];
  return r;
}
inline CVec operator-(const CVec& a, const CVec& b) {
  CVec r = a;
  for (int i = 0; i < 3; ++i) r[i] -= b[i];
  return r;
}
inline CVec operator*(const Complex& s, const CVec& a) {
  CVec r = a;
  for (int i = 0; i < 3; ++i) r[i] *= s;
  return r;
}
inline CVec operator*(double s, const CVec& a) { return Complex(s) * a; }

// Unconjugated pairings; the kernels below always contract complex fields
// against real geometric vectors.
inline Complex dot(const CVec& a, const Vec& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
inline Complex dot(const Vec& a, const CVec& b) { return dot(b, a); }
inline double norm(const CVec& a) {
  return std::sqrt(std::norm(a[0]) + std::norm(a[1]) + std::norm(a[2]));
}

// Real n x n matrix, row-major in a 3x3 block.
struct Mat {
  std::array<double, 9> m{};
  int n = 3;

  static Mat zero(int dim) {
    Mat r;
    r.n = dim;
    return r;
  }
  static Mat identity(int dim) {
    Mat r = zero(dim);
    for (int i = 0; i < dim; ++i) r(i, i) = 1.0;
    return r;
  }
  static Mat diag2(double a, double b) {
    Mat r = zero(2);
    r(0, 0) = a;
    r(1, 1) = b;
    return r;
  }
  static Mat diag3(double a, double b, double c) {
    Mat r = zero(3);
    r(0, 0) = a;
    r(1, 1) = b;
    r(2, 2) = c;
    return r;
  }

  double& operator()(int i, int j) { return m[static_cast<std::size_t>(3 * i + j)]; }
  double operator()(int i, int j) const { return m[static_cast<std::size_t>(3 * i + j)]; }
};

inline Vec mat_vec(const Mat& A, const Vec& x) {
  Vec r = Vec::zero(A.n);
  for (int i = 0; i < A.n; ++i) {
    double s = 0.0;
    for (int j = 0; j < A.n; ++j) s += A(i, j) * x[j];
    r[i] = s;
  }
  return r;
}

inline Mat mat_mul(const Mat& A, const Mat& B) {
  Mat r = Mat::zero(A.n);
  for (int i = 0; i < A.n; ++i)
    for (int j = 0; j < A.n; ++j) {
      double s = 0.0;
      for (int k = 0; k < A.n; ++k) s += A(i, k) * B(k, j);
      r(i, j) = s;
    }
  return r;
}

inline Mat transpose(const Mat& A) {
  Mat r = Mat::zero(A.n);
  for (int i = 0; i < A.n; ++i)
    for (int j = 0; j < A.n; ++j) r(i, j) = A(j, i);
  return r;
}

inline double det(const Mat& A) {
  if (A.n == 2) return A(0, 0) * A(1, 1) - A(0, 1) * A(1, 0);
  return A(0, 0) * (A(1, 1) * A(2, 2) - A(1, 2) * A(2, 1)) -
         A(0, 1) * (A(1, 0) * A(2, 2) - A(1, 2) * A(2, 0)) +
         A(0, 2) * (A(1, 0) * A(2, 1) - A(1, 1) * A(2, 0));
}

inline Mat inverse(const Mat& A) {
  double d = det(A);
  if (d == 0.0) throw NotPositiveDefinite("matrix is singular");
  Mat r = Mat::zero(A.n);
  if (A.n == 2) {
    r(0, 0) = A(1, 1) / d;
    r(0, 1) = -A(0, 1) / d;
    r(1, 0) = -A(1, 0) / d;
    r(1, 1) = A(0, 0) / d;
    return r;
  }
  r(0, 0) = (A(1, 1) * A(2, 2) - A(1, 2) * A(2, 1)) / d;
  r(0, 1) = (A(0, 2) * A(2, 1) - A(0, 1) * A(2, 2)) / d;
  r(0, 2) = (A(0, 1) * A(1, 2) - A(0, 2) * A(1, 1)) / d;
  r(1, 0) = (A(1, 2) * A(2, 0) - A(1, 0) * A(2, 2)) / d;
  r(1, 1) = (A(0, 0) * A(2, 2) - A(0, 2) * A(2, 0)) / d;
  r(1, 2) = (A(0, 2) * A(1, 0) - A(0, 0) * A(1, 2)) / d;
  r(2, 0) = (A(1, 0) * A(2, 1) - A(1, 1) * A(2, 0)) / d;
  r(2, 1) = (A(0, 1) * A(2, 0) - A(0, 0) * A(2, 1)) / d;
  r(2, 2) = (A(0, 0) * A(1, 1) - A(0, 1) * A(1, 0)) / d;
  return r;
}

inline double ipow(double x, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

inline double max_abs(const Mat& A) {
  double r = 0.0;
  for (int i = 0; i < A.n; ++i)
    for (int j = 0; j < A.n; ++j) r = std::max(r, std::abs(A(i, j)));
  return r;
}

// Smallest eigenvalue of a symmetric matrix, closed form for n in {2,3}.
double min_eigenvalue_sym(const Mat& A);

// Lower-triangular Cholesky factor with positive diagonal.
// Throws NotPositiveDefinite when a pivot is not strictly positive.
Mat cholesky_lower(const Mat& A);

// Complex n x n matrix (Hessians of complex fields).
struct CMat {
  std::array<Complex, 9> m{};
  int n = 3;

  static CMat zero(int dim) {
    CMat r;
    r.n = dim;
    return r;
  }
  Complex& operator()(int i, int j) { return m[static_cast<std::size_t>(3 * i + j)]; }
  Complex operator()(int i, int j) const { return m[static_cast<std::size_t>(3 * i + j)]; }
};

inline CVec mat_vec(const CMat& A, const Vec& x) {
  CVec r = CVec::zero(A.n);
  for (int i = 0; i < A.n; ++i) {
    Complex s = 0.0;
    for (int j = 0; j < A.n; ++j) s += A(i, j) * x[j];
    r[i] = s;
  }
  return r;
}

} // namespace layerpot

#endif
