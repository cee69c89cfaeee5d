#include "layerpot/coeffs.hpp"

#include <cstdio>
#include <sstream>

namespace layerpot {

namespace {

int order(const MultiIndex& g) { return g[0] + g[1] + g[2]; }

MultiIndex unit2(int l, int j) {
  MultiIndex g{0, 0, 0};
  g[static_cast<std::size_t>(l)] += 1;
  g[static_cast<std::size_t>(j)] += 1;
  return g;
}

} // namespace

OperatorCoefficients build_coefficients(int n, const std::map<MultiIndex, Complex>& entries) {
  if (n != 2 && n != 3) throw BadDimension("dimension must be 2 or 3");
  for (const auto& [g, val] : entries) {
    for (int i = 0; i < 3; ++i)
      if (g[static_cast<std::size_t>(i)] < 0 || (i >= n && g[static_cast<std::size_t>(i)] != 0))
        throw BadDimension("multi-index has entries outside the dimension");
    if (order(g) > 2) throw BadDimension("multi-index order exceeds 2");
    if (order(g) == 2 && val.imag() != 0.0)
      throw ComplexPrincipalPart("second-order coefficients must be real");
    (void)val;
  }

  auto get = [&entries](const MultiIndex& g) -> Complex {
    auto it = entries.find(g);
    return it == entries.end() ? Complex(0.0) : it->second;
  };

  OperatorCoefficients c;
  c.dim = n;
  c.a2 = Mat::zero(n);
  c.a1 = CVec::zero(n);
  for (int l = 0; l < n; ++l) {
    for (int j = 0; j < n; ++j) {
      Complex a = get(unit2(l, j));
      c.a2(l, j) = (l == j) ? a.real() : 0.5 * a.real();
    }
    MultiIndex e{0, 0, 0};
    e[static_cast<std::size_t>(l)] = 1;
    c.a1[l] = get(e);
  }
  c.a0 = get(MultiIndex{0, 0, 0});

  if (ellipticity_constant(c.a2) <= 0.0)
    throw NonElliptic("principal part is not elliptic");
  return c;
}

double ellipticity_constant(const Mat& a2) { return min_eigenvalue_sym(a2); }

PrincipalFactor principal_factor(const Mat& a2) {
  PrincipalFactor f;
  f.T = cholesky_lower(a2);
  f.detA2 = det(a2);
  return f;
}

std::string coefficients_to_text(const OperatorCoefficients& c) {
  std::ostringstream out;
  char buf[128];
  auto emit = [&](const MultiIndex& g, Complex v) {
    if (c.dim == 2)
      std::snprintf(buf, sizeof buf, "gamma=%d,%d re=%.17g im=%.17g\n", g[0], g[1], v.real(), v.imag());
    else
      std::snprintf(buf, sizeof buf, "gamma=%d,%d,%d re=%.17g im=%.17g\n", g[0], g[1], g[2], v.real(), v.imag());
    out << buf;
  };
  emit(MultiIndex{0, 0, 0}, c.a0);
  for (int l = 0; l < c.dim; ++l) {
    MultiIndex e{0, 0, 0};
    e[static_cast<std::size_t>(l)] = 1;
    emit(e, c.a1[l]);
  }
  for (int l = 0; l < c.dim; ++l)
    for (int j = l; j < c.dim; ++j) {
      Complex v = (l == j) ? Complex(c.a2(l, l)) : Complex(2.0 * c.a2(l, j));
      emit(unit2(l, j), v);
    }
  return out.str();
}

OperatorCoefficients coefficients_from_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::map<MultiIndex, Complex> entries;
  int n = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    MultiIndex g{0, 0, 0};
    double re = 0.0, im = 0.0;
    int consumed = std::sscanf(line.c_str(), "gamma=%d,%d,%d re=%lf im=%lf", &g[0], &g[1], &g[2], &re, &im);
    if (consumed == 5) {
      n = std::max(n, 3);
    } else {
      g = MultiIndex{0, 0, 0};
      consumed = std::sscanf(line.c_str(), "gamma=%d,%d re=%lf im=%lf", &g[0], &g[1], &re, &im);
      if (consumed != 4) throw BadConfig("unparsable coefficient line: " + line);
      n = std::max(n, 2);
    }
    entries[g] = Complex(re, im);
  }
  if (n == 0) throw BadConfig("no coefficient lines found");
  return build_coefficients(n, entries);
}

} // namespace layerpot
