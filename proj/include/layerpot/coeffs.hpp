#ifndef LAYERPOT_COEFFS_HPP
#define LAYERPOT_COEFFS_HPP

#include <array>
#include <map>
#include <string>

#include "layerpot/linalg.hpp"

namespace layerpot {

// Multi-index gamma with |gamma| <= 2; the third component is 0 when n == 2.
using MultiIndex = std::array<int, 3>;

// Constant coefficients of a second-order operator
//   sum_{l,j} d_l(a2_{lj} d_j u) + sum_l a1_l d_l u + a0 u,
// assembled from a multi-index coefficient vector. The principal matrix a2
// is symmetric with real entries; lower-order terms may be complex.
struct OperatorCoefficients {
  int dim = 0;
  Mat a2;
  CVec a1;
  Complex a0{0.0, 0.0};
};

// Factorization a2 = T T^t with T lower triangular, positive diagonal.
struct PrincipalFactor {
  Mat T;
  double detA2 = 0.0;
};

// Builds coefficients from multi-index entries: a2_{lj} = a_{e_l+e_j}/2 for
// l != j, a2_{jj} = a_{e_j+e_j}, a1_j = a_{e_j}, a0 = a_{(0,...)}.
// Throws BadDimension, ComplexPrincipalPart, NonElliptic.
OperatorCoefficients build_coefficients(int n, const std::map<MultiIndex, Complex>& entries);

// inf over unit xi of xi^t a2 xi; equals the minimum eigenvalue.
double ellipticity_constant(const Mat& a2);

// Canonical lower-triangular factor. Throws NotPositiveDefinite.
PrincipalFactor principal_factor(const Mat& a2);

// Plain-text serialization, one line per multi-index entry:
//   gamma=<i,j[,k]> re=<float> im=<float>
// Values are emitted with 17 significant digits.
std::string coefficients_to_text(const OperatorCoefficients& c);
OperatorCoefficients coefficients_from_text(const std::string& text);

} // namespace layerpot

#endif
