#ifndef LAYERPOT_ERRORS_HPP
#define LAYERPOT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace layerpot {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// construction / validation
struct BadDimension : Error { using Error::Error; };
struct NonElliptic : Error { using Error::Error; };
struct ComplexPrincipalPart : Error { using Error::Error; };
struct NotPositiveDefinite : Error { using Error::Error; };
struct BadShapeParameters : Error { using Error::Error; };
struct UnsupportedKind : Error { using Error::Error; };
struct BadTheta : Error { using Error::Error; };
struct HypothesisViolated : Error { using Error::Error; };
struct IndexOutOfRange : Error { using Error::Error; };

// evaluation
struct OriginEvaluation : Error { using Error::Error; };
struct CoincidentPoints : Error { using Error::Error; };
struct KernelEvaluationFailure : Error { using Error::Error; };
struct NotHomogeneous : Error { using Error::Error; };
struct QuadratureNotConverged : Error { using Error::Error; };

// cli / reports
struct BadConfig : Error { using Error::Error; };
struct MissingCurve : Error { using Error::Error; };
struct MalformedReport : Error { using Error::Error; };

} // namespace layerpot

#endif
