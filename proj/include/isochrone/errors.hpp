#pragma once

#include <stdexcept>
#include <string>

namespace isochrone {

// Base class for every error raised by the toolkit. name() is the stable
// identifier printed by the CLI.
class Error : public std::runtime_error {
 public:
  Error(std::string name, const std::string& what)
      : std::runtime_error(what), name_(std::move(name)) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

#define ISOCHRONE_DEFINE_ERROR(Name)                                 \
  class Name : public Error {                                        \
   public:                                                           \
    explicit Name(const std::string& what) : Error(#Name, what) {}   \
  };

ISOCHRONE_DEFINE_ERROR(ParameterDomainError)
ISOCHRONE_DEFINE_ERROR(NormalizationError)
ISOCHRONE_DEFINE_ERROR(DomainError)
ISOCHRONE_DEFINE_ERROR(InversionError)
ISOCHRONE_DEFINE_ERROR(MonotonicityError)
ISOCHRONE_DEFINE_ERROR(SeriesInversionError)
ISOCHRONE_DEFINE_ERROR(LeadingCoefficientError)
ISOCHRONE_DEFINE_ERROR(ToleranceError)
ISOCHRONE_DEFINE_ERROR(QuadratureError)
ISOCHRONE_DEFINE_ERROR(IntegrationError)
ISOCHRONE_DEFINE_ERROR(SingularDenominatorError)
ISOCHRONE_DEFINE_ERROR(DecompositionUnavailable)
ISOCHRONE_DEFINE_ERROR(BracketError)
ISOCHRONE_DEFINE_ERROR(MarginError)
ISOCHRONE_DEFINE_ERROR(ConvergenceError)
ISOCHRONE_DEFINE_ERROR(ParseError)

#undef ISOCHRONE_DEFINE_ERROR

}  // namespace isochrone
