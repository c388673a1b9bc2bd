#pragma once

#include <stdexcept>
#include <string>

namespace gordian {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define GORDIAN_DEFINE_ERROR(Name)                                    \
  class Name : public Error {                                         \
   public:                                                            \
    explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
  }

// curve kernel
GORDIAN_DEFINE_ERROR(JointMismatch);
GORDIAN_DEFINE_ERROR(CurvatureViolation);
GORDIAN_DEFINE_ERROR(DegeneratePrimitive);
GORDIAN_DEFINE_ERROR(OutOfRange);
// dubins
GORDIAN_DEFINE_ERROR(NonCoplanarInput);
// thickness
GORDIAN_DEFINE_ERROR(NoCriticalPair);
GORDIAN_DEFINE_ERROR(InfeasibleThickness);
GORDIAN_DEFINE_ERROR(NonPlanarCurve);
// regions
GORDIAN_DEFINE_ERROR(InvalidConfig);
GORDIAN_DEFINE_ERROR(EndpointMismatch);
GORDIAN_DEFINE_ERROR(NotLongArc);
// family
GORDIAN_DEFINE_ERROR(CertificateFailure);
// oracle
GORDIAN_DEFINE_ERROR(Unreachable);
// export
GORDIAN_DEFINE_ERROR(IoError);
GORDIAN_DEFINE_ERROR(InfeasibleTube);
GORDIAN_DEFINE_ERROR(ParseError);

#undef GORDIAN_DEFINE_ERROR

/// Raised when the torsion of a helicoidal arc reaches zero during integration.
class VanishingTorsion : public Error {
 public:
  VanishingTorsion(double t, const std::string& what)
      : Error("VanishingTorsion: " + what), t_(t) {}
  double time() const noexcept { return t_; }

 private:
  double t_;
};

}  // namespace gordian
