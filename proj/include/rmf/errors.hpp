#pragma once

#include <stdexcept>
#include <string>

namespace rmf {

// Two failure classes drive the CLI exit codes: validation errors reject
// malformed input, genericity errors abort a well-formed computation that
// left the open stratum where the closed-form constructions are defined.
enum class ErrorKind { validation, genericity };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string code, const std::string& what)
      : std::runtime_error(code + ": " + what), kind_(kind), code_(std::move(code)) {}

  ErrorKind kind() const { return kind_; }
  const std::string& code() const { return code_; }

  // 1-based step index for halts inside a trajectory, -1 when not applicable.
  int step_index = -1;

 private:
  ErrorKind kind_;
  std::string code_;
};

#define RMF_DEFINE_ERROR(NAME, KIND)                      \
  class NAME : public Error {                             \
   public:                                                \
    explicit NAME(const std::string& what)                \
        : Error(ErrorKind::KIND, #NAME, what) {}          \
  };

RMF_DEFINE_ERROR(BadInput, validation)
RMF_DEFINE_ERROR(ZeroMatrix, validation)
RMF_DEFINE_ERROR(NotRankOne, validation)
RMF_DEFINE_ERROR(DuplicateAbscissa, validation)
RMF_DEFINE_ERROR(InconsistentSamples, validation)
RMF_DEFINE_ERROR(ZeroPolynomial, validation)
RMF_DEFINE_ERROR(AtPole, validation)
RMF_DEFINE_ERROR(WrongPoleCount, validation)

RMF_DEFINE_ERROR(NonGeneric, genericity)
RMF_DEFINE_ERROR(CoincidentPoints, genericity)
RMF_DEFINE_ERROR(DegenerateAction, genericity)
RMF_DEFINE_ERROR(SingularTwist, genericity)
RMF_DEFINE_ERROR(SingularGauge, genericity)
RMF_DEFINE_ERROR(DegeneratePairing, genericity)
RMF_DEFINE_ERROR(DegenerateCoordinates, genericity)
RMF_DEFINE_ERROR(LogOfZero, genericity)
RMF_DEFINE_ERROR(GaugeDegenerate, genericity)
RMF_DEFINE_ERROR(ShiftCollision, genericity)
RMF_DEFINE_ERROR(PiAtRho, genericity)
RMF_DEFINE_ERROR(OracleMismatch, genericity)

#undef RMF_DEFINE_ERROR

}  // namespace rmf
