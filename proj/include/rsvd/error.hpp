#pragma once

#include <stdexcept>
#include <string>

namespace rsvd {

enum class Errc {
  ZeroCoupling,
  SignViolation,
  NonFinite,
  OrderingViolation,
  NonPositive,
  LengthMismatch,
  EmptyVector,
  InvalidArgument,
  DomainError,
  ImaginaryResidual,
  StructuralResidual,
  EigensolverFailure,
  PositivityViolation,
  PairingFailure,
  DegenerateAction,
  IdentityFailure,
  ChamberExit,
  StepUnderflow,
  NotAsymptotic,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) { throw Error(code, msg); }

}  // namespace rsvd
