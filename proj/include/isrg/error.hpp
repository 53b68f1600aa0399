#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace isrg {

enum class Errc {
  NonPrime,
  NotPrimePower,
  EvenCharacteristic,
  NoIrreducibleFound,
  SizeBoundExceeded,
  DivisionByZero,
  DimensionMismatch,
  NotSymmetric,
  SingularInput,
  OddDimension,
  RankOutOfRange,
  ZeroDifference,
  ZeroS,
  NotASquare,
  NonIntegralLambda,
  NonIntegralFormula,
  OddAssembly,
  InvalidArgument,
  Io,
};

std::string_view errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace isrg
