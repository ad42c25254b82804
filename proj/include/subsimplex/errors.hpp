#pragma once

#include <stdexcept>
#include <string>

namespace subsimplex {

// Broad error classes; each maps to one process exit code in the CLI.
enum class ErrorClass { Parse, Validation, Numeric };

int exit_code_for(ErrorClass c) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorClass cls, const std::string& what) : std::runtime_error(what), class_(cls) {}
  ErrorClass error_class() const noexcept { return class_; }

 private:
  ErrorClass class_;
};

#define SUBSIMPLEX_DEFINE_ERROR(Name, Class)                                   \
  class Name : public Error {                                                  \
   public:                                                                     \
    explicit Name(const std::string& what) : Error(ErrorClass::Class, what) {} \
  };

// geometry / algorithms
SUBSIMPLEX_DEFINE_ERROR(InvalidComposition, Validation)
SUBSIMPLEX_DEFINE_ERROR(InvalidSphericalPoint, Validation)
SUBSIMPLEX_DEFINE_ERROR(AffinelyDependent, Validation)
SUBSIMPLEX_DEFINE_ERROR(NotOrthonormal, Validation)
SUBSIMPLEX_DEFINE_ERROR(NotInSimplex, Numeric)
SUBSIMPLEX_DEFINE_ERROR(RankZero, Validation)
SUBSIMPLEX_DEFINE_ERROR(InvalidIndex, Validation)
SUBSIMPLEX_DEFINE_ERROR(DegeneratePair, Numeric)
SUBSIMPLEX_DEFINE_ERROR(DegenerateRatio, Numeric)
SUBSIMPLEX_DEFINE_ERROR(PoleSingularity, Numeric)
SUBSIMPLEX_DEFINE_ERROR(NumericFailure, Numeric)
SUBSIMPLEX_DEFINE_ERROR(OutOfSimplex, Validation)
SUBSIMPLEX_DEFINE_ERROR(OutOfOrthant, Validation)
SUBSIMPLEX_DEFINE_ERROR(EmptyDataset, Validation)
SUBSIMPLEX_DEFINE_ERROR(DimensionMismatch, Validation)

// benchmarks
SUBSIMPLEX_DEFINE_ERROR(NonPositiveEntry, Validation)
SUBSIMPLEX_DEFINE_ERROR(AllZeroMatrix, Validation)
SUBSIMPLEX_DEFINE_ERROR(InvalidTransform, Validation)

// io
SUBSIMPLEX_DEFINE_ERROR(ParseError, Parse)
SUBSIMPLEX_DEFINE_ERROR(NegativeEntry, Validation)
SUBSIMPLEX_DEFINE_ERROR(RowSumOutOfTolerance, Validation)
SUBSIMPLEX_DEFINE_ERROR(DimensionNotTwo, Validation)
SUBSIMPLEX_DEFINE_ERROR(ConfigError, Validation)
SUBSIMPLEX_DEFINE_ERROR(IoError, Parse)

#undef SUBSIMPLEX_DEFINE_ERROR

}  // namespace subsimplex
