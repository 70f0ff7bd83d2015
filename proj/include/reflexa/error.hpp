#pragma once

#include <stdexcept>
#include <string>

namespace reflexa {

// Base of every error the library raises. `kind()` is the stable tag used in
// reports and diagnostics.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

#define REFLEXA_DEFINE_ERROR(Name)                                   \
  class Name : public Error {                                        \
   public:                                                           \
    explicit Name(const std::string& what) : Error(#Name, what) {}   \
  }

REFLEXA_DEFINE_ERROR(DimensionMismatch);
REFLEXA_DEFINE_ERROR(ParseError);
REFLEXA_DEFINE_ERROR(NonAssociative);
REFLEXA_DEFINE_ERROR(BadUnit);
REFLEXA_DEFINE_ERROR(BadIdempotents);
REFLEXA_DEFINE_ERROR(InfiniteDimensional);
REFLEXA_DEFINE_ERROR(InvalidPresentation);
REFLEXA_DEFINE_ERROR(InvalidModule);
REFLEXA_DEFINE_ERROR(InvalidMap);
REFLEXA_DEFINE_ERROR(SideMismatch);
REFLEXA_DEFINE_ERROR(NotBasic);
REFLEXA_DEFINE_ERROR(BudgetExceeded);
REFLEXA_DEFINE_ERROR(Undecided);
REFLEXA_DEFINE_ERROR(PreconditionUnverified);
REFLEXA_DEFINE_ERROR(ConditionFails);
REFLEXA_DEFINE_ERROR(NotInD);
REFLEXA_DEFINE_ERROR(NotPairwiseNoniso);
REFLEXA_DEFINE_ERROR(TheoremViolation);
REFLEXA_DEFINE_ERROR(InternalInconsistency);

#undef REFLEXA_DEFINE_ERROR

}  // namespace reflexa
