#pragma once

#include <stdexcept>
#include <string>

namespace ihc {

/// Base of every error the library raises for bad input or unmet preconditions.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define IHC_DEFINE_ERROR(Name)             \
  class Name : public Error {              \
   public:                                 \
    using Error::Error;                    \
  }

IHC_DEFINE_ERROR(EmptyInput);
IHC_DEFINE_ERROR(NonPrimitiveRay);
IHC_DEFINE_ERROR(DuplicateRay);
IHC_DEFINE_ERROR(NotAFan);
IHC_DEFINE_ERROR(NotComplete);
IHC_DEFINE_ERROR(NotSimplicial);
IHC_DEFINE_ERROR(UnknownCone);
IHC_DEFINE_ERROR(FanMismatch);
IHC_DEFINE_ERROR(NotConewiseLinearInterpolable);
IHC_DEFINE_ERROR(NotStrictlyConvex);
IHC_DEFINE_ERROR(NotPolytopal);
IHC_DEFINE_ERROR(DegreeBoundTooLow);
IHC_DEFINE_ERROR(OracleDisagreement);
IHC_DEFINE_ERROR(UnknownExample);
IHC_DEFINE_ERROR(ParseError);

#undef IHC_DEFINE_ERROR

}  // namespace ihc
