#pragma once

#include <stdexcept>
#include <string>

namespace cohomkit {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define COHOMKIT_ERROR(Name)                  \
  class Name : public Error {                 \
   public:                                    \
    explicit Name(const std::string& what)    \
        : Error(std::string(#Name ": ") + what) {} \
  }

COHOMKIT_ERROR(SizeCapExceeded);
COHOMKIT_ERROR(OrderCapExceeded);
COHOMKIT_ERROR(ModulusMismatch);
COHOMKIT_ERROR(InvalidModule);
COHOMKIT_ERROR(InvalidGroup);
COHOMKIT_ERROR(NotBaseFree);
COHOMKIT_ERROR(NotPrime);
COHOMKIT_ERROR(DegreeZeroUnsupported);
COHOMKIT_ERROR(SliceTooShallow);
COHOMKIT_ERROR(NoPreimageFound);
COHOMKIT_ERROR(NoIsomorphismFound);
COHOMKIT_ERROR(DimensionMismatch);
COHOMKIT_ERROR(InvalidArgument);

#undef COHOMKIT_ERROR

}  // namespace cohomkit
