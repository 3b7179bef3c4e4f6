#pragma once

#include <stdexcept>
#include <string>

namespace toda {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define TODA_DEFINE_ERROR(Name) \
  struct Name : Error {         \
    using Error::Error;         \
  }

TODA_DEFINE_ERROR(EmptyBand);
TODA_DEFINE_ERROR(MixedSign);
TODA_DEFINE_ERROR(NotUnitriangular);
TODA_DEFINE_ERROR(SparsityViolation);
TODA_DEFINE_ERROR(BandTooNarrow);
TODA_DEFINE_ERROR(SingularMinor);
TODA_DEFINE_ERROR(DerivUnsupported);
TODA_DEFINE_ERROR(ParseError);
TODA_DEFINE_ERROR(UsageError);

#undef TODA_DEFINE_ERROR

}  // namespace toda
