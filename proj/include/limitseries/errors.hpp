#ifndef LIMITSERIES_ERRORS_HPP
#define LIMITSERIES_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace limitseries {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input validation.
class MonotonicityViolation : public Error { public: using Error::Error; };
class LengthMismatch : public Error { public: using Error::Error; };
class DimensionMismatch : public Error { public: using Error::Error; };
class ParseError : public Error { public: using Error::Error; };
class DomainError : public Error { public: using Error::Error; };
class InvalidSequence : public Error { public: using Error::Error; };
class InvalidTruncation : public Error { public: using Error::Error; };
class PrimeTooSmall : public Error { public: using Error::Error; };
class MultiplicitiesUnset : public Error { public: using Error::Error; };
class NotUnloaded : public Error { public: using Error::Error; };

// Capacity of a truncated computation.
class CapExceeded : public Error { public: using Error::Error; };
class CapExhausted : public Error { public: using Error::Error; };
class PrecisionExceeded : public Error { public: using Error::Error; };
class ResourceLimit : public Error { public: using Error::Error; };

// A mathematical check failed.
class DivisionWitnessFailure : public Error { public: using Error::Error; };
class IdentityFailure : public Error { public: using Error::Error; };
class HypothesisFailed : public Error { public: using Error::Error; };

}  // namespace limitseries

#endif  // LIMITSERIES_ERRORS_HPP
