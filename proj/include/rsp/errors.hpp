#pragma once

#include <stdexcept>

namespace rsp {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct InvalidInstance : Error { using Error::Error; };
struct RankOutOfRange : Error { using Error::Error; };
struct BudgetExceeded : Error { using Error::Error; };
struct InvalidRadius : Error { using Error::Error; };
// Grid cell coordinates would not fit the integer key range.
struct GridPrecisionError : Error { using Error::Error; };
struct ProtocolViolation : Error { using Error::Error; };
struct NoLightPairs : Error { using Error::Error; };
struct BracketFailure : Error { using Error::Error; };
struct RecoveryFailure : Error { using Error::Error; };
struct EmptyIndex : Error { using Error::Error; };
struct CertificationFailure : Error { using Error::Error; };

}  // namespace rsp
