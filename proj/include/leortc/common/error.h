#ifndef LEORTC_COMMON_ERROR_H_
#define LEORTC_COMMON_ERROR_H_

#include <stdexcept>
#include <string>

namespace leortc {

enum class ErrorCode {
  kEmptyInput,
  kInvalidGeometry,
  kUnknownSatellite,
  kTraceTooShort,
  kSegmentOutOfRange,
  kInsufficientData,
  kEmptyDataset,
  kDivergedLoss,
  kShapeMismatch,
  kBadConfig,
  kIoError,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace leortc

#endif  // LEORTC_COMMON_ERROR_H_
