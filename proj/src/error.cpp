#include "mdg/error.hpp"

namespace mdg {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kBadConfig: return "BadConfig";
    case ErrorCode::kSignalTooShort: return "SignalTooShort";
    case ErrorCode::kAlreadyCentered: return "AlreadyCentered";
    case ErrorCode::kWrongLayout: return "WrongLayout";
    case ErrorCode::kRecordingTooShort: return "RecordingTooShort";
    case ErrorCode::kShapeMismatch: return "ShapeMismatch";
    case ErrorCode::kBadLength: return "BadLength";
    case ErrorCode::kBadDim: return "BadDim";
    case ErrorCode::kDegenerateRank: return "DegenerateRank";
    case ErrorCode::kDimMismatch: return "DimMismatch";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kEmptySet: return "EmptySet";
    case ErrorCode::kEmptyTraining: return "EmptyTraining";
    case ErrorCode::kSingleClass: return "SingleClass";
    case ErrorCode::kTooFewPoints: return "TooFewPoints";
    case ErrorCode::kClassTooSmall: return "ClassTooSmall";
    case ErrorCode::kGridTooLarge: return "GridTooLarge";
    case ErrorCode::kBadSparsity: return "BadSparsity";
    case ErrorCode::kNoClasses: return "NoClasses";
    case ErrorCode::kAliasRisk: return "AliasRisk";
    case ErrorCode::kFormatError: return "FormatError";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kConfigError: return "ConfigError";
  }
  return "Unknown";
}

}  // namespace mdg
