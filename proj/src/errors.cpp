#include "deltachain/errors.hpp"

namespace deltachain {

std::string_view error_token(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidParameter: return "InvalidParameter";
    case ErrorKind::OverflowRisk: return "OverflowRisk";
    case ErrorKind::OrderTooLarge: return "OrderTooLarge";
    case ErrorKind::GridTooCoarse: return "GridTooCoarse";
    case ErrorKind::OutOfBand: return "OutOfBand";
    case ErrorKind::DegenerateCell: return "DegenerateCell";
    case ErrorKind::BoundOutsideGerm: return "BoundOutsideGerm";
    case ErrorKind::ResonancePole: return "ResonancePole";
    case ErrorKind::NonMonotoneDispersion: return "NonMonotoneDispersion";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace deltachain
