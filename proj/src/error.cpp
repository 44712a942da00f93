#include "paretogof/error.hpp"

namespace pgof {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Argument: return "argument error";
    case ErrorCode::Domain: return "domain error";
    case ErrorCode::Parse: return "parse error";
    case ErrorCode::Config: return "configuration error";
    case ErrorCode::Unsupported: return "unsupported";
    case ErrorCode::Degenerate: return "numerical degeneracy";
    case ErrorCode::Io: return "i/o error";
  }
  return "error";
}

}  // namespace pgof
