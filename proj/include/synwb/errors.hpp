#pragma once

#include <stdexcept>
#include <string>

namespace synwb {

enum class errc {
  empty_generator,
  empty_list,
  ground_too_large,
  ground_mismatch,
  not_a_subfamily,
  no_trace,
  signature_mismatch,
  universe_cap,
  level_mismatch,
  level_out_of_range,
  horizon_exhausted,
  not_found,
  descent_exhausted,
  not_pws,
  window_too_small,
  parse_error,
  precondition,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::empty_generator: return "EmptyGenerator";
    case errc::empty_list: return "EmptyList";
    case errc::ground_too_large: return "GroundTooLarge";
    case errc::ground_mismatch: return "GroundMismatch";
    case errc::not_a_subfamily: return "NotASubfamily";
    case errc::no_trace: return "NoTrace";
    case errc::signature_mismatch: return "SignatureMismatch";
    case errc::universe_cap: return "UniverseCap";
    case errc::level_mismatch: return "LevelMismatch";
    case errc::level_out_of_range: return "LevelOutOfRange";
    case errc::horizon_exhausted: return "HorizonExhausted";
    case errc::not_found: return "NotFound";
    case errc::descent_exhausted: return "DescentExhausted";
    case errc::not_pws: return "NotPws";
    case errc::window_too_small: return "WindowTooSmall";
    case errc::parse_error: return "ParseError";
    case errc::precondition: return "Precondition";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& message) {
  throw Error(code, message);
}

inline void require(bool ok, errc code, const std::string& message) {
  if (!ok) fail(code, message);
}

}  // namespace synwb
