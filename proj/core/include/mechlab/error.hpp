#pragma once

#include <stdexcept>
#include <string>

namespace mechlab {

enum class ErrorKind {
    // invalid input
    NegativeValue,
    BadProbability,
    Empty,
    BadScale,
    BadGrid,
    BadWeights,
    BadMenu,
    SupportBelowFloor,
    ShapeMismatch,
    ParseError,
    // resource / solver limits
    SizeCap,
    TooManyTypes,
    KTooLarge,
    SolverStall,
    NoConvergence,
};

const char* error_kind_name(ErrorKind kind);

// True for errors caused by malformed or out-of-contract input, as opposed
// to size caps and solver limits.
bool is_input_error(ErrorKind kind);

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& detail)
        : std::runtime_error(std::string(error_kind_name(kind)) + ": " + detail),
          kind_(kind),
          detail_(detail) {}

    ErrorKind kind() const { return kind_; }
    const std::string& detail() const { return detail_; }

  private:
    ErrorKind kind_;
    std::string detail_;
};

}  // namespace mechlab
