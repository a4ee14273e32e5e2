#include "mechlab/error.hpp"

namespace mechlab {

const char* error_kind_name(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::NegativeValue: return "negative_value";
        case ErrorKind::BadProbability: return "bad_probability";
        case ErrorKind::Empty: return "empty";
        case ErrorKind::BadScale: return "bad_scale";
        case ErrorKind::BadGrid: return "bad_grid";
        case ErrorKind::BadWeights: return "bad_weights";
        case ErrorKind::BadMenu: return "bad_menu";
        case ErrorKind::SupportBelowFloor: return "support_below_floor";
        case ErrorKind::ShapeMismatch: return "shape_mismatch";
        case ErrorKind::ParseError: return "parse_error";
        case ErrorKind::SizeCap: return "size_cap";
        case ErrorKind::TooManyTypes: return "too_many_types";
        case ErrorKind::KTooLarge: return "k_too_large";
        case ErrorKind::SolverStall: return "solver_stall";
        case ErrorKind::NoConvergence: return "no_convergence";
    }
    return "unknown";
}

bool is_input_error(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::NegativeValue:
        case ErrorKind::BadProbability:
        case ErrorKind::Empty:
        case ErrorKind::BadScale:
        case ErrorKind::BadGrid:
        case ErrorKind::BadWeights:
        case ErrorKind::BadMenu:
        case ErrorKind::SupportBelowFloor:
        case ErrorKind::ShapeMismatch:
        case ErrorKind::ParseError:
            return true;
        default:
            return false;
    }
}

}  // namespace mechlab
