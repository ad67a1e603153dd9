#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace epmono {

enum class ErrorCode {
    invalid_input,
    size_mismatch,
    interpolation_ill_conditioned,
    no_convergence,
    discriminant_identically_zero,
    probe_circle_contaminated,
    step_underflow,
    multiset_mismatch,
    base_point_mismatch,
    tangential_crossing,
    punctures_too_close,
    unresolvable_tie,
    conjugation_mismatch,
};

constexpr std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::invalid_input: return "InvalidInput";
    case ErrorCode::size_mismatch: return "SizeMismatch";
    case ErrorCode::interpolation_ill_conditioned: return "InterpolationIllConditioned";
    case ErrorCode::no_convergence: return "NoConvergence";
    case ErrorCode::discriminant_identically_zero: return "DiscriminantIdenticallyZero";
    case ErrorCode::probe_circle_contaminated: return "ProbeCircleContaminated";
    case ErrorCode::step_underflow: return "StepUnderflow";
    case ErrorCode::multiset_mismatch: return "MultisetMismatch";
    case ErrorCode::base_point_mismatch: return "BasePointMismatch";
    case ErrorCode::tangential_crossing: return "TangentialCrossing";
    case ErrorCode::punctures_too_close: return "PuncturesTooClose";
    case ErrorCode::unresolvable_tie: return "UnresolvableTie";
    case ErrorCode::conjugation_mismatch: return "ConjugationMismatch";
    }
    return "Unknown";
}

/// Single exception type for the library; `code()` tells callers what went wrong.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace epmono
