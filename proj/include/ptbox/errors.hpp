#pragma once

#include <stdexcept>
#include <string>

namespace ptbox {

/// Failure kinds surfaced by the library. Every throw site uses ptbox::error
/// with one of these codes so callers (and the CLI exit-code mapping) can
/// dispatch without parsing messages.
enum class errc {
    validation,          // precondition on user-supplied parameters violated
    singular_point,      // evaluation within pole tolerance of a singularity
    out_of_range,        // sampled-data lookup outside its domain
    unsupported_family,  // operation not defined for this parametric family
    non_normalizable,    // wavefunction diverges at the grid edges
    blow_up,             // ODE solution exceeded the blow-up threshold
    zero_energy,         // normalized intertwining requested at |E| ~ 0
    no_convergence,      // iterative solver failed its residual contract
    grid_mismatch,       // operands sampled on different grids
    degenerate_box,      // box endpoints coincide
};

inline const char* to_string(errc code) noexcept {
    switch (code) {
        case errc::validation: return "validation";
        case errc::singular_point: return "singular_point";
        case errc::out_of_range: return "out_of_range";
        case errc::unsupported_family: return "unsupported_family";
        case errc::non_normalizable: return "non_normalizable";
        case errc::blow_up: return "blow_up";
        case errc::zero_energy: return "zero_energy";
        case errc::no_convergence: return "no_convergence";
        case errc::grid_mismatch: return "grid_mismatch";
        case errc::degenerate_box: return "degenerate_box";
    }
    return "unknown";
}

class error : public std::runtime_error {
public:
    error(errc code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& message) {
    throw error(code, message);
}

inline void require(bool condition, errc code, const std::string& message) {
    if (!condition) fail(code, message);
}

}  // namespace ptbox
