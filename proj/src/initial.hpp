#pragma once

#include "grid.hpp"
#include "params.hpp"
#include "state.hpp"

#include <cstdint>
#include <string>

namespace ccfv {

enum class IcMode { constant, bump, random_fourier, file };

IcMode ic_mode_from_string(const std::string& s);
std::string to_string(IcMode m);

/// Initial data generator. Generated u0 >= 0 with u0 not identically 0 and
/// v0 > 0. amplitude is the relative perturbation sup, in [0, 1).
struct InitialCondition {
    IcMode mode = IcMode::constant;
    double u_base = 1.0;
    double v_base = 1.0;
    double amplitude = 0.1;
    int modes_k = 4;
    std::uint64_t seed = 0;
    std::string u_file; // only for IcMode::file
    std::string v_file;

    void validate() const;
};

/// Builds the t = 0 state. random_fourier perturbations are seeded cosine
/// series normalized so the perturbation sup over cell centers is exactly
/// `amplitude`; re-running with the same seed reproduces identical bits.
State make_initial(const InitialCondition& ic, const Grid2D& g, const Parameters& p);

} // namespace ccfv
