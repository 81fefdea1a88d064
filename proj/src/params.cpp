#include "params.hpp"

#include <stdexcept>

namespace ccfv {

void Parameters::validate() const {
    if (!(r > 0.0)) throw std::invalid_argument("Parameters: r must be > 0");
    if (!(mu > 0.0)) throw std::invalid_argument("Parameters: mu must be > 0");
    if (!(chi > 0.0)) throw std::invalid_argument("Parameters: chi must be > 0");
    if (!(beta < 1.0)) throw std::invalid_argument("Parameters: beta must be < 1");
    if (!(cfl_safety > 0.0 && cfl_safety <= 1.0))
        throw std::invalid_argument("Parameters: cfl_safety must be in (0, 1]");
    if (!(t_end >= 0.0)) throw std::invalid_argument("Parameters: t_end must be >= 0");
    if (!(quad_tol > 0.0)) throw std::invalid_argument("Parameters: quad_tol must be > 0");
}

std::pair<double, double> steady_state(const Parameters& p) {
    return {p.r / p.mu, 0.0};
}

} // namespace ccfv
