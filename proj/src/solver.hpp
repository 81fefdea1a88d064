#pragma once

#include "diagnostics.hpp"
#include "initial.hpp"
#include "params.hpp"
#include "state.hpp"

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ccfv {

enum class CflBinding { diffusion, advection, reaction, absorption };
const char* to_string(CflBinding b);

struct DtInfo {
    double dt;
    CflBinding binding;
};

/// Positivity-preserving step bound:
/// dt = cfl_safety * min(h^2/8, h/(2 max|a|), 1/(r + 2 mu max u), 1/(max u + 4/h^2)).
DtInfo stable_dt_info(const State& s, const Parameters& p);
double stable_dt(const State& s, const Parameters& p);

struct StepReport {
    double dt_used = 0.0;
    double max_u = 0.0;
    double min_v = 0.0;
    CflBinding cfl_binding = CflBinding::diffusion;
};

/// Raised when a step loses positivity (dt contract violated or blowup) or
/// produces non-finite values.
class SolverError : public std::runtime_error {
public:
    enum class Kind { positivity, divergence };
    SolverError(Kind kind, double t, const std::string& what)
        : std::runtime_error(what), kind_(kind), t_(t) {}
    Kind kind() const { return kind_; }
    double time() const { return t_; }

private:
    Kind kind_;
    double t_;
};

/// Forward Euler stepper with preallocated scratch. One instance per run;
/// a State may move between threads but a Stepper must not be shared.
class Stepper {
public:
    explicit Stepper(const Grid2D& g);

    /// Advances s by dt in place. Requires dt <= stable_dt(s, p) for the
    /// positivity guarantee; violations surface as SolverError.
    StepReport advance(State& s, const Parameters& p, double dt,
                       CflBinding binding = CflBinding::diffusion);

private:
    ScalarField lap_u_, lap_v_, lap_w_, divf_, gsq_w_, u_new_, v_new_, w_new_;
    FaceField grad_w_, flux_;
};

/// One Euler step as a pure function (convenience over Stepper).
std::pair<State, StepReport> step(const State& s, const Parameters& p, double dt);

struct Snapshot {
    std::string name;
    double t = 0.0;
    ScalarField field;
};

struct RunOptions {
    double record_every = 0.1;
    bool evolve_w = false;
    std::optional<std::pair<double, double>> upvq; // (p, q) exponents
    bool with_snapshots = false;
    /// Invoked at every record with the full state; for ad-hoc series
    /// (dissipation integrals, custom probes) without retaining states.
    std::function<void(const State&, const DiagnosticsRecord&)> record_hook;
};

struct RunResult {
    std::vector<DiagnosticsRecord> records;
    State final_state;
    std::vector<Snapshot> snapshots;
};

/// Integrates from t = 0 to p.t_end with dt = stable_dt each step, shortened
/// to land on record times exactly. Deterministic for fixed inputs.
/// Step failures propagate as SolverError with the failing time attached.
RunResult run(const InitialCondition& ic, const Grid2D& g, const Parameters& p,
              const RunOptions& opt);

/// Dissipation inputs of the energy inequality at a state:
/// h = 1/2 int |lap w|^2, g = int |grad u|^2 / S(u) (u-floor applied).
OdiSample odi_sample(const State& s, const Parameters& p);

} // namespace ccfv
