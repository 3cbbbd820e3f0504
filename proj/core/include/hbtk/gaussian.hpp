// Squeezed ground states of the single-mode cavity and the three-site ring,
// their Fock-truncated vectors, and quantum Fisher information by central
// finite differences of the state vector.

#pragma once

#include "hbtk/model.hpp"

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hbtk {

struct AtExceptionalPointError : std::domain_error {
    using std::domain_error::domain_error;
};

struct TruncationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SqueezedGroundState {
    enum class Kind { SingleMode, Ring3 } kind{Kind::SingleMode};
    // single mode
    double theta{0.0};     // arg chi
    double xi_mag{0.0};    // |xi|, squeezing magnitude
    double omega_gap{0.0};  // Omega_1, or the ring epsilon gap
    // ring
    double xi0{0.0};
    double xi_theta{0.0};
    ThreeRingParams ring{};
};

// Ground state of omega a^dag a + (chi a^2 + h.c.)/2 on the NP side
// (omega^2 > |chi|^2).  |xi| = atanh(|chi|/omega)/2.
SqueezedGroundState single_mode_ground(double omega, cplx chi);

SqueezedGroundState ring3_ground(const ThreeRingParams& p);

struct FockVector {
    SqueezedGroundState::Kind kind{SqueezedGroundState::Kind::SingleMode};
    int n_max{0};
    std::vector<int> dims;       // per-mode truncated dimensions
    std::vector<cplx> amps;      // normalized; ring stored mode-major (q0, +theta, -theta)
    double tail_mass{0.0};
};

// Materializes the state with the |0...0> amplitude real and positive.
// Throws TruncationError when the norm outside the truncation exceeds 1e-8.
FockVector fock_vector(const SqueezedGroundState& s, int n_max);

// Amplitudes of a single-mode squeezed vacuum over |0..n_max>; z is the
// pair-creation ratio (tanh of the squeezing magnitude, with phase).
std::vector<cplx> squeezed_vacuum_amps(cplx z, int n_max, double* tail_mass = nullptr);
// Diagonal amplitudes c_n of a two-mode squeezed vacuum sum_n c_n |n n>.
std::vector<cplx> two_mode_squeezed_amps(double r, int n_max, double* tail_mass = nullptr);

struct QfiResult {
    std::string phi;
    double at{0.0};
    double value{0.0};
    double step{0.0};
    int n_max{0};
    double convergence{0.0};  // |F(n_max) - F(2 n_max)|
};

// One factor of a (possibly product) ground-state family: a parameter ->
// normalized amplitude vector map plus the NP-side gap used for the
// at-EP proximity guard.
struct StateFamily {
    std::function<std::vector<cplx>(double param, int n_max)> amps;
    std::function<double(double param)> gap;
};

QfiResult qfi(const StateFamily& family, const std::string& phi, double at, double step,
              int n_max);

// QFI of a tensor product of independent factors (additive for pure states).
QfiResult qfi(const std::vector<StateFamily>& factors, const std::string& phi, double at,
              double step, int n_max);

// Prebuilt families.
// phi in {"theta", "omega", "chi"}; the non-swept values are fixed.
StateFamily single_mode_family(double omega, double chi_mag, double theta,
                               const std::string& phi);
// Direct squeezing-magnitude family |xi| -> state at fixed theta.
StateFamily xi_family(double theta);
// Ring factors for phi = "omega" (q=0 and the +-2pi/3 pair).
std::vector<StateFamily> ring_family(const ThreeRingParams& p);

struct ScalingFit {
    double slope{0.0};
    double intercept{0.0};
    double r2{0.0};
    bool linear{true};  // false when r2 < 0.99
    std::vector<double> f_values;
};

// Least-squares slope of ln F versus ln gap.
ScalingFit scaling_exponent(const std::function<double(double gap)>& qfi_at_gap,
                            const std::vector<double>& gaps);

}  // namespace hbtk
