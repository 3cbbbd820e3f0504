// NP/SP classification, parameter-path scans, and critical-point location:
// EPs (real <-> imaginary spectrum transitions) by bisection on the
// classification indicator, DPs (det M = 0) by Brent root finding, with
// tangential (non-crossing) determinant zeros reported separately.

#pragma once

#include "hbtk/solver.hpp"

#include <functional>
#include <string>
#include <vector>

namespace hbtk {

enum class PhaseLabel { NP, SP };

struct ParamPath {
    std::function<QuadraticHamiltonian(double)> model_at;
    double lo{0.0};
    double hi{1.0};
    int samples{201};
    bool log_scale{false};
    std::string name{"param"};
};

struct PhasePoint {
    double param{0.0};
    PhaseLabel label{PhaseLabel::NP};
    bool failed{false};
    double max_abs_im{0.0};  // snapped to 0 below the classification threshold
    double min_abs_e{0.0};
    double det{0.0};
};

enum class CriticalKind { EP, DP, EP_DP };

struct CriticalPoint {
    CriticalKind kind{CriticalKind::EP};
    double param{0.0};
    double bracket_lo{0.0};
    double bracket_hi{0.0};
    double indicator_lo{0.0};
    double indicator_hi{0.0};
    bool sign_change{true};  // false for tangential determinant zeros
};

PhaseLabel classify(const std::vector<cplx>& spectrum, double tol_im = 1e-8);

std::vector<PhasePoint> scan(const ParamPath& path, const SolverOptions& opts = {},
                             int n_threads = 1);

std::vector<CriticalPoint> locate_eps(const ParamPath& path, double tol = 0.0,
                                      const SolverOptions& opts = {});
std::vector<CriticalPoint> locate_eps(const ParamPath& path,
                                      const std::vector<PhasePoint>& points, double tol,
                                      const SolverOptions& opts, std::vector<std::string>* notes);

std::vector<CriticalPoint> locate_dps(const ParamPath& path, double tol = 0.0,
                                      const SolverOptions& opts = {});
std::vector<CriticalPoint> locate_dps(const ParamPath& path,
                                      const std::vector<PhasePoint>& points, double tol,
                                      const SolverOptions& opts, std::vector<std::string>* notes);

struct PhaseInterval {
    double lo{0.0};
    double hi{0.0};
    PhaseLabel label{PhaseLabel::NP};
};

struct PhaseSequence {
    std::vector<PhaseInterval> intervals;
    std::vector<CriticalPoint> critical_points;  // EP/DP merged, EP_DP cross-labeled
    std::vector<std::string> notes;
};

// Tolerance within which a coincident EP and DP merge into one EP_DP point.
PhaseSequence phase_sequence(const ParamPath& path, double tol = 0.0,
                             const SolverOptions& opts = {}, double ep_dp_tol = 1e-6);

}  // namespace hbtk
