// Dense complex non-Hermitian eigensolver (balancing -> Householder
// Hessenberg -> shifted QR with Wilkinson shifts and deflation) plus the
// HB-specific spectrum pairing, eigenvector extraction and branch labels.

#pragma once

#include "hbtk/hbmatrix.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace hbtk {

struct SolverOptions {
    double tol_im = 1e-8;      // imaginary-part classification tolerance
    int max_sweeps = 100;      // QR iteration cap, per matrix dimension
    bool balance = true;       // diagonal similarity scaling before Hessenberg
    std::uint64_t seed = 0x9e3779b97f4a7c15ull;  // inverse-iteration starts
};

struct NonConvergenceError : std::runtime_error {
    explicit NonConvergenceError(std::string msg, std::vector<cplx> partial_eigs)
        : std::runtime_error(std::move(msg)), partial(std::move(partial_eigs)) {}
    std::vector<cplx> partial;
};

struct PairingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// All eigenvalues of a general complex matrix.
std::vector<cplx> eigenvalues(const Eigen::MatrixXcd& m, const SolverOptions& opts = {});

inline std::vector<cplx> eigenvalues(const HBMatrix& m, const SolverOptions& opts = {}) {
    return eigenvalues(m.m, opts);
}

struct BogoliubovVector {
    Eigen::VectorXcd mu;
    Eigen::VectorXcd nu;
    double norm_sq{0.0};        // sum |mu|^2 - |nu|^2
    double residual{0.0};       // ||Mv - Ev|| / ||M||
    bool condition_warning{false};  // set near defective eigenvalues
};

// Inverse iteration with shift e; the start vector is drawn from opts.seed.
BogoliubovVector eigenvector(const HBMatrix& m, cplx e, const SolverOptions& opts = {});

struct SpectrumPair {
    cplx e_plus;
    cplx e_minus;
    cplx omega_sq;  // e_plus^2
};

struct PairedSpectrum {
    std::vector<SpectrumPair> pairs;
    // labels[n] = pair index carrying branch Omega_n; labels anchor to
    // e_plus = omega[n] at zero coupling and are tracked by homotopy.
    std::vector<int> labels;
    std::vector<bool> label_ordered;  // false past an EP collision
    double valid_up_to{1.0};          // homotopy fraction before first collision
    std::vector<double> residuals;    // backward error per pair (e_plus side)
    double max_pair_defect{0.0};      // max |e_plus + e_minus|
};

PairedSpectrum pair_and_label(const std::vector<cplx>& eigs, const QuadraticHamiltonian& h,
                              const SolverOptions& opts = {});

}  // namespace hbtk
