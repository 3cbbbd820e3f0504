// Independent brute-force validators: closed-form eigenvalues for N <= 2
// (characteristic polynomial + quartic resolvent, no iteration shared with
// the QR path) and truncated Fock-space diagonalization of the full
// quadratic Hamiltonian by cyclic Jacobi rotations.

#pragma once

#include "hbtk/hbmatrix.hpp"
#include "hbtk/solver.hpp"

#include <vector>

namespace hbtk {
namespace oracle {

// Closed-form spectrum via Faddeev-LeVerrier coefficients and the
// quadratic/quartic root formulas.  Rejects n_modes > 2.
std::vector<cplx> small_eigenvalues(const HBMatrix& m);

struct FockSpectrum {
    int n_max{0};
    std::vector<double> evals;  // lowest k, ascending
    double e0{0.0};
    double gap{0.0};  // E1 - E0
};

// Hermitian matrix of H in the truncated product number basis, diagonalized
// blockwise (total occupation parity is conserved) by cyclic Jacobi.
// Requires (n_max+1)^N <= 20000.  Warns on stderr for SP-side parameters,
// where the truncated spectrum is a truncation artifact.
FockSpectrum fock_diagonalize(const QuadraticHamiltonian& h, int n_max, int k);

// Ground state in the full product basis (amplitudes indexed mode-major),
// from the even-parity block.
struct FockGroundState {
    double e0{0.0};
    std::vector<cplx> amps;
};
FockGroundState fock_ground_state(const QuadraticHamiltonian& h, int n_max);

struct GapReport {
    double fock_gap{0.0};
    double bogoliubov_gap{0.0};  // min labeled Omega from the QR path
    double abs_dev{0.0};
    double rel_dev{0.0};
};

GapReport gap_check(const QuadraticHamiltonian& h, int n_max,
                    const SolverOptions& opts = {});

}  // namespace oracle
}  // namespace hbtk
