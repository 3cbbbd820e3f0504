// Quadratic bosonic Hamiltonian data model and constructors for the
// physical systems handled by the toolkit (single/two-mode parametric
// cavities, Rabi reductions, three-site ring in momentum space).

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <string>
#include <vector>

namespace hbtk {

using cplx = std::complex<double>;

// H = sum_n [ omega_n a_n^dag a_n + (chi_n a_n^2 + h.c.) ]
//   + sum_{i<j} [ g_ij a_i a_j + lam_ij a_i a_j^dag + h.c. ]
//
// chi[n] is the literal coefficient of a_n^2.  lam is Hermitian with zero
// diagonal, g is symmetric with zero diagonal.
struct QuadraticHamiltonian {
    int n_modes{0};
    Eigen::VectorXd omega;
    Eigen::VectorXcd chi;
    Eigen::MatrixXcd lam;
    Eigen::MatrixXcd g;

    static QuadraticHamiltonian zero(int n);
};

struct Violation {
    std::string field;
    int i{-1};
    int j{-1};
    double magnitude{0.0};
    std::string message;
};

// Reports every invariant violation; never throws.
std::vector<Violation> validate(const QuadraticHamiltonian& h);

// Single cavity with two-photon driving, H = omega a^dag a + (chi a^2 + h.c.)/2.
// The half convention is absorbed here: the stored coefficient is chi/2.
QuadraticHamiltonian single_mode(double omega, cplx chi_half_convention);

// Two coupled cavities, H = omega_1 n_1 + omega_2 n_2
//   + (chi1 a1^2 + chi2 a2^2 + g a1 a2 + lambda a1 a2^dag + h.c.).
QuadraticHamiltonian two_mode(double omega1, double omega2, cplx chi1, cplx chi2,
                              cplx lambda_c, cplx g_c);

// Cavity + qubit parameters.  For the single-Rabi reduction eta is the
// qubit-cavity coupling; lambda_hop is only used by the two-Rabi builder.
struct RabiParams {
    double omega0{0.0};
    double delta{0.0};
    double eta{0.0};
    cplx lambda_hop{0.0};
};

// Low-frequency reduction of the quantum Rabi model:
// omega = omega0 - eta^2/(2 delta), coefficient of a^2 = -eta^2/(4 delta).
QuadraticHamiltonian from_rabi(const RabiParams& p);

// Two Rabi subsystems with a rotating-wave hop lambda a1 a2^dag + h.c.
QuadraticHamiltonian from_two_rabi(const RabiParams& p1, const RabiParams& p2,
                                   cplx lambda_hop);

// Three-site ring of Rabi subsystems with complex hopping J e^{i theta}.
struct ThreeRingParams {
    double omega{0.0};
    double delta{0.0};
    double g{0.0};
    double j_hop{0.0};
    double theta{0.0};
};

// Momentum-space reduction of the ring over modes q = {0, +2pi/3, -2pi/3}
// (stored in that order): omega[q] = omega - 2 g^2/delta + 2 J cos(theta - q),
// two-photon coefficient -g^2/delta on q=0 and a counterrotating coupling
// -2 g^2/delta between q = +2pi/3 and q = -2pi/3.  Emits a warning on
// stderr when omega <= 2J (outside the regime the reduction assumes).
QuadraticHamiltonian from_three_ring(const ThreeRingParams& p);

// Common value of cos(theta - q) phases: q ordering used by from_three_ring.
inline constexpr double ring_q0 = 0.0;
double ring_q_plus();
double ring_q_minus();

}  // namespace hbtk
