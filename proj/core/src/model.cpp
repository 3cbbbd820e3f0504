#include "hbtk/model.hpp"

#include <cmath>
#include <iostream>
#include <sstream>
#include <stdexcept>

namespace hbtk {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

QuadraticHamiltonian QuadraticHamiltonian::zero(int n) {
    QuadraticHamiltonian h;
    h.n_modes = n;
    h.omega = Eigen::VectorXd::Zero(n);
    h.chi = Eigen::VectorXcd::Zero(n);
    h.lam = Eigen::MatrixXcd::Zero(n, n);
    h.g = Eigen::MatrixXcd::Zero(n, n);
    return h;
}

std::vector<Violation> validate(const QuadraticHamiltonian& h) {
    std::vector<Violation> out;
    auto add = [&out](std::string field, int i, int j, double mag, std::string msg) {
        out.push_back({std::move(field), i, j, mag, std::move(msg)});
    };

    const int n = h.n_modes;
    if (n < 1) {
        add("n_modes", -1, -1, 0.0, "n_modes must be >= 1");
        return out;
    }
    if (h.omega.size() != n || h.chi.size() != n || h.lam.rows() != n ||
        h.lam.cols() != n || h.g.rows() != n || h.g.cols() != n) {
        add("shape", -1, -1, 0.0, "field dimensions do not match n_modes");
        return out;
    }
    for (int i = 0; i < n; ++i) {
        if (!std::isfinite(h.omega[i])) {
            add("omega", i, -1, 0.0, "omega[" + std::to_string(i) + "] is not finite");
        }
        if (!std::isfinite(h.chi[i].real()) || !std::isfinite(h.chi[i].imag())) {
            add("chi", i, -1, 0.0, "chi[" + std::to_string(i) + "] is not finite");
        }
    }
    for (int i = 0; i < n; ++i) {
        const double dl = std::abs(h.lam(i, i));
        if (dl != 0.0) {
            add("lam", i, i, dl, "lam diagonal not zero at (" + std::to_string(i) + "," +
                                      std::to_string(i) + ")");
        }
        const double dg = std::abs(h.g(i, i));
        if (dg != 0.0) {
            add("g", i, i, dg, "g diagonal not zero at (" + std::to_string(i) + "," +
                                    std::to_string(i) + ")");
        }
        for (int j = i + 1; j < n; ++j) {
            const double herm = std::abs(h.lam(i, j) - std::conj(h.lam(j, i)));
            if (herm != 0.0) {
                add("lam", i, j, herm, "lam not Hermitian at (" + std::to_string(i) + "," +
                                            std::to_string(j) + ")");
            }
            const double sym = std::abs(h.g(i, j) - h.g(j, i));
            if (sym != 0.0) {
                add("g", i, j, sym, "g not symmetric at (" + std::to_string(i) + "," +
                                         std::to_string(j) + ")");
            }
        }
    }
    return out;
}

QuadraticHamiltonian single_mode(double omega, cplx chi_half_convention) {
    auto h = QuadraticHamiltonian::zero(1);
    h.omega[0] = omega;
    h.chi[0] = chi_half_convention / 2.0;
    return h;
}

QuadraticHamiltonian two_mode(double omega1, double omega2, cplx chi1, cplx chi2,
                              cplx lambda_c, cplx g_c) {
    auto h = QuadraticHamiltonian::zero(2);
    h.omega[0] = omega1;
    h.omega[1] = omega2;
    h.chi[0] = chi1;
    h.chi[1] = chi2;
    h.lam(0, 1) = lambda_c;
    h.lam(1, 0) = std::conj(lambda_c);
    h.g(0, 1) = g_c;
    h.g(1, 0) = g_c;
    return h;
}

QuadraticHamiltonian from_rabi(const RabiParams& p) {
    if (p.delta == 0.0) {
        throw std::invalid_argument("from_rabi: delta must be nonzero");
    }
    auto h = QuadraticHamiltonian::zero(1);
    h.omega[0] = p.omega0 - p.eta * p.eta / (2.0 * p.delta);
    h.chi[0] = cplx(-p.eta * p.eta / (4.0 * p.delta), 0.0);
    return h;
}

QuadraticHamiltonian from_two_rabi(const RabiParams& p1, const RabiParams& p2,
                                   cplx lambda_hop) {
    if (p1.delta == 0.0 || p2.delta == 0.0) {
        throw std::invalid_argument("from_two_rabi: delta must be nonzero");
    }
    auto h = QuadraticHamiltonian::zero(2);
    const RabiParams* ps[2] = {&p1, &p2};
    for (int n = 0; n < 2; ++n) {
        const RabiParams& p = *ps[n];
        h.omega[n] = p.omega0 - p.eta * p.eta / (2.0 * p.delta);
        h.chi[n] = cplx(-p.eta * p.eta / (4.0 * p.delta), 0.0);
    }
    h.lam(0, 1) = lambda_hop;
    h.lam(1, 0) = std::conj(lambda_hop);
    return h;
}

double ring_q_plus() { return 2.0 * kPi / 3.0; }
double ring_q_minus() { return -2.0 * kPi / 3.0; }

QuadraticHamiltonian from_three_ring(const ThreeRingParams& p) {
    if (p.delta == 0.0) {
        throw std::invalid_argument("from_three_ring: delta must be nonzero");
    }
    if (p.j_hop > 0.0 && p.omega <= 2.0 * p.j_hop) {
        std::cerr << "from_three_ring: warning: omega <= 2J, outside the assumed "
                     "regime omega > 2J > 0\n";
    }
    auto h = QuadraticHamiltonian::zero(3);
    const double qs[3] = {ring_q0, ring_q_plus(), ring_q_minus()};
    const double shift = 2.0 * p.g * p.g / p.delta;
    for (int k = 0; k < 3; ++k) {
        h.omega[k] = p.omega - shift + 2.0 * p.j_hop * std::cos(p.theta - qs[k]);
    }
    // q=0 pairs with itself; the q = +-2pi/3 terms of the pairing sum combine.
    h.chi[0] = cplx(-p.g * p.g / p.delta, 0.0);
    h.g(1, 2) = cplx(-shift, 0.0);
    h.g(2, 1) = h.g(1, 2);
    return h;
}

}  // namespace hbtk
