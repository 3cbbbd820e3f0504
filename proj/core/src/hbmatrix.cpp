#include "hbtk/hbmatrix.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace hbtk {

HBMatrix build(const QuadraticHamiltonian& h) {
    const auto violations = validate(h);
    if (!violations.empty()) {
        throw std::invalid_argument("build: invalid Hamiltonian: " + violations.front().message);
    }
    const int n = h.n_modes;
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(n, n);
    Eigen::MatrixXcd b = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        a(i, i) = h.omega[i];
        b(i, i) = -2.0 * h.chi[i];
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            a(i, j) = h.lam(i, j);
            b(i, j) = -h.g(i, j);
        }
    }
    HBMatrix out;
    out.n_modes = n;
    out.m.resize(2 * n, 2 * n);
    out.m.topLeftCorner(n, n) = a;
    out.m.topRightCorner(n, n) = b;
    out.m.bottomLeftCorner(n, n) = -b.conjugate();
    out.m.bottomRightCorner(n, n) = -a.conjugate();
    return out;
}

double symmetry_residual(const HBMatrix& mat) {
    const Eigen::Index n = mat.m.rows() / 2;
    double worst = 0.0;
    for (Eigen::Index i = 0; i < 2 * n; ++i) {
        for (Eigen::Index j = 0; j < 2 * n; ++j) {
            // (S conj(M) S)(i,j) = conj(M(i+N mod 2N, j+N mod 2N))
            const cplx swapped = std::conj(mat.m((i + n) % (2 * n), (j + n) % (2 * n)));
            worst = std::max(worst, std::abs(swapped + mat.m(i, j)));
        }
    }
    return worst;
}

double determinant(const HBMatrix& mat) {
    Eigen::MatrixXcd lu = mat.m;
    const Eigen::Index n = lu.rows();
    cplx det(1.0, 0.0);
    for (Eigen::Index k = 0; k < n; ++k) {
        Eigen::Index piv = k;
        double best = std::abs(lu(k, k));
        for (Eigen::Index i = k + 1; i < n; ++i) {
            const double v = std::abs(lu(i, k));
            if (v > best) {
                best = v;
                piv = i;
            }
        }
        if (best == 0.0) return 0.0;
        if (piv != k) {
            lu.row(piv).swap(lu.row(k));
            det = -det;
        }
        det *= lu(k, k);
        for (Eigen::Index i = k + 1; i < n; ++i) {
            const cplx f = lu(i, k) / lu(k, k);
            lu.row(i).tail(n - k - 1) -= f * lu.row(k).tail(n - k - 1);
        }
    }
    if (std::abs(det.imag()) > 1e-6 * (1.0 + std::abs(det))) {
        throw std::runtime_error("determinant: imaginary part above tolerance");
    }
    return det.real();
}

void dump_csv(const HBMatrix& mat, std::ostream& os) {
    os << "row,col,re,im\n";
    char buf[96];
    for (Eigen::Index i = 0; i < mat.m.rows(); ++i) {
        for (Eigen::Index j = 0; j < mat.m.cols(); ++j) {
            std::snprintf(buf, sizeof(buf), "%lld,%lld,%.12g,%.12g\n",
                          static_cast<long long>(i), static_cast<long long>(j),
                          mat.m(i, j).real() + 0.0, mat.m(i, j).imag() + 0.0);
            os << buf;
        }
    }
}

}  // namespace hbtk
