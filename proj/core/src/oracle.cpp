#include "hbtk/oracle.hpp"

#include "hbtk/phase.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <stdexcept>

namespace hbtk {
namespace oracle {

namespace {

// Characteristic polynomial coefficients by Faddeev-LeVerrier:
// p(x) = x^n + c[0] x^{n-1} + ... + c[n-1].
std::vector<cplx> char_poly(const Eigen::MatrixXcd& m) {
    const Eigen::Index n = m.rows();
    std::vector<cplx> c(static_cast<std::size_t>(n));
    Eigen::MatrixXcd ak = m;
    for (Eigen::Index k = 1; k <= n; ++k) {
        const cplx ck = -ak.trace() / static_cast<double>(k);
        c[static_cast<std::size_t>(k - 1)] = ck;
        if (k < n) {
            ak.diagonal().array() += ck;
            ak = m * ak;
        }
    }
    return c;
}

cplx cbrt_principal(cplx z) {
    if (z == cplx(0.0, 0.0)) return z;
    return std::pow(z, 1.0 / 3.0);
}

// One root of u^3 + a u^2 + b u + c = 0 (Cardano), largest magnitude.
cplx cubic_root(cplx a, cplx b, cplx c) {
    const cplx p = b - a * a / 3.0;
    const cplx q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
    const cplx s = std::sqrt(q * q / 4.0 + p * p * p / 27.0);
    cplx w = cbrt_principal(-q / 2.0 + s);
    if (std::abs(w) < 1e-300) w = cbrt_principal(-q / 2.0 - s);
    cplx t;
    if (std::abs(w) < 1e-300) {
        t = cplx(0.0, 0.0);
    } else {
        t = w - p / (3.0 * w);
    }
    return t - a / 3.0;
}

std::vector<cplx> quadratic_roots(cplx b, cplx c) {
    // x^2 + b x + c, numerically stable splitting
    const cplx disc = std::sqrt(b * b - 4.0 * c);
    const cplx q = (std::real(std::conj(b) * disc) >= 0.0) ? -(b + disc) / 2.0
                                                           : -(b - disc) / 2.0;
    if (std::abs(q) < 1e-300) return {cplx(0.0, 0.0), -b};
    return {q, c / q};
}

std::vector<cplx> quartic_roots(cplx a, cplx b, cplx c, cplx d) {
    // depressed quartic y^4 + p y^2 + q y + r, x = y - a/4
    const cplx p = b - 3.0 * a * a / 8.0;
    const cplx q = c - a * b / 2.0 + a * a * a / 8.0;
    const cplx r = d - a * c / 4.0 + a * a * b / 16.0 - 3.0 * a * a * a * a / 256.0;
    const double scale = std::max({std::abs(p), std::abs(q), std::abs(r), 1.0});

    std::vector<cplx> ys;
    if (std::abs(q) <= 1e-14 * scale) {
        for (const cplx& y2 : quadratic_roots(p, r)) {
            const cplx y = std::sqrt(y2);
            ys.push_back(y);
            ys.push_back(-y);
        }
    } else {
        // resolvent cubic u^3 + 2p u^2 + (p^2 - 4r) u - q^2 = 0
        const cplx u = cubic_root(2.0 * p, p * p - 4.0 * r, -q * q);
        const cplx w = std::sqrt(u);
        const cplx A = ((p + u) - q / w) / 2.0;
        const cplx B = ((p + u) + q / w) / 2.0;
        for (const cplx& y : quadratic_roots(w, A)) ys.push_back(y);
        for (const cplx& y : quadratic_roots(-w, B)) ys.push_back(y);
    }

    std::vector<cplx> roots;
    for (const cplx& y : ys) {
        cplx x = y - a / 4.0;
        // Newton polish on the undepressed quartic
        for (int it = 0; it < 3; ++it) {
            const cplx f = (((x + a) * x + b) * x + c) * x + d;
            const cplx df = ((4.0 * x + 3.0 * a) * x + 2.0 * b) * x + c;
            if (std::abs(df) < 1e-300) break;
            x -= f / df;
        }
        roots.push_back(x);
    }
    return roots;
}

}  // namespace

std::vector<cplx> small_eigenvalues(const HBMatrix& m) {
    if (m.n_modes > 2) {
        throw std::invalid_argument("small_eigenvalues: closed forms only for N <= 2");
    }
    const auto c = char_poly(m.m);
    if (m.n_modes == 1) {
        return quadratic_roots(c[0], c[1]);
    }
    return quartic_roots(c[0], c[1], c[2], c[3]);
}

namespace {

// --- truncated Fock basis -------------------------------------------------

struct FockBasis {
    int n_modes;
    int per_mode;  // n_max + 1
    long dim;
    std::vector<long> even_idx, odd_idx;  // global indices per parity block
    std::vector<long> block_pos;          // global index -> position in its block
    std::vector<int> parity;              // global index -> 0/1

    explicit FockBasis(int n, int n_max) : n_modes(n), per_mode(n_max + 1) {
        dim = 1;
        for (int k = 0; k < n; ++k) dim *= per_mode;
        block_pos.resize(static_cast<std::size_t>(dim));
        parity.resize(static_cast<std::size_t>(dim));
        for (long idx = 0; idx < dim; ++idx) {
            long rem = idx;
            int total = 0;
            for (int k = n - 1; k >= 0; --k) {  // mode-major: mode 0 has the largest stride
                total += static_cast<int>(rem % per_mode);
                rem /= per_mode;
            }
            const int par = total % 2;
            parity[static_cast<std::size_t>(idx)] = par;
            auto& list = (par == 0) ? even_idx : odd_idx;
            block_pos[static_cast<std::size_t>(idx)] = static_cast<long>(list.size());
            list.push_back(idx);
        }
    }

    long stride(int mode) const {
        long s = 1;
        for (int k = mode + 1; k < n_modes; ++k) s *= per_mode;
        return s;
    }

    int occ_of(long idx, int mode) const { return static_cast<int>((idx / stride(mode)) % per_mode); }
};

// Dense Hermitian block of H on one parity sector.
Eigen::MatrixXcd build_block(const QuadraticHamiltonian& h, const FockBasis& basis,
                             const std::vector<long>& idx_list) {
    const long bd = static_cast<long>(idx_list.size());
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(bd, bd);
    const int n = h.n_modes;

    auto add = [&](long row_global, long col_pos, cplx amp) {
        a(basis.block_pos[static_cast<std::size_t>(row_global)], col_pos) += amp;
    };

    for (long cp = 0; cp < bd; ++cp) {
        const long col = idx_list[static_cast<std::size_t>(cp)];
        double diag = 0.0;
        for (int k = 0; k < n; ++k) {
            const int nk = basis.occ_of(col, k);
            diag += h.omega[k] * nk;
            // chi_k a_k^2 + h.c.
            if (h.chi[k] != cplx(0.0, 0.0)) {
                if (nk >= 2) {
                    add(col - 2 * basis.stride(k), cp,
                        h.chi[k] * std::sqrt(static_cast<double>(nk) * (nk - 1)));
                }
                if (nk + 2 < basis.per_mode) {
                    add(col + 2 * basis.stride(k), cp,
                        std::conj(h.chi[k]) * std::sqrt(static_cast<double>(nk + 1) * (nk + 2)));
                }
            }
        }
        add(col, cp, cplx(diag, 0.0));
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                const int ni = basis.occ_of(col, i);
                const int nj = basis.occ_of(col, j);
                const long si = basis.stride(i), sj = basis.stride(j);
                const cplx gij = h.g(i, j);
                if (gij != cplx(0.0, 0.0)) {
                    if (ni >= 1 && nj >= 1) {
                        add(col - si - sj, cp, gij * std::sqrt(static_cast<double>(ni) * nj));
                    }
                    if (ni + 1 < basis.per_mode && nj + 1 < basis.per_mode) {
                        add(col + si + sj, cp,
                            std::conj(gij) * std::sqrt(static_cast<double>(ni + 1) * (nj + 1)));
                    }
                }
                const cplx lij = h.lam(i, j);
                if (lij != cplx(0.0, 0.0)) {
                    // lam_ij a_i a_j^dag + h.c.
                    if (ni >= 1 && nj + 1 < basis.per_mode) {
                        add(col - si + sj, cp, lij * std::sqrt(static_cast<double>(ni) * (nj + 1)));
                    }
                    if (ni + 1 < basis.per_mode && nj >= 1) {
                        add(col + si - sj, cp,
                            std::conj(lij) * std::sqrt(static_cast<double>(ni + 1) * nj));
                    }
                }
            }
        }
    }
    return a;
}

// Cyclic Jacobi with the Numerical-Recipes threshold schedule, complex
// Hermitian.  Eigenvectors accumulated when v != nullptr.
void jacobi_hermitian(Eigen::MatrixXcd& a, Eigen::VectorXd& evals, Eigen::MatrixXcd* v,
                      int max_sweeps = 40) {
    const Eigen::Index d = a.rows();
    if (v != nullptr) *v = Eigen::MatrixXcd::Identity(d, d);
    if (d == 1) {
        evals.resize(1);
        evals(0) = a(0, 0).real();
        return;
    }
    const double fro = std::max(a.norm(), 1e-300);

    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off_sum = 0.0;
        for (Eigen::Index q = 1; q < d; ++q) {
            for (Eigen::Index p = 0; p < q; ++p) off_sum += std::abs(a(p, q));
        }
        if (off_sum <= 1e-11 * fro) break;
        const double thresh = (sweep < 3) ? 0.2 * off_sum / (static_cast<double>(d) * d) : 0.0;

        for (Eigen::Index q = 1; q < d; ++q) {
            cplx* colq = a.col(q).data();
            for (Eigen::Index p = 0; p < q; ++p) {
                const cplx gamma = a(p, q);
                const double ag = std::abs(gamma);
                const double alpha = a(p, p).real();
                const double beta = a(q, q).real();
                // past the early sweeps, entries that cannot move the
                // diagonal are flushed to zero
                if (sweep > 3 && ag <= 1e-15 * (std::abs(alpha) + std::abs(beta))) {
                    a(p, q) = cplx(0.0, 0.0);
                    a(q, p) = cplx(0.0, 0.0);
                    continue;
                }
                if (ag <= thresh || ag == 0.0) continue;

                const double tau = (alpha - beta) / (2.0 * ag);
                const double sgn = (tau >= 0.0) ? 1.0 : -1.0;
                const double t = sgn / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const cplx s = (gamma / ag) * (t * c);  // e^{+i phi} sigma
                const cplx sc = std::conj(s);

                cplx* colp = a.col(p).data();
                for (Eigen::Index i = 0; i < d; ++i) {
                    const cplx ap = colp[i];
                    const cplx aq = colq[i];
                    colp[i] = c * ap + sc * aq;
                    colq[i] = -s * ap + c * aq;
                }
                for (Eigen::Index i = 0; i < d; ++i) {
                    a(p, i) = std::conj(a(i, p));
                    a(q, i) = std::conj(a(i, q));
                }
                a(p, p) = cplx(alpha + t * ag, 0.0);
                a(q, q) = cplx(beta - t * ag, 0.0);
                a(p, q) = cplx(0.0, 0.0);
                a(q, p) = cplx(0.0, 0.0);

                if (v != nullptr) {
                    cplx* vp = v->col(p).data();
                    cplx* vq = v->col(q).data();
                    for (Eigen::Index i = 0; i < d; ++i) {
                        const cplx xp = vp[i];
                        const cplx xq = vq[i];
                        vp[i] = c * xp + sc * xq;
                        vq[i] = -s * xp + c * xq;
                    }
                }
            }
        }
        if (sweep + 1 == max_sweeps) {
            throw std::runtime_error("jacobi_hermitian: no convergence");
        }
    }
    evals.resize(d);
    for (Eigen::Index i = 0; i < d; ++i) evals(i) = a(i, i).real();
}

void warn_if_sp(const QuadraticHamiltonian& h) {
    try {
        const auto eigs = eigenvalues(build(h));
        if (classify(eigs) == PhaseLabel::SP) {
            std::cerr << "fock_diagonalize: warning: SP-side parameters; the truncated "
                         "spectrum is a truncation artifact\n";
        }
    } catch (const std::exception&) {
        // classification is advisory only
    }
}

}  // namespace

FockSpectrum fock_diagonalize(const QuadraticHamiltonian& h, int n_max, int k) {
    const auto violations = validate(h);
    if (!violations.empty()) {
        throw std::invalid_argument("fock_diagonalize: invalid Hamiltonian");
    }
    const FockBasis basis(h.n_modes, n_max);
    if (basis.dim > 20000) {
        throw std::invalid_argument("fock_diagonalize: dimension cap (20000) exceeded");
    }
    warn_if_sp(h);

    std::vector<double> all;
    for (const auto* idx_list : {&basis.even_idx, &basis.odd_idx}) {
        if (idx_list->empty()) continue;
        Eigen::MatrixXcd a = build_block(h, basis, *idx_list);
        Eigen::VectorXd evals;
        jacobi_hermitian(a, evals, nullptr);
        all.insert(all.end(), evals.data(), evals.data() + evals.size());
    }
    std::sort(all.begin(), all.end());

    FockSpectrum out;
    out.n_max = n_max;
    const std::size_t keep = std::min<std::size_t>(static_cast<std::size_t>(std::max(k, 2)),
                                                   all.size());
    out.evals.assign(all.begin(), all.begin() + static_cast<long>(keep));
    out.e0 = all[0];
    out.gap = all[1] - all[0];
    return out;
}

FockGroundState fock_ground_state(const QuadraticHamiltonian& h, int n_max) {
    const FockBasis basis(h.n_modes, n_max);
    if (basis.dim > 20000) {
        throw std::invalid_argument("fock_ground_state: dimension cap (20000) exceeded");
    }
    Eigen::MatrixXcd a = build_block(h, basis, basis.even_idx);
    Eigen::VectorXd evals;
    Eigen::MatrixXcd v;
    jacobi_hermitian(a, evals, &v);
    Eigen::Index imin = 0;
    evals.minCoeff(&imin);

    FockGroundState out;
    out.e0 = evals(imin);
    out.amps.assign(static_cast<std::size_t>(basis.dim), cplx(0.0, 0.0));
    for (std::size_t bp = 0; bp < basis.even_idx.size(); ++bp) {
        out.amps[static_cast<std::size_t>(basis.even_idx[bp])] =
            v(static_cast<Eigen::Index>(bp), imin);
    }
    // gauge: vacuum amplitude real positive
    const cplx vac = out.amps[0];
    if (std::abs(vac) > 0.0) {
        const cplx rot = std::conj(vac) / std::abs(vac);
        for (cplx& c : out.amps) c *= rot;
    }
    return out;
}

GapReport gap_check(const QuadraticHamiltonian& h, int n_max, const SolverOptions& opts) {
    const FockSpectrum fs = fock_diagonalize(h, n_max, 3);
    const auto eigs = eigenvalues(build(h), opts);
    const PairedSpectrum ps = pair_and_label(eigs, h, opts);
    double min_omega = std::numeric_limits<double>::infinity();
    for (std::size_t n = 0; n < ps.labels.size(); ++n) {
        const int p = ps.labels[n];
        if (p >= 0) {
            min_omega = std::min(min_omega, ps.pairs[static_cast<std::size_t>(p)].e_plus.real());
        }
    }
    GapReport r;
    r.fock_gap = fs.gap;
    r.bogoliubov_gap = min_omega;
    r.abs_dev = std::abs(r.fock_gap - r.bogoliubov_gap);
    r.rel_dev = r.abs_dev / std::max(std::abs(r.bogoliubov_gap), 1e-300);
    return r;
}

}  // namespace oracle
}  // namespace hbtk
