#include "hbtk/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace hbtk {

namespace {

// Parlett-Reinsch balancing with radix-2 scaling.  Similarity transform,
// eigenvalues unchanged.
void balance_in_place(Eigen::MatrixXcd& a) {
    const Eigen::Index n = a.rows();
    bool converged = false;
    while (!converged) {
        converged = true;
        for (Eigen::Index i = 0; i < n; ++i) {
            double r = 0.0, c = 0.0;
            for (Eigen::Index j = 0; j < n; ++j) {
                if (j == i) continue;
                r += std::abs(a(i, j));
                c += std::abs(a(j, i));
            }
            if (r == 0.0 || c == 0.0) continue;
            double f = 1.0;
            const double s = r + c;
            while (c < r / 2.0) {
                c *= 2.0;
                r /= 2.0;
                f *= 2.0;
            }
            while (c >= r * 2.0) {
                c /= 2.0;
                r *= 2.0;
                f /= 2.0;
            }
            if (c + r < 0.95 * s) {
                converged = false;
                a.row(i) /= f;
                a.col(i) *= f;
            }
        }
    }
}

// Householder reduction to upper Hessenberg form.
void hessenberg_in_place(Eigen::MatrixXcd& a) {
    const Eigen::Index n = a.rows();
    for (Eigen::Index k = 0; k + 2 < n; ++k) {
        Eigen::VectorXcd x = a.col(k).segment(k + 1, n - k - 1);
        const double xnorm = x.norm();
        if (xnorm == 0.0) continue;
        cplx alpha = x(0);
        const double aa = std::abs(alpha);
        const cplx phase = (aa == 0.0) ? cplx(1.0, 0.0) : alpha / aa;
        Eigen::VectorXcd v = x;
        v(0) += phase * xnorm;
        const double vnorm = v.norm();
        if (vnorm == 0.0) continue;
        v /= vnorm;
        // A <- (I - 2 v v^H) A (I - 2 v v^H) applied to the trailing block
        auto rows = a.block(k + 1, 0, n - k - 1, n);
        rows -= 2.0 * v * (v.adjoint() * rows);
        auto cols = a.block(0, k + 1, n, n - k - 1);
        cols -= (cols * v) * 2.0 * v.adjoint();
    }
    // clear what is numerically zero below the subdiagonal
    for (Eigen::Index j = 0; j + 2 < n; ++j) {
        for (Eigen::Index i = j + 2; i < n; ++i) a(i, j) = cplx(0.0, 0.0);
    }
}

struct Givens {
    double c;
    cplx s;
};

Givens make_givens(cplx x, cplx y) {
    const double ay = std::abs(y);
    if (ay == 0.0) return {1.0, cplx(0.0, 0.0)};
    const double ax = std::abs(x);
    const double d = std::hypot(ax, ay);
    if (ax == 0.0) return {0.0, std::conj(y) / ay};
    const cplx px = x / ax;
    return {ax / d, px * std::conj(y) / d};
}

// Eigenvalues of [[a, b], [c, d]]; used for the Wilkinson shift and for
// final 2x2 deflation windows.
std::pair<cplx, cplx> eig2(cplx a, cplx b, cplx c, cplx d) {
    const cplx tr2 = (a + d) / 2.0;
    const cplx disc = std::sqrt(tr2 * tr2 - (a * d - b * c));
    return {tr2 + disc, tr2 - disc};
}

cplx wilkinson_shift(const Eigen::MatrixXcd& h, Eigen::Index hi) {
    const cplx a = h(hi - 1, hi - 1), b = h(hi - 1, hi);
    const cplx c = h(hi, hi - 1), d = h(hi, hi);
    auto [e1, e2] = eig2(a, b, c, d);
    return (std::abs(e1 - d) < std::abs(e2 - d)) ? e1 : e2;
}

}  // namespace

std::vector<cplx> eigenvalues(const Eigen::MatrixXcd& m, const SolverOptions& opts) {
    const Eigen::Index n = m.rows();
    if (n == 0) return {};
    if (n == 1) return {m(0, 0)};

    Eigen::MatrixXcd h = m;
    if (opts.balance) balance_in_place(h);
    hessenberg_in_place(h);

    const double hnorm = std::max(h.cwiseAbs().maxCoeff(),
                                  std::numeric_limits<double>::min());
    std::vector<cplx> eigs;
    eigs.reserve(n);

    Eigen::Index hi = n - 1;
    long iter_this = 0;
    long iter_total = 0;
    const long iter_cap = static_cast<long>(opts.max_sweeps) * n;

    auto negligible = [&](Eigen::Index i) {
        const double s = std::abs(h(i - 1, i - 1)) + std::abs(h(i, i));
        const double tol = (s > 0.0) ? 1e-14 * s : 1e-14 * hnorm;
        return std::abs(h(i, i - 1)) <= tol;
    };

    while (hi >= 0) {
        // deflate converged trailing eigenvalues
        if (hi == 0 || negligible(hi)) {
            eigs.push_back(h(hi, hi));
            --hi;
            iter_this = 0;
            continue;
        }
        // locate the active window [lo, hi]
        Eigen::Index lo = hi;
        while (lo > 0 && !negligible(lo)) --lo;
        if (hi - lo == 1) {
            auto [e1, e2] = eig2(h(lo, lo), h(lo, hi), h(hi, lo), h(hi, hi));
            eigs.push_back(e1);
            eigs.push_back(e2);
            hi = lo - 1;
            iter_this = 0;
            continue;
        }
        if (iter_total >= iter_cap) {
            throw NonConvergenceError("eigenvalues: QR iteration cap reached", eigs);
        }

        cplx mu = wilkinson_shift(h, hi);
        if (iter_this > 0 && iter_this % 12 == 0) {
            // exceptional shift to break symmetric stalls
            mu = h(hi, hi) + 0.75 * std::abs(h(hi, hi - 1));
        }

        // explicit single-shift QR step on the window: H - mu I = QR, H <- RQ + mu I
        for (Eigen::Index i = lo; i <= hi; ++i) h(i, i) -= mu;
        std::vector<Givens> rot(static_cast<std::size_t>(hi - lo));
        for (Eigen::Index k = lo; k < hi; ++k) {
            const Givens g = make_givens(h(k, k), h(k + 1, k));
            rot[static_cast<std::size_t>(k - lo)] = g;
            for (Eigen::Index j = k; j <= hi; ++j) {
                const cplx t1 = h(k, j), t2 = h(k + 1, j);
                h(k, j) = g.c * t1 + g.s * t2;
                h(k + 1, j) = -std::conj(g.s) * t1 + g.c * t2;
            }
            h(k + 1, k) = cplx(0.0, 0.0);
        }
        for (Eigen::Index k = lo; k < hi; ++k) {
            const Givens g = rot[static_cast<std::size_t>(k - lo)];
            const Eigen::Index top = lo;
            const Eigen::Index bot = std::min(k + 1, hi);
            for (Eigen::Index i = top; i <= bot; ++i) {
                const cplx t1 = h(i, k), t2 = h(i, k + 1);
                h(i, k) = g.c * t1 + std::conj(g.s) * t2;
                h(i, k + 1) = -g.s * t1 + g.c * t2;
            }
        }
        for (Eigen::Index i = lo; i <= hi; ++i) h(i, i) += mu;
        ++iter_this;
        ++iter_total;
    }
    return eigs;
}

BogoliubovVector eigenvector(const HBMatrix& mat, cplx e, const SolverOptions& opts) {
    const Eigen::Index dim = mat.dim();
    const Eigen::Index nm = dim / 2;
    const double mnorm = std::max(mat.m.cwiseAbs().maxCoeff(), 1e-300);

    std::mt19937_64 rng(opts.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::VectorXcd v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) v(i) = cplx(gauss(rng), gauss(rng));
    v.normalize();

    double shift_bump = 0.0;
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu;
    auto factor = [&]() {
        Eigen::MatrixXcd shifted = mat.m;
        const cplx sh = e + cplx(shift_bump, 0.0);
        for (Eigen::Index i = 0; i < dim; ++i) shifted(i, i) -= sh;
        // tiny regularization keeps the solve finite when M - eI is singular
        bool ok = true;
        lu.compute(shifted);
        for (Eigen::Index i = 0; i < dim; ++i) {
            if (std::abs(lu.matrixLU()(i, i)) < 1e-300) ok = false;
        }
        return ok;
    };
    if (!factor()) {
        shift_bump = 1e-12 * mnorm;
        factor();
    }

    BogoliubovVector out;
    double res = std::numeric_limits<double>::infinity();
    int iters_used = 0;
    for (int it = 0; it < 50; ++it) {
        Eigen::VectorXcd w = lu.solve(v);
        const double wn = w.norm();
        if (!std::isfinite(wn) || wn == 0.0) {
            shift_bump = (shift_bump == 0.0) ? 1e-12 * mnorm : shift_bump * 10.0;
            factor();
            continue;
        }
        v = w / wn;
        res = (mat.m * v - e * v).norm() / mnorm;
        iters_used = it + 1;
        if (res <= 1e-12) break;
    }
    if (!std::isfinite(res) || res > 1e-6) {
        throw NonConvergenceError("eigenvector: inverse iteration did not converge", {});
    }

    // gauge: largest component real positive
    Eigen::Index imax = 0;
    v.cwiseAbs().maxCoeff(&imax);
    const cplx pivot = v(imax);
    v *= std::abs(pivot) / pivot;

    out.mu = v.head(nm);
    out.nu = v.tail(nm);
    out.norm_sq = v.head(nm).squaredNorm() - v.tail(nm).squaredNorm();
    out.residual = res;
    out.condition_warning = (res > 1e-10) || (iters_used > 10);
    return out;
}

namespace {

// Greedy minimal-displacement matching between two equally sized eigenvalue
// sets; returns to[i] = index in `next` matched to prev[i].
std::vector<int> match_sets(const std::vector<cplx>& prev, const std::vector<cplx>& next) {
    const int n = static_cast<int>(prev.size());
    struct Cand {
        double d;
        int i, j;
    };
    std::vector<Cand> cands;
    cands.reserve(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            cands.push_back({std::abs(prev[static_cast<std::size_t>(i)] -
                                      next[static_cast<std::size_t>(j)]),
                             i, j});
        }
    }
    std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
        if (a.d != b.d) return a.d < b.d;
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
    });
    std::vector<int> to(static_cast<std::size_t>(n), -1);
    std::vector<bool> used(static_cast<std::size_t>(n), false);
    int matched = 0;
    for (const Cand& c : cands) {
        if (matched == n) break;
        if (to[static_cast<std::size_t>(c.i)] != -1 || used[static_cast<std::size_t>(c.j)]) continue;
        to[static_cast<std::size_t>(c.i)] = c.j;
        used[static_cast<std::size_t>(c.j)] = true;
        ++matched;
    }
    return to;
}

bool lex_greater(cplx a, cplx b) {
    if (a.real() != b.real()) return a.real() > b.real();
    return a.imag() > b.imag();
}

QuadraticHamiltonian scaled_couplings(const QuadraticHamiltonian& h, double s) {
    QuadraticHamiltonian out = h;
    out.chi *= s;
    out.lam *= s;
    out.g *= s;
    return out;
}

}  // namespace

PairedSpectrum pair_and_label(const std::vector<cplx>& eigs, const QuadraticHamiltonian& h,
                              const SolverOptions& opts) {
    if (eigs.size() % 2 != 0) {
        throw PairingError("pair_and_label: odd number of eigenvalues");
    }
    const int n2 = static_cast<int>(eigs.size());
    const int nm = n2 / 2;
    double scale = 1.0;
    for (const cplx& e : eigs) scale = std::max(scale, std::abs(e));

    PairedSpectrum out;

    // greedy +-E matching, largest magnitude first
    std::vector<int> order(static_cast<std::size_t>(n2));
    for (int i = 0; i < n2; ++i) order[static_cast<std::size_t>(i)] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return std::abs(eigs[static_cast<std::size_t>(a)]) > std::abs(eigs[static_cast<std::size_t>(b)]);
    });
    std::vector<bool> used(static_cast<std::size_t>(n2), false);
    for (int oi : order) {
        if (used[static_cast<std::size_t>(oi)]) continue;
        used[static_cast<std::size_t>(oi)] = true;
        int best = -1;
        double bestd = std::numeric_limits<double>::infinity();
        for (int j = 0; j < n2; ++j) {
            if (used[static_cast<std::size_t>(j)]) continue;
            const double d = std::abs(eigs[static_cast<std::size_t>(oi)] + eigs[static_cast<std::size_t>(j)]);
            if (d < bestd) {
                bestd = d;
                best = j;
            }
        }
        used[static_cast<std::size_t>(best)] = true;
        if (bestd > 1e-6 * scale) {
            throw PairingError("pair_and_label: +-E symmetry broken (defect " +
                               std::to_string(bestd) + ")");
        }
        cplx ep = eigs[static_cast<std::size_t>(oi)];
        cplx em = eigs[static_cast<std::size_t>(best)];
        if (!lex_greater(ep, em)) std::swap(ep, em);
        out.pairs.push_back({ep, em, ep * ep});
        out.max_pair_defect = std::max(out.max_pair_defect, bestd);
    }

    // residuals via inverse iteration on the built matrix
    const HBMatrix m = build(h);
    out.residuals.reserve(out.pairs.size());
    for (const SpectrumPair& p : out.pairs) {
        try {
            out.residuals.push_back(eigenvector(m, p.e_plus, opts).residual);
        } catch (const NonConvergenceError&) {
            out.residuals.push_back(std::numeric_limits<double>::quiet_NaN());
        }
    }

    // branch labels by homotopy in the coupling scale s
    std::vector<cplx> prev(static_cast<std::size_t>(n2));
    for (int i = 0; i < nm; ++i) {
        prev[static_cast<std::size_t>(i)] = cplx(h.omega[i], 0.0);
        prev[static_cast<std::size_t>(nm + i)] = cplx(-h.omega[i], 0.0);
    }
    std::vector<int> branch_pos(static_cast<std::size_t>(nm));  // index into prev
    for (int i = 0; i < nm; ++i) branch_pos[static_cast<std::size_t>(i)] = i;

    out.label_ordered.assign(static_cast<std::size_t>(nm), true);
    out.valid_up_to = 1.0;
    const double im_tol = opts.tol_im * (1.0 + scale);
    const double min_step = 1.0 / 4096.0;

    double s = 0.0;
    double step = 1.0 / 16.0;
    while (s < 1.0) {
        const double s_next = std::min(1.0, s + step);
        std::vector<cplx> next = eigenvalues(build(scaled_couplings(h, s_next)).m, opts);
        const std::vector<int> to = match_sets(prev, next);
        double disp = 0.0;
        for (int i = 0; i < n2; ++i) {
            disp = std::max(disp, std::abs(next[static_cast<std::size_t>(to[static_cast<std::size_t>(i)])] -
                                           prev[static_cast<std::size_t>(i)]));
        }
        double sep = std::numeric_limits<double>::infinity();
        for (int i = 0; i < n2; ++i) {
            for (int j = i + 1; j < n2; ++j) {
                sep = std::min(sep, std::abs(prev[static_cast<std::size_t>(i)] -
                                             prev[static_cast<std::size_t>(j)]));
            }
        }
        if (10.0 * disp > sep && sep > 1e-9 * scale && step > min_step) {
            step /= 2.0;
            continue;
        }
        for (int b = 0; b < nm; ++b) {
            branch_pos[static_cast<std::size_t>(b)] =
                to[static_cast<std::size_t>(branch_pos[static_cast<std::size_t>(b)])];
        }
        prev.clear();
        prev.assign(next.begin(), next.end());
        s = s_next;
        if (step < 1.0 / 16.0) step *= 2.0;

        // collision: a branch leaving the real axis has passed an EP; two
        // branches meeting on the axis coalesce as well
        for (int b = 0; b < nm; ++b) {
            if (!out.label_ordered[static_cast<std::size_t>(b)]) continue;
            const cplx val = prev[static_cast<std::size_t>(branch_pos[static_cast<std::size_t>(b)])];
            bool collided = std::abs(val.imag()) > im_tol;
            for (int b2 = 0; b2 < nm && !collided; ++b2) {
                if (b2 == b) continue;
                const cplx v2 = prev[static_cast<std::size_t>(branch_pos[static_cast<std::size_t>(b2)])];
                if (std::abs(val - v2) < 1e-9 * (1.0 + scale)) collided = true;
            }
            if (collided) {
                out.label_ordered[static_cast<std::size_t>(b)] = false;
                out.valid_up_to = std::min(out.valid_up_to, s);
            }
        }
    }

    // map tracked endpoints onto the pairs of the supplied spectrum
    out.labels.assign(static_cast<std::size_t>(nm), -1);
    std::vector<bool> taken(out.pairs.size(), false);
    for (int b = 0; b < nm; ++b) {
        const cplx val = prev[static_cast<std::size_t>(branch_pos[static_cast<std::size_t>(b)])];
        int best = -1;
        double bestd = std::numeric_limits<double>::infinity();
        for (std::size_t p = 0; p < out.pairs.size(); ++p) {
            const double d = std::min(std::abs(val - out.pairs[p].e_plus),
                                      std::abs(val - out.pairs[p].e_minus));
            if (d < bestd) {
                bestd = d;
                best = static_cast<int>(p);
            }
        }
        out.labels[static_cast<std::size_t>(b)] = best;
        if (best >= 0) {
            if (taken[static_cast<std::size_t>(best)]) {
                out.label_ordered[static_cast<std::size_t>(b)] = false;
            }
            taken[static_cast<std::size_t>(best)] = true;
        }
    }
    return out;
}

}  // namespace hbtk
