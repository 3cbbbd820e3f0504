#include "hbtk/phase.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

namespace hbtk {

namespace {

double sample_at(const ParamPath& path, int i) {
    const double t = (path.samples > 1)
                         ? static_cast<double>(i) / static_cast<double>(path.samples - 1)
                         : 0.0;
    if (path.log_scale) {
        return path.lo * std::pow(path.hi / path.lo, t);
    }
    return path.lo + t * (path.hi - path.lo);
}

struct PointEval {
    double max_im_raw{0.0};
    double max_abs{0.0};
    double min_abs{0.0};
    double det{0.0};
    bool failed{false};
};

PointEval eval_point(const ParamPath& path, double p, const SolverOptions& opts) {
    PointEval ev;
    try {
        const QuadraticHamiltonian h = path.model_at(p);
        const HBMatrix m = build(h);
        const std::vector<cplx> eigs = eigenvalues(m, opts);
        ev.min_abs = std::numeric_limits<double>::infinity();
        for (const cplx& e : eigs) {
            ev.max_im_raw = std::max(ev.max_im_raw, std::abs(e.imag()));
            ev.max_abs = std::max(ev.max_abs, std::abs(e));
            ev.min_abs = std::min(ev.min_abs, std::abs(e));
        }
        ev.det = determinant(m);
    } catch (const std::exception&) {
        ev.failed = true;
    }
    return ev;
}

PhasePoint to_phase_point(const ParamPath& path, double p, const SolverOptions& opts) {
    const PointEval ev = eval_point(path, p, opts);
    PhasePoint pt;
    pt.param = p;
    pt.failed = ev.failed;
    if (ev.failed) return pt;
    const double thresh = opts.tol_im * (1.0 + ev.max_abs);
    pt.label = (ev.max_im_raw > thresh) ? PhaseLabel::SP : PhaseLabel::NP;
    pt.max_abs_im = (ev.max_im_raw > thresh) ? ev.max_im_raw : 0.0;
    pt.min_abs_e = ev.min_abs;
    pt.det = ev.det;
    return pt;
}

// classification indicator: positive in the SP, negative in the NP
double indicator(const ParamPath& path, double p, const SolverOptions& opts) {
    const PointEval ev = eval_point(path, p, opts);
    if (ev.failed) return std::numeric_limits<double>::quiet_NaN();
    return ev.max_im_raw - opts.tol_im * (1.0 + ev.max_abs);
}

double det_at(const ParamPath& path, double p, const SolverOptions& opts) {
    return eval_point(path, p, opts).det;
}

double default_tol(const ParamPath& path, double tol) {
    return (tol > 0.0) ? tol : 1e-8 * (path.hi - path.lo);
}

double bisect(const std::function<double(double)>& f, double a, double b, double fa,
              double fb, double xtol) {
    while (b - a > xtol) {
        const double m = 0.5 * (a + b);
        const double fm = f(m);
        if ((fm > 0.0) == (fb > 0.0)) {
            b = m;
            fb = fm;
        } else {
            a = m;
            fa = fm;
        }
    }
    return 0.5 * (a + b);
}

// Brent-Dekker root finding; falls back to bisection steps when the
// interpolation candidate misbehaves.
double brent(const std::function<double(double)>& f, double a, double b, double fa,
             double fb, double xtol) {
    if (std::abs(fa) < std::abs(fb)) {
        std::swap(a, b);
        std::swap(fa, fb);
    }
    double c = a, fc = fa, d = b - a;
    bool mflag = true;
    while (fb != 0.0 && std::abs(b - a) > xtol) {
        double s;
        if (fa != fc && fb != fc) {
            s = a * fb * fc / ((fa - fb) * (fa - fc)) + b * fa * fc / ((fb - fa) * (fb - fc)) +
                c * fa * fb / ((fc - fa) * (fc - fb));
        } else {
            s = b - fb * (b - a) / (fb - fa);
        }
        const double lo = (3.0 * a + b) / 4.0;
        const bool out_of_range = (s < std::min(lo, b) || s > std::max(lo, b));
        const bool slow = mflag ? (std::abs(s - b) >= std::abs(b - c) / 2.0)
                                : (std::abs(s - b) >= std::abs(c - d) / 2.0);
        if (out_of_range || slow) {
            s = 0.5 * (a + b);
            mflag = true;
        } else {
            mflag = false;
        }
        const double fs = f(s);
        d = c;
        c = b;
        fc = fb;
        if ((fa > 0.0) != (fs > 0.0)) {
            b = s;
            fb = fs;
        } else {
            a = s;
            fa = fs;
        }
        if (std::abs(fa) < std::abs(fb)) {
            std::swap(a, b);
            std::swap(fa, fb);
        }
    }
    return b;
}

}  // namespace

PhaseLabel classify(const std::vector<cplx>& spectrum, double tol_im) {
    double max_im = 0.0, max_abs = 0.0;
    for (const cplx& e : spectrum) {
        max_im = std::max(max_im, std::abs(e.imag()));
        max_abs = std::max(max_abs, std::abs(e));
    }
    return (max_im > tol_im * (1.0 + max_abs)) ? PhaseLabel::SP : PhaseLabel::NP;
}

std::vector<PhasePoint> scan(const ParamPath& path, const SolverOptions& opts, int n_threads) {
    std::vector<PhasePoint> out(static_cast<std::size_t>(path.samples));
    if (n_threads <= 1) {
        for (int i = 0; i < path.samples; ++i) {
            out[static_cast<std::size_t>(i)] = to_phase_point(path, sample_at(path, i), opts);
        }
        return out;
    }
    std::atomic<int> next{0};
    auto worker = [&]() {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= path.samples) return;
            out[static_cast<std::size_t>(i)] = to_phase_point(path, sample_at(path, i), opts);
        }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    return out;
}

std::vector<CriticalPoint> locate_eps(const ParamPath& path, double tol,
                                      const SolverOptions& opts) {
    const auto points = scan(path, opts);
    return locate_eps(path, points, tol, opts, nullptr);
}

std::vector<CriticalPoint> locate_eps(const ParamPath& path,
                                      const std::vector<PhasePoint>& points, double tol,
                                      const SolverOptions& opts,
                                      std::vector<std::string>* notes) {
    const double xtol = default_tol(path, tol);
    std::vector<CriticalPoint> out;
    auto f = [&](double p) { return indicator(path, p, opts); };
    for (std::size_t i = 1; i < points.size(); ++i) {
        const PhasePoint& a = points[i - 1];
        const PhasePoint& b = points[i];
        if (a.failed || b.failed || a.label == b.label) continue;
        const double fa = f(a.param);
        const double fb = f(b.param);
        if ((fa > 0.0) == (fb > 0.0)) continue;
        CriticalPoint cp;
        cp.kind = CriticalKind::EP;
        cp.param = bisect(f, a.param, b.param, fa, fb, xtol);
        cp.bracket_lo = std::max(a.param, cp.param - xtol);
        cp.bracket_hi = std::min(b.param, cp.param + xtol);
        cp.indicator_lo = fa;
        cp.indicator_hi = fb;
        out.push_back(cp);
    }
    std::sort(out.begin(), out.end(),
              [](const CriticalPoint& a, const CriticalPoint& b) { return a.param < b.param; });
    if (notes != nullptr && out.size() >= 2) {
        const double step = (path.hi - path.lo) / static_cast<double>(path.samples - 1);
        double min_width = std::numeric_limits<double>::infinity();
        for (std::size_t i = 1; i < out.size(); ++i) {
            min_width = std::min(min_width, out[i].param - out[i - 1].param);
        }
        if (min_width < 2.0 * step) {
            notes->push_back("narrow phase interval (width " + std::to_string(min_width) +
                             ") close to the sampling step " + std::to_string(step) +
                             "; intervals narrower than the step may be missed");
        }
    }
    return out;
}

std::vector<CriticalPoint> locate_dps(const ParamPath& path, double tol,
                                      const SolverOptions& opts) {
    const auto points = scan(path, opts);
    return locate_dps(path, points, tol, opts, nullptr);
}

std::vector<CriticalPoint> locate_dps(const ParamPath& path,
                                      const std::vector<PhasePoint>& points, double tol,
                                      const SolverOptions& opts,
                                      std::vector<std::string>* notes) {
    const double xtol = default_tol(path, tol);
    std::vector<CriticalPoint> out;
    auto f = [&](double p) { return det_at(path, p, opts); };

    double det_scale = 0.0;
    for (const PhasePoint& pt : points) {
        if (!pt.failed) det_scale = std::max(det_scale, std::abs(pt.det));
    }
    if (det_scale == 0.0) det_scale = 1.0;

    // sign-change zeros via Brent
    for (std::size_t i = 1; i < points.size(); ++i) {
        const PhasePoint& a = points[i - 1];
        const PhasePoint& b = points[i];
        if (a.failed || b.failed) continue;
        if (a.det == 0.0 || (a.det > 0.0) == (b.det > 0.0)) continue;
        CriticalPoint cp;
        cp.kind = CriticalKind::DP;
        cp.param = brent(f, a.param, b.param, a.det, b.det, xtol);
        cp.bracket_lo = a.param;
        cp.bracket_hi = b.param;
        cp.indicator_lo = a.det;
        cp.indicator_hi = b.det;
        cp.sign_change = true;
        out.push_back(cp);
    }

    // tangential zeros: |det| local minima refined on the finite-difference
    // derivative of det, kept only when det at the minimum is negligible
    const double fd_h = std::max(1e-6 * (path.hi - path.lo), 1e-12);
    auto dfd = [&](double p) { return (f(p + fd_h) - f(p - fd_h)) / (2.0 * fd_h); };
    for (std::size_t i = 1; i + 1 < points.size(); ++i) {
        const PhasePoint& a = points[i - 1];
        const PhasePoint& b = points[i];
        const PhasePoint& c = points[i + 1];
        if (a.failed || b.failed || c.failed) continue;
        if (!(std::abs(b.det) < std::abs(a.det) && std::abs(b.det) <= std::abs(c.det))) continue;
        if ((a.det > 0.0) != (b.det > 0.0) || (b.det > 0.0) != (c.det > 0.0)) continue;
        const double ga = dfd(a.param);
        const double gc = dfd(c.param);
        if ((ga > 0.0) == (gc > 0.0)) continue;
        const double p_star = bisect(dfd, a.param, c.param, ga, gc, xtol);
        if (std::abs(f(p_star)) > 1e-10 * det_scale) continue;
        CriticalPoint cp;
        cp.kind = CriticalKind::DP;
        cp.param = p_star;
        cp.bracket_lo = a.param;
        cp.bracket_hi = c.param;
        cp.indicator_lo = a.det;
        cp.indicator_hi = c.det;
        cp.sign_change = false;
        out.push_back(cp);
    }

    std::sort(out.begin(), out.end(),
              [](const CriticalPoint& a, const CriticalPoint& b) { return a.param < b.param; });
    if (notes != nullptr) {
        for (const CriticalPoint& cp : out) {
            if (!cp.sign_change) {
                notes->push_back("tangential determinant zero at " + std::to_string(cp.param) +
                                 " (no sign change; det grazes zero)");
            }
        }
    }
    return out;
}

PhaseSequence phase_sequence(const ParamPath& path, double tol, const SolverOptions& opts,
                             double ep_dp_tol) {
    PhaseSequence seq;
    const auto points = scan(path, opts);
    auto eps = locate_eps(path, points, tol, opts, &seq.notes);
    auto dps = locate_dps(path, points, tol, opts, &seq.notes);

    // merge coincident EP/DP into EP_DP
    std::vector<bool> dp_used(dps.size(), false);
    for (CriticalPoint& ep : eps) {
        for (std::size_t j = 0; j < dps.size(); ++j) {
            if (dp_used[j]) continue;
            if (std::abs(dps[j].param - ep.param) <= ep_dp_tol) {
                ep.kind = CriticalKind::EP_DP;
                ep.sign_change = dps[j].sign_change;
                dp_used[j] = true;
                break;
            }
        }
        seq.critical_points.push_back(ep);
    }
    for (std::size_t j = 0; j < dps.size(); ++j) {
        if (!dp_used[j]) seq.critical_points.push_back(dps[j]);
    }
    std::sort(seq.critical_points.begin(), seq.critical_points.end(),
              [](const CriticalPoint& a, const CriticalPoint& b) { return a.param < b.param; });

    // maximal constant-label intervals split at phase boundaries (EP-type points)
    std::vector<double> bounds;
    for (const CriticalPoint& cp : seq.critical_points) {
        if (cp.kind != CriticalKind::DP) bounds.push_back(cp.param);
    }
    double lo = path.lo;
    auto label_at = [&](double p) {
        const PointEval ev = eval_point(path, p, opts);
        return (ev.max_im_raw > opts.tol_im * (1.0 + ev.max_abs)) ? PhaseLabel::SP
                                                                  : PhaseLabel::NP;
    };
    for (double b : bounds) {
        seq.intervals.push_back({lo, b, label_at(0.5 * (lo + b))});
        lo = b;
    }
    seq.intervals.push_back({lo, path.hi, label_at(0.5 * (lo + path.hi))});
    // merge neighbours that ended up with the same label
    std::vector<PhaseInterval> merged;
    for (const PhaseInterval& iv : seq.intervals) {
        if (!merged.empty() && merged.back().label == iv.label) {
            merged.back().hi = iv.hi;
        } else {
            merged.push_back(iv);
        }
    }
    seq.intervals = std::move(merged);
    return seq;
}

}  // namespace hbtk
