#include "hbtk/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

namespace hbtk {

namespace {
constexpr double kTailTol = 1e-8;
}

SqueezedGroundState single_mode_ground(double omega, cplx chi) {
    const double chi_mag = std::abs(chi);
    if (omega * omega <= chi_mag * chi_mag) {
        throw AtExceptionalPointError(
            "single_mode_ground: omega^2 <= |chi|^2 (at or beyond the EP, the "
            "squeezing parameter diverges)");
    }
    SqueezedGroundState s;
    s.kind = SqueezedGroundState::Kind::SingleMode;
    const double gap = std::sqrt(omega * omega - chi_mag * chi_mag);
    s.omega_gap = gap;
    if (chi_mag == 0.0) {
        s.theta = 0.0;
        s.xi_mag = 0.0;
        return s;
    }
    s.theta = std::arg(chi);
    const double num = chi_mag + omega - gap;
    const double den = std::sqrt(chi_mag * chi_mag - (omega - gap) * (omega - gap));
    s.xi_mag = std::log(num / den);
    return s;
}

SqueezedGroundState ring3_ground(const ThreeRingParams& p) {
    const double u0 = p.omega + 2.0 * p.j_hop * std::cos(p.theta);
    const double ut = p.omega - p.j_hop * std::cos(p.theta);
    const double drive = 4.0 * p.g * p.g / p.delta;
    const double d0 = u0 - drive;
    const double dt = ut - drive;
    if (d0 <= 0.0 || dt <= 0.0) {
        throw AtExceptionalPointError("ring3_ground: at or beyond the EP (log argument <= 0)");
    }
    SqueezedGroundState s;
    s.kind = SqueezedGroundState::Kind::Ring3;
    s.ring = p;
    s.xi0 = std::log(u0 / d0) / 8.0;
    s.xi_theta = std::log(ut / dt) / 4.0;
    s.omega_gap = std::min(d0, dt);
    return s;
}

std::vector<cplx> squeezed_vacuum_amps(cplx z, int n_max, double* tail_mass) {
    const double az = std::abs(z);
    if (az >= 1.0) {
        throw AtExceptionalPointError("squeezed_vacuum_amps: |z| >= 1");
    }
    std::vector<cplx> amps(static_cast<std::size_t>(n_max) + 1, cplx(0.0, 0.0));
    cplx c(1.0, 0.0);
    double partial = 1.0;
    amps[0] = c;
    for (int m = 0; 2 * m + 2 <= n_max; ++m) {
        c *= 0.5 * z * std::sqrt(static_cast<double>(2 * m + 1) * (2 * m + 2)) /
             static_cast<double>(m + 1);
        amps[static_cast<std::size_t>(2 * m + 2)] = c;
        partial += std::norm(c);
    }
    const double full = 1.0 / std::sqrt(1.0 - az * az);
    if (tail_mass != nullptr) *tail_mass = std::max(0.0, 1.0 - partial / full);
    const double inv = 1.0 / std::sqrt(partial);
    for (cplx& a : amps) a *= inv;
    return amps;
}

std::vector<cplx> two_mode_squeezed_amps(double r, int n_max, double* tail_mass) {
    const double t = std::tanh(r);
    std::vector<cplx> amps(static_cast<std::size_t>(n_max) + 1);
    double partial = 0.0;
    double c = 1.0;
    for (int n = 0; n <= n_max; ++n) {
        amps[static_cast<std::size_t>(n)] = c;
        partial += c * c;
        c *= t;
    }
    const double full = 1.0 / (1.0 - t * t);
    if (tail_mass != nullptr) *tail_mass = std::max(0.0, 1.0 - partial / full);
    const double inv = 1.0 / std::sqrt(partial);
    for (cplx& a : amps) a *= inv;
    return amps;
}

FockVector fock_vector(const SqueezedGroundState& s, int n_max) {
    if (n_max < 2) {
        throw std::invalid_argument("fock_vector: n_max must be >= 2");
    }
    FockVector out;
    out.kind = s.kind;
    out.n_max = n_max;
    if (s.kind == SqueezedGroundState::Kind::SingleMode) {
        out.dims = {n_max + 1};
        const cplx z = -std::exp(cplx(0.0, -s.theta)) * std::tanh(s.xi_mag);
        out.amps = squeezed_vacuum_amps(z, n_max, &out.tail_mass);
    } else {
        out.dims = {n_max + 1, n_max + 1, n_max + 1};
        double tail0 = 0.0, tailt = 0.0;
        const auto s0 = squeezed_vacuum_amps(cplx(std::tanh(2.0 * s.xi0), 0.0), n_max, &tail0);
        const auto tm = two_mode_squeezed_amps(s.xi_theta, n_max, &tailt);
        const int d = n_max + 1;
        out.amps.assign(static_cast<std::size_t>(d) * d * d, cplx(0.0, 0.0));
        for (int n0 = 0; n0 < d; ++n0) {
            for (int n = 0; n < d; ++n) {
                out.amps[(static_cast<std::size_t>(n0) * d + static_cast<std::size_t>(n)) * d +
                         static_cast<std::size_t>(n)] =
                    s0[static_cast<std::size_t>(n0)] * tm[static_cast<std::size_t>(n)];
            }
        }
        out.tail_mass = 1.0 - (1.0 - tail0) * (1.0 - tailt);
    }
    if (out.tail_mass > kTailTol) {
        throw TruncationError("fock_vector: tail mass " + std::to_string(out.tail_mass) +
                              " above tolerance; increase n_max");
    }
    return out;
}

namespace {

void gauge_fix(std::vector<cplx>& v, std::size_t ref) {
    const cplx p = v[ref];
    const double ap = std::abs(p);
    if (ap == 0.0) return;
    const cplx rot = std::conj(p) / ap;
    for (cplx& a : v) a *= rot;
}

double qfi_once(const StateFamily& family, double at, double step, int n_max) {
    std::vector<cplx> psi0 = family.amps(at, n_max);
    std::vector<cplx> psip = family.amps(at + step, n_max);
    std::vector<cplx> psim = family.amps(at - step, n_max);
    const std::size_t len = std::max({psi0.size(), psip.size(), psim.size()});
    psi0.resize(len, cplx(0.0, 0.0));
    psip.resize(len, cplx(0.0, 0.0));
    psim.resize(len, cplx(0.0, 0.0));

    std::size_t ref = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < len; ++i) {
        if (std::abs(psi0[i]) > best) {
            best = std::abs(psi0[i]);
            ref = i;
        }
    }
    gauge_fix(psi0, ref);
    gauge_fix(psip, ref);
    gauge_fix(psim, ref);

    double dd = 0.0;
    cplx overlap(0.0, 0.0);
    const double inv2h = 1.0 / (2.0 * step);
    for (std::size_t i = 0; i < len; ++i) {
        const cplx d = (psip[i] - psim[i]) * inv2h;
        dd += std::norm(d);
        overlap += std::conj(psi0[i]) * d;
    }
    return 4.0 * (dd - std::norm(overlap));
}

}  // namespace

QfiResult qfi(const StateFamily& family, const std::string& phi, double at, double step,
              int n_max) {
    if (family.gap) {
        const double g = family.gap(at);
        if (g < 10.0 * step) {
            throw AtExceptionalPointError(
                "qfi: gap " + std::to_string(g) + " below 10x the step " + std::to_string(step) +
                "; derivative unreliable this close to the EP");
        }
    }
    QfiResult r;
    r.phi = phi;
    r.at = at;
    r.step = step;
    r.n_max = n_max;
    const double f1 = qfi_once(family, at, step, n_max);
    const double f2 = qfi_once(family, at, step, 2 * n_max);
    r.value = f2;
    r.convergence = std::abs(f2 - f1);
    return r;
}

QfiResult qfi(const std::vector<StateFamily>& factors, const std::string& phi, double at,
              double step, int n_max) {
    QfiResult total;
    total.phi = phi;
    total.at = at;
    total.step = step;
    total.n_max = n_max;
    for (const StateFamily& f : factors) {
        const QfiResult r = qfi(f, phi, at, step, n_max);
        total.value += r.value;
        total.convergence += r.convergence;
    }
    return total;
}

StateFamily single_mode_family(double omega, double chi_mag, double theta,
                               const std::string& phi) {
    if (phi != "theta" && phi != "omega" && phi != "chi") {
        throw std::invalid_argument("single_mode_family: unknown parameter " + phi);
    }
    auto resolve = [omega, chi_mag, theta, phi](double p) {
        double w = omega, cm = chi_mag, th = theta;
        if (phi == "omega") w = p;
        else if (phi == "chi") cm = p;
        else th = p;
        return std::tuple<double, double, double>(w, cm, th);
    };
    StateFamily fam;
    fam.amps = [resolve](double p, int n_max) {
        auto [w, cm, th] = resolve(p);
        const SqueezedGroundState s = single_mode_ground(w, cm * std::exp(cplx(0.0, th)));
        const cplx z = -std::exp(cplx(0.0, -s.theta)) * std::tanh(s.xi_mag);
        return squeezed_vacuum_amps(z, n_max);
    };
    fam.gap = [resolve](double p) {
        auto [w, cm, th] = resolve(p);
        (void)th;
        const double g2 = w * w - cm * cm;
        return (g2 > 0.0) ? std::sqrt(g2) : 0.0;
    };
    return fam;
}

StateFamily xi_family(double theta) {
    StateFamily fam;
    fam.amps = [theta](double r, int n_max) {
        const cplx z = -std::exp(cplx(0.0, -theta)) * std::tanh(r);
        return squeezed_vacuum_amps(z, n_max);
    };
    fam.gap = nullptr;
    return fam;
}

std::vector<StateFamily> ring_family(const ThreeRingParams& p) {
    auto gap = [p](double w) {
        ThreeRingParams q = p;
        q.omega = w;
        const double drive = 4.0 * q.g * q.g / q.delta;
        const double d0 = q.omega + 2.0 * q.j_hop * std::cos(q.theta) - drive;
        const double dt = q.omega - q.j_hop * std::cos(q.theta) - drive;
        return std::min(d0, dt);
    };
    StateFamily f0;
    f0.amps = [p](double w, int n_max) {
        ThreeRingParams q = p;
        q.omega = w;
        const SqueezedGroundState s = ring3_ground(q);
        return squeezed_vacuum_amps(cplx(std::tanh(2.0 * s.xi0), 0.0), n_max);
    };
    f0.gap = gap;
    StateFamily ft;
    ft.amps = [p](double w, int n_max) {
        ThreeRingParams q = p;
        q.omega = w;
        const SqueezedGroundState s = ring3_ground(q);
        return two_mode_squeezed_amps(s.xi_theta, n_max);
    };
    ft.gap = gap;
    return {f0, ft};
}

ScalingFit scaling_exponent(const std::function<double(double)>& qfi_at_gap,
                            const std::vector<double>& gaps) {
    if (gaps.size() < 3) {
        throw std::invalid_argument("scaling_exponent: need at least 3 gap values");
    }
    ScalingFit fit;
    std::vector<double> x, y;
    for (double g : gaps) {
        const double f = qfi_at_gap(g);
        fit.f_values.push_back(f);
        x.push_back(std::log(g));
        y.push_back(std::log(f));
    }
    const double n = static_cast<double>(x.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
        syy += y[i] * y[i];
    }
    const double vxx = sxx - sx * sx / n;
    const double vxy = sxy - sx * sy / n;
    const double vyy = syy - sy * sy / n;
    fit.slope = vxy / vxx;
    fit.intercept = (sy - fit.slope * sx) / n;
    fit.r2 = (vyy > 0.0) ? (vxy * vxy) / (vxx * vyy) : 1.0;
    fit.linear = fit.r2 >= 0.99;
    return fit;
}

}  // namespace hbtk
