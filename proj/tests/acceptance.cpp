// Acceptance gate: one pass/fail line per criterion, exit nonzero when any
// criterion fails.  Runs at desk scale; the Fock-oracle criterion dominates
// the runtime.

#include "checks.hpp"

#include "hbtk/gaussian.hpp"
#include "hbtk/oracle.hpp"
#include "hbtk/phase.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace hbtk;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(int criterion, bool pass, const std::string& what) {
    std::printf("criterion %2d: %s - %s\n", criterion, pass ? "PASS" : "FAIL", what.c_str());
    if (!pass) ++failures;
}

double match_sets(const std::vector<cplx>& a, std::vector<cplx> b) {
    double worst = 0.0;
    for (const auto& x : a) {
        double best = 1e300;
        std::size_t bi = 0;
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (std::abs(x - b[j]) < best) {
                best = std::abs(x - b[j]);
                bi = j;
            }
        }
        b.erase(b.begin() + static_cast<long>(bi));
        worst = std::max(worst, best);
    }
    return worst;
}

QuadraticHamiltonian random_valid(std::mt19937_64& rng, int n, double amp = 1.0) {
    std::uniform_real_distribution<double> u(-amp, amp);
    auto h = QuadraticHamiltonian::zero(n);
    for (int i = 0; i < n; ++i) {
        h.omega[i] = 0.5 + 1.5 * std::abs(u(rng));
        h.chi[i] = cplx(u(rng), u(rng));
    }
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const cplx l(u(rng), u(rng));
            h.lam(i, j) = l;
            h.lam(j, i) = std::conj(l);
            const cplx g(u(rng), u(rng));
            h.g(i, j) = g;
            h.g(j, i) = g;
        }
    }
    return h;
}

ParamPath chi1_path(double lam, double g, double lo, double hi, int samples) {
    ParamPath p;
    p.model_at = [lam, g](double chi) {
        return two_mode(1.0, 1.0, cplx(chi, 0.0), cplx(0.0, 0.0), cplx(lam, 0.0),
                        cplx(g, 0.0));
    };
    p.lo = lo;
    p.hi = hi;
    p.samples = samples;
    p.name = "chi1";
    return p;
}

void criterion_1() {
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double omega = 0.1 + 1.9 * i / 99.0;
        for (int j = 0; j < 100; ++j) {
            const double chi = 2.0 * omega * j / 99.0;
            const cplx e = std::sqrt(cplx(omega * omega - chi * chi, 0.0));
            const auto eigs = eigenvalues(build(single_mode(omega, cplx(chi, 0.0))));
            worst = std::max(worst, match_sets(eigs, {e, -e}) / omega);
        }
    }
    report(1, worst <= 1e-9,
           "single-mode 100x100 grid vs sqrt(omega^2-|chi|^2), worst rel err " +
               std::to_string(worst));
}

void criterion_2() {
    std::mt19937_64 rng(1001);
    double worst_res = 0.0, worst_defect = 0.0, worst_sum = 0.0, worst_sum2 = 0.0;
    for (int it = 0; it < 1000; ++it) {
        const int n = 1 + static_cast<int>(rng() % 5);
        const auto h = random_valid(rng, n);
        const auto m = build(h);
        worst_res = std::max(worst_res, symmetry_residual(m));
        const auto eigs = eigenvalues(m);
        const auto ps = pair_and_label(eigs, h);
        worst_defect = std::max(worst_defect, ps.max_pair_defect);
        cplx sum(0, 0), sum2(0, 0);
        for (const auto& e : eigs) {
            sum += e;
            sum2 += e * e;
        }
        const double scale = m.m.norm();
        worst_sum = std::max(worst_sum, std::abs(sum) / scale);
        const cplx tr2 = (m.m * m.m).trace();
        worst_sum2 = std::max(worst_sum2, std::abs(sum2 - tr2) / std::max(1.0, std::abs(tr2)));
    }
    const bool pass = worst_res == 0.0 && worst_defect <= 1e-8 && worst_sum <= 1e-9 &&
                      worst_sum2 <= 1e-9;
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "1000 random N<=5: residual max %.3g, pair defect %.3g, sumE %.3g, "
                  "sumE^2 %.3g",
                  worst_res, worst_defect, worst_sum, worst_sum2);
    report(2, pass, buf);
}

void criterion_3() {
    std::mt19937_64 rng(1003);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double worst_eig = 0.0, worst_det = 0.0;
    for (int it = 0; it < 1000; ++it) {
        QuadraticHamiltonian h;
        if (it % 2 == 0) {
            h = single_mode(0.5 + std::abs(u(rng)), cplx(u(rng), u(rng)));
        } else {
            h = two_mode(0.5 + std::abs(u(rng)), 0.5 + std::abs(u(rng)), cplx(u(rng), u(rng)),
                         cplx(u(rng), u(rng)), cplx(u(rng), u(rng)), cplx(u(rng), u(rng)));
        }
        const auto m = build(h);
        const auto eigs = eigenvalues(m);
        const double scale = std::max(1.0, m.m.cwiseAbs().maxCoeff());
        worst_eig = std::max(worst_eig,
                             match_sets(eigs, oracle::small_eigenvalues(m)) / scale);
        cplx prod(1, 0);
        for (const auto& e : eigs) prod *= e;  // prod over pairs of -E^2
        const double det = determinant(m);
        worst_det = std::max(worst_det,
                             std::abs(det - prod.real()) / std::max(1.0, std::abs(det)));
    }
    const bool pass = worst_eig <= 1e-9 && worst_det <= 1e-8;
    report(3, pass,
           "QR vs closed form rel err " + std::to_string(worst_eig) + ", det(LU) vs prod(-E^2) " +
               std::to_string(worst_det));
}

void criterion_4() {
    double worst = 0.0;
    // hopping-only family: Omega^2 = w^2+l^2-2x^2 -+ 2 sqrt(x^4 - x^2 l^2 + w^2 l^2)
    for (int i = 0; i < 50; ++i) {
        const double x = 2.0 * i / 49.0, w = 1.0, l = 0.6;
        const cplx s = std::sqrt(cplx(x * x * x * x - x * x * l * l + w * w * l * l, 0.0));
        const cplx o1 = w * w + l * l - 2.0 * x * x - 2.0 * s;
        const cplx o2 = w * w + l * l - 2.0 * x * x + 2.0 * s;
        std::vector<cplx> want;
        for (const cplx& o : {o1, o2}) {
            const cplx e = std::sqrt(o);
            want.push_back(e);
            want.push_back(-e);
        }
        const auto eigs = eigenvalues(
            build(two_mode(w, w, cplx(x, 0), cplx(0, 0), cplx(l, 0), cplx(0, 0))));
        worst = std::max(worst, match_sets(eigs, want));
    }
    // equal hopping/counterrotating family:
    // Omega^2 = w^2 - 2x^2 -+ 2 sqrt(x^4 - 2 x w l^2 + w^2 l^2)
    double spot = 0.0;
    for (int i = 0; i < 50; ++i) {
        const double x = 1.0 * i / 49.0, w = 1.0, l = 0.6;
        const cplx s = std::sqrt(cplx(x * x * x * x - 2.0 * x * w * l * l + w * w * l * l, 0.0));
        const cplx o1 = w * w - 2.0 * x * x - 2.0 * s;
        const cplx o2 = w * w - 2.0 * x * x + 2.0 * s;
        std::vector<cplx> want;
        for (const cplx& o : {o1, o2}) {
            const cplx e = std::sqrt(o);
            want.push_back(e);
            want.push_back(-e);
        }
        const auto eigs = eigenvalues(
            build(two_mode(w, w, cplx(x, 0), cplx(0, 0), cplx(l, 0), cplx(l, 0))));
        worst = std::max(worst, match_sets(eigs, want));
    }
    {
        const auto eigs = eigenvalues(
            build(two_mode(1, 1, cplx(0.3, 0), cplx(0, 0), cplx(0.6, 0), cplx(0.6, 0))));
        spot = match_sets(eigs, {cplx(0.2, 0), cplx(-0.2, 0), cplx(std::sqrt(1.6), 0),
                                 cplx(-std::sqrt(1.6), 0)});
    }
    // ring dispersion vs the 6x6 eigensolver
    const double w = 1.0, dl = 20.0, g = 1.0, J = 0.3;
    double worst_ring = 0.0, spot_ring = 0.0;
    for (int i = 0; i < 50; ++i) {
        const double theta = M_PI * i / 49.0;
        ThreeRingParams p{w, dl, g, J, theta};
        const auto h = from_three_ring(p);
        const double w0 = h.omega[0], wp = h.omega[1], wm = h.omega[2];
        const double c = 4.0 * g * g * g * g / (dl * dl);
        const double om0 = std::sqrt(w0 * w0 - c);
        const double root = std::sqrt((wp + wm) * (wp + wm) - 4.0 * c);
        const double omp = 0.5 * (root + wp - wm);
        const double omm = 0.5 * (root + wm - wp);
        const auto eigs = eigenvalues(build(h));
        worst_ring = std::max(
            worst_ring, match_sets(eigs, {cplx(om0, 0), cplx(-om0, 0), cplx(omp, 0),
                                          cplx(-omp, 0), cplx(omm, 0), cplx(-omm, 0)}));
        if (i == 49) spot_ring = std::abs(om0 - std::sqrt(0.08));
    }
    const bool pass = worst <= 1e-9 && spot <= 1e-9 && worst_ring <= 1e-9 && spot_ring <= 1e-9;
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "dispersion formulas vs eigensolver: two-mode %.3g, spot %.3g, ring %.3g",
                  worst, spot, worst_ring);
    report(4, pass, buf);
}

void criterion_5() {
    std::mt19937_64 rng(1005);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    bool all_found = true;
    for (int it = 0; it < 20; ++it) {
        const double omega0 = 0.5 + 1.5 * u(rng);
        const double delta = 20.0 + 180.0 * u(rng);
        const double eta_star = std::sqrt(omega0 * delta);
        ParamPath p;
        p.model_at = [omega0, delta](double eta) {
            RabiParams rp{omega0, delta, eta, cplx(0, 0)};
            return from_rabi(rp);
        };
        p.lo = 0.8 * eta_star;
        p.hi = 1.2 * eta_star;
        p.samples = 101;
        p.name = "eta";
        const auto eps = locate_eps(p);
        if (eps.size() != 1) {
            all_found = false;
            continue;
        }
        worst = std::max(worst, std::abs(eps[0].param / eta_star - 1.0));
    }
    report(5, all_found && worst <= 1e-6,
           "Rabi EP vs sqrt(omega0*delta), worst rel dev " + std::to_string(worst));
}

void criterion_6() {
    std::mt19937_64 rng(1006);
    std::uniform_real_distribution<double> u(0.5, 3.0);
    double worst = 0.0;
    bool ok = true;
    for (int it = 0; it < 6; ++it) {
        const double w1 = (it == 0) ? 1.0 : u(rng);
        const double w2 = (it == 0) ? 4.0 : u(rng);
        const double lam_star = std::sqrt(w1 * w2);
        ParamPath p;
        p.model_at = [w1, w2](double lam) {
            return two_mode(w1, w2, cplx(0, 0), cplx(0, 0), cplx(lam, 0), cplx(0, 0));
        };
        p.lo = 0.5 * lam_star;
        p.hi = 1.5 * lam_star;
        p.samples = 201;
        p.name = "lambda";
        const auto dps = locate_dps(p, 1e-10);
        const auto eps = locate_eps(p);
        ok = ok && dps.size() == 1 && eps.empty();
        if (dps.size() == 1) worst = std::max(worst, std::abs(dps[0].param - lam_star));
        ok = ok && classify(eigenvalues(build(p.model_at(0.9 * lam_star)))) == PhaseLabel::NP;
        ok = ok && classify(eigenvalues(build(p.model_at(1.1 * lam_star)))) == PhaseLabel::NP;
    }
    report(6, ok && worst <= 1e-8,
           "rotating-only DP at sqrt(w1*w2), no EP, NP both sides; worst dev " +
               std::to_string(worst));
}

void criterion_7() {
    std::mt19937_64 rng(1007);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    bool ok = true;
    double worst_gap = 0.0;
    int boundaries = 0;
    for (int it = 0; it < 50; ++it) {
        const int n = (it % 2 == 0) ? 2 : 3;
        const double w = 0.8 + 1.2 * u(rng);
        const double lam = 0.1 + 0.6 * u(rng);
        auto model_at = [n, w, lam](double chi) {
            auto h = QuadraticHamiltonian::zero(n);
            for (int i = 0; i < n; ++i) {
                h.omega[i] = w;
                h.chi[i] = cplx(chi, 0.0);
            }
            for (int i = 0; i < n; ++i) {
                for (int j = i + 1; j < n; ++j) {
                    h.lam(i, j) = cplx(lam, 0.0);
                    h.lam(j, i) = cplx(lam, 0.0);
                }
            }
            return h;
        };
        ParamPath p;
        p.model_at = model_at;
        p.lo = 0.0;
        p.hi = 0.75 * (w + 2.0 * lam);
        p.samples = 201;
        p.name = "chi";
        const auto eps = locate_eps(p);
        const auto dps = locate_dps(p);
        const auto seq = phase_sequence(p);
        // phase boundaries (interval edges) must be merged EP_DP points;
        // determinant zeros interior to the SP region carry no label change
        for (std::size_t i = 0; i + 1 < seq.intervals.size(); ++i) {
            const double edge = seq.intervals[i].hi;
            double best = 1e300;
            CriticalKind kind = CriticalKind::DP;
            for (const auto& c : seq.critical_points) {
                if (std::abs(c.param - edge) < best) {
                    best = std::abs(c.param - edge);
                    kind = c.kind;
                }
            }
            ++boundaries;
            ok = ok && best <= 1e-6 && kind == CriticalKind::EP_DP;
        }
        // every EP coincides with a DP to 1e-6
        for (const auto& e : eps) {
            double best = 1e300;
            for (const auto& d : dps) best = std::min(best, std::abs(e.param - d.param));
            worst_gap = std::max(worst_gap, best);
        }
        ok = ok && seq.intervals.size() >= 2 && !eps.empty();
    }
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "perfect symmetry: %d boundaries all EP_DP, worst |EP-DP| %.3g", boundaries,
                  worst_gap);
    report(7, ok && worst_gap <= 1e-6, buf);
}

void criterion_8() {
    bool ok = true;
    std::ostringstream msg;
    {
        const auto seq = phase_sequence(chi1_path(0.0, 0.0, 0.0, 1.0, 201));
        ok = ok && seq.critical_points.size() == 1 &&
             std::abs(seq.critical_points[0].param - 0.5) <= 1e-6;
        msg << "lambda=0 boundary "
            << (seq.critical_points.empty() ? -1.0 : seq.critical_points[0].param);
    }
    {
        const auto seq = phase_sequence(chi1_path(0.6, 0.6, 0.0, 1.0, 201));
        ok = ok && seq.critical_points.size() == 2 &&
             std::abs(seq.critical_points[0].param - 0.22) <= 1e-6 &&
             std::abs(seq.critical_points[1].param - 0.50) <= 1e-6;
        ok = ok && seq.intervals.size() == 3 && seq.intervals[0].label == PhaseLabel::SP &&
             seq.intervals[1].label == PhaseLabel::NP && seq.intervals[2].label == PhaseLabel::SP;
        msg << "; lambda=0.6 SP-NP-SP at {0.22, 0.50}";
    }
    {
        const auto pts = scan(chi1_path(5.0, 5.0, 0.0, 1.0, 101));
        for (const auto& pt : pts) ok = ok && pt.label == PhaseLabel::SP;
        msg << "; lambda=5 SP throughout";
    }
    report(8, ok, msg.str());
}

void criterion_9() {
    bool ok = true;
    std::ostringstream msg;
    {
        const auto seq = phase_sequence(chi1_path(std::sqrt(4.1), 0.0, 0.0, 2.0, 401));
        ok = ok && seq.intervals.size() == 4 && seq.critical_points.size() == 3;
        if (ok) {
            ok = ok && seq.intervals[0].label == PhaseLabel::NP &&
                 seq.intervals[1].label == PhaseLabel::SP &&
                 seq.intervals[2].label == PhaseLabel::NP &&
                 seq.intervals[3].label == PhaseLabel::SP;
            ok = ok && std::abs(seq.critical_points[0].param - 1.31524) <= 1e-5 &&
                 std::abs(seq.critical_points[1].param - 1.53953) <= 1e-5 &&
                 std::abs(seq.critical_points[2].param - 1.55) <= 1e-5 &&
                 seq.critical_points[2].kind == CriticalKind::EP_DP;
        }
        msg << "lambda^2=4.1 NP-SP-NP-SP at {1.31524, 1.53953, 1.55}";
    }
    {
        const auto seq = phase_sequence(chi1_path(3.0, 0.0, 0.0, 2.0, 401));
        const double ep_closed = std::sqrt((9.0 - 3.0 * std::sqrt(5.0)) / 2.0);
        ok = ok && seq.intervals.size() == 2 && seq.critical_points.size() == 1 &&
             seq.intervals[0].label == PhaseLabel::NP &&
             seq.intervals[1].label == PhaseLabel::SP &&
             std::abs(seq.critical_points[0].param - ep_closed) <= 1e-6;
        msg << "; lambda=3 NP-SP single EP near 1.0705";
    }
    {
        const json rep = hbtk::tools::run_checks();
        bool conflict_recorded = false;
        for (const auto& n : rep.at("notes")) {
            if (n.get<std::string>().find("5.40205") != std::string::npos) {
                conflict_recorded = true;
            }
        }
        ok = ok && conflict_recorded;
        msg << "; window conflict recorded in check report";
    }
    report(9, ok, msg.str());
}

void criterion_10() {
    struct Instance {
        QuadraticHamiltonian h;
        int n_max;
    };
    std::vector<Instance> cases;
    for (auto [w, x] : {std::pair<double, double>{1.0, 0.6},
                        {1.5, 0.3},
                        {0.9, 0.2},
                        {1.2, 0.9},
                        {2.0, 1.6},
                        {0.7, 0.3},
                        {1.0, 0.0}}) {
        cases.push_back({single_mode(w, cplx(x, 0.0)), 40});
    }
    cases.push_back(
        {two_mode(1.0, 1.3, cplx(0.2, 0), cplx(0.1, 0), cplx(0.3, 0), cplx(0.2, 0)), 40});
    cases.push_back({from_three_ring({1.0, 20.0, 1.0, 0.3, M_PI}), 8});
    cases.push_back({from_three_ring({1.0, 20.0, 0.8, 0.3, 2.0}), 8});

    bool ok = true;
    double worst_gap = 0.0, worst_e0 = 0.0;
    for (const auto& c : cases) {
        const auto fs = oracle::fock_diagonalize(c.h, c.n_max, 2);
        const auto ps = pair_and_label(eigenvalues(build(c.h)), c.h);
        double min_omega = 1e300, sum_omega = 0.0;
        for (std::size_t n = 0; n < ps.labels.size(); ++n) {
            const double om =
                ps.pairs[static_cast<std::size_t>(ps.labels[n])].e_plus.real();
            min_omega = std::min(min_omega, om);
            sum_omega += om;
        }
        ok = ok && min_omega >= 0.2;  // deep-NP requirement on the instance set
        worst_gap = std::max(worst_gap, std::abs(fs.gap - min_omega) / min_omega);
        const double eg = 0.5 * (sum_omega - c.h.omega.sum());
        worst_e0 = std::max(worst_e0, std::abs(fs.e0 - eg));
    }
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "10 instances: worst gap rel dev %.3g, worst |E0 - (SumOmega-Sumomega)/2| %.3g",
                  worst_gap, worst_e0);
    report(10, ok && worst_gap <= 1e-3 && worst_e0 <= 1e-3, buf);
}

void criterion_11() {
    bool ok = true;
    std::ostringstream msg;
    {
        double worst = 0.0;
        const auto fam = xi_family(0.0);
        for (double r : {0.1, 0.4, 0.7, 1.0}) {
            const auto q = qfi(fam, "xi", r, 1e-4, 120);
            worst = std::max(worst, std::abs(q.value / 2.0 - 1.0));
        }
        ok = ok && worst <= 1e-3;
        msg << "F per unit squeezing dev " << worst;
    }
    {
        const auto q = qfi(single_mode_family(1.0, 0.6, 0.0, "omega"), "omega", 1.0, 1e-5, 60);
        ok = ok && std::abs(q.value / 0.439453125 - 1.0) <= 5e-3;
        msg << "; F_omega(1,0.6)=" << q.value;
    }
    const std::vector<double> gaps{0.141, 0.0447, 0.0141};
    {
        auto f_omega = [](double gap) {
            const double chi = std::sqrt(1.0 - gap * gap);
            return qfi(single_mode_family(1.0, chi, 0.0, "omega"), "omega", 1.0, 1e-6, 1500)
                .value;
        };
        auto f_chi = [](double gap) {
            const double chi = std::sqrt(1.0 - gap * gap);
            return qfi(single_mode_family(1.0, chi, 0.0, "chi"), "chi", chi, 1e-6, 1500).value;
        };
        const auto fw = scaling_exponent(f_omega, gaps);
        const auto fx = scaling_exponent(f_chi, gaps);
        ok = ok && std::abs(fw.slope + 4.0) <= 0.1 && std::abs(fx.slope + 4.0) <= 0.1 &&
             fw.linear && fx.linear;
        msg << "; slopes F_omega " << fw.slope << ", F_chi " << fx.slope;
        // informational prefactor report (asymptotic claims 1/4 vs chain rule 1/2)
        const double pre = fw.f_values[2] * std::pow(gaps[2], 4);
        std::printf("info: F_omega prefactor F*Omega1^4/omega^2 = %.4g "
                    "(asymptotic claim 0.25, chain rule 0.5) [informational]\n",
                    pre);
    }
    {
        const std::vector<double> eps_list{1e-2, 1e-3, 1e-4};
        for (double theta : {M_PI, M_PI / 4.0}) {
            ThreeRingParams base{1.0, 20.0, 1.0, 0.3, theta};
            const double drive = 4.0 * base.g * base.g / base.delta;
            auto f_ring = [&](double eps) {
                ThreeRingParams p = base;
                // choose omega so the smaller of the two gap branches equals eps
                const double d0_off = 2.0 * p.j_hop * std::cos(theta);
                const double dt_off = -p.j_hop * std::cos(theta);
                p.omega = eps + drive - std::min(d0_off, dt_off);
                return qfi(ring_family(p), "omega", p.omega, 1e-6, 600).value;
            };
            const auto fit = scaling_exponent(f_ring, eps_list);
            ok = ok && std::abs(fit.slope + 2.0) <= 0.1 && fit.linear;
            msg << "; ring slope(theta=" << theta << ") " << fit.slope;
            std::printf("info: ring F_omega prefactor F*eps^2 at theta=%.4g = %.4g "
                        "(asymptotic claims 1/32, 1/16, 3/32) [informational]\n",
                        theta, fit.f_values[2] * eps_list[2] * eps_list[2]);
        }
    }
    report(11, ok, msg.str());
}

void criterion_12() {
    const char* cli = std::getenv("HBTK_CLI");
    const char* config_dir = std::getenv("HBTK_CONFIG_DIR");
    const char* golden_dir = std::getenv("HBTK_GOLDEN_DIR");
    if (cli == nullptr || config_dir == nullptr || golden_dir == nullptr) {
        report(12, false, "HBTK_CLI/HBTK_CONFIG_DIR/HBTK_GOLDEN_DIR not set");
        return;
    }
    auto slurp = [](const fs::path& p) {
        std::ifstream is(p, std::ios::binary);
        std::ostringstream os;
        os << is.rdbuf();
        return is.good() ? os.str() : std::string("<unreadable:") + p.string() + ">";
    };
    bool ok = true;
    int compared = 0;
    std::vector<fs::path> configs;
    for (const auto& e : fs::directory_iterator(config_dir)) {
        if (e.path().extension() == ".json") configs.push_back(e.path());
    }
    std::sort(configs.begin(), configs.end());
    ok = ok && !configs.empty();
    for (const auto& cfg : configs) {
        json doc;
        try {
            std::ifstream is(cfg);
            doc = json::parse(is);
        } catch (...) {
            ok = false;
            continue;
        }
        const std::string task = doc.at("task").get<std::string>();
        const fs::path golden = fs::path(golden_dir) / cfg.stem();
        for (const char* flags : {"", " --parallel 8"}) {
            const fs::path out =
                fs::temp_directory_path() / ("hbtk_acceptance_" + cfg.stem().string());
            fs::remove_all(out);
            fs::create_directories(out);
            const std::string cmd = std::string(cli) + " " + task + " --config " + cfg.string() +
                                    " --out " + out.string() + flags +
                                    " >/dev/null 2>/dev/null";
            const int rc = std::system(cmd.c_str());
            ok = ok && WIFEXITED(rc) && WEXITSTATUS(rc) == 0;
            for (const auto& g : fs::directory_iterator(golden)) {
                ok = ok && slurp(out / g.path().filename()) == slurp(g.path());
                ++compared;
            }
        }
    }
    report(12, ok,
           "golden outputs byte-identical incl --parallel 8 (" + std::to_string(compared) +
               " comparisons)");
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
    criterion_12();
    if (failures != 0) {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all 12 criteria passed\n");
    return 0;
}
