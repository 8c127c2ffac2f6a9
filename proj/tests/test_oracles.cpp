#include "iohoem/errors.hpp"
#include "iohoem/hierarchy.hpp"
#include "iohoem/oracles.hpp"
#include "quadrature.hpp"

#include <doctest.h>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <numbers>

using namespace iohoem;

namespace {

using Q = boost::math::quadrature::gauss_kronrod<double, 31>;

cplx complex_integral(const std::function<cplx(double)>& f, double a, double b)
{
    return {Q::integrate([&](double x) { return f(x).real(); }, a, b, 12, 1e-14),
            Q::integrate([&](double x) { return f(x).imag(); }, a, b, 12, 1e-14)};
}

// Emitter amplitude from a discretized two-channel waveguide: flat coupling
// over [omega_s - W, omega_s + W] on each channel, integrated with RK4 in the
// rotating frame of every mode.
cplx coupled_mode_c1(const ScatteringConfig& cfg, double t_end, double W, double dw, double h)
{
    const auto& w = cfg.wavepacket;
    const int n = static_cast<int>(2.0 * W / dw);
    const double g = std::sqrt(cfg.Gamma * dw / (2.0 * std::numbers::pi));
    std::vector<cplx> b, rot;
    for (int ch = 0; ch < 2; ++ch)
        for (int k = 0; k < n; ++k) {
            const double om = cfg.omega_s - W + (k + 0.5) * dw;
            cplx amp{};
            if (om > 0.0) {
                const double p = (ch == 0 ? 1.0 : -1.0) * om / cfg.c;
                amp = std::sqrt(w.g_in(p) * dw / cfg.c) * std::exp(cplx{0.0, -p * w.x_in});
            }
            b.push_back(amp);
            rot.push_back(std::polar(1.0, (om - cfg.omega_s) * h / 2.0));
        }
    const std::size_t m = b.size();
    std::vector<cplx> ph(m, 1.0), mid(m), end(m), k1(m), k2(m), k3(m), k4(m);
    cplx c{};
    const cplx mi{0.0, -g};
    auto emitter_rate = [&](const std::vector<cplx>& phase, const std::vector<cplx>* db, double f) {
        cplx acc{};
        for (std::size_t k = 0; k < m; ++k)
            acc += (b[k] + (db ? f * (*db)[k] : cplx{})) * std::conj(phase[k]);
        return mi * acc;
    };
    const int steps = static_cast<int>(std::round(t_end / h));
    for (int s = 0; s < steps; ++s) {
        for (std::size_t k = 0; k < m; ++k) {
            mid[k] = ph[k] * rot[k];
            end[k] = mid[k] * rot[k];
        }
        const cplx c1 = emitter_rate(ph, nullptr, 0.0);
        for (std::size_t k = 0; k < m; ++k)
            k1[k] = mi * c * ph[k];
        const cplx ca = c + 0.5 * h * c1;
        const cplx c2 = emitter_rate(mid, &k1, 0.5 * h);
        for (std::size_t k = 0; k < m; ++k)
            k2[k] = mi * ca * mid[k];
        const cplx cb = c + 0.5 * h * c2;
        const cplx c3 = emitter_rate(mid, &k2, 0.5 * h);
        for (std::size_t k = 0; k < m; ++k)
            k3[k] = mi * cb * mid[k];
        const cplx cc = c + h * c3;
        const cplx c4 = emitter_rate(end, &k3, h);
        for (std::size_t k = 0; k < m; ++k)
            k4[k] = mi * cc * end[k];
        c += h / 6.0 * (c1 + 2.0 * c2 + 2.0 * c3 + c4);
        for (std::size_t k = 0; k < m; ++k) {
            b[k] += h / 6.0 * (k1[k] + 2.0 * k2[k] + 2.0 * k3[k] + k4[k]);
            ph[k] = end[k];
        }
    }
    return c * std::exp(cplx{0.0, -cfg.omega_s * t_end});
}

// Emitter driven by the free packet at x = 0, integrated with RK4:
// dc/dt = -kappa c - i sqrt(Gamma c / 2 pi) int dp sqrt(g) e^{-i p x_in - i c |p| t}.
cplx driven_emitter_c1(const ScatteringConfig& cfg, double t_end, int steps)
{
    const cplx kappa{cfg.Gamma, cfg.omega_s};
    const double g = std::sqrt(cfg.Gamma * cfg.c / (2.0 * std::numbers::pi));
    auto drive = [&](double t) {
        return cplx{0.0, -g} * testutil::packet_integral(cfg.wavepacket, [&](double p) {
                   return std::sqrt(cfg.wavepacket.g_in(p)) *
                          std::exp(cplx{0.0, -p * cfg.wavepacket.x_in - cfg.c * std::abs(p) * t});
               });
    };
    const double h = t_end / steps;
    cplx c{};
    for (int s = 0; s < steps; ++s) {
        const double t = s * h;
        const cplx fa = drive(t), fm = drive(t + h / 2), fb = drive(t + h);
        const cplx k1 = -kappa * c + fa;
        const cplx k2 = -kappa * (c + 0.5 * h * k1) + fm;
        const cplx k3 = -kappa * (c + 0.5 * h * k2) + fm;
        const cplx k4 = -kappa * (c + h * k3) + fb;
        c += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return c;
}

const DephasingParams DEPH{0.8, 1.3, 0.7};

ComplexMatrix mixed_state() { return ComplexMatrix{{0.3, cplx{0.2, 0.25}}, {cplx{0.2, -0.25}, 0.7}}; }

}  // namespace

TEST_CASE("emitter amplitude against a discretized coupled-mode waveguide")
{
    const auto cfg = reference_scattering_config();
    const double t = std::abs(cfg.wavepacket.x_in) / cfg.c;
    const cplx coarse = coupled_mode_c1(cfg, t, 100.0, 0.02, 0.0025);
    const cplx fine = coupled_mode_c1(cfg, t, 200.0, 0.02, 0.00125);
    // The finite window error is O(1/W); extrapolate it away.
    const cplx extrapolated = 2.0 * fine - coarse;
    CHECK(std::abs(analytic_c1(cfg, t) - extrapolated) < 1e-4);
}

TEST_CASE("emitter amplitude against the driven emitter equation")
{
    const auto cfg = reference_scattering_config();
    for (double t : {0.3, 1.0, 1.8})
        CHECK(std::abs(analytic_c1(cfg, t) - driven_emitter_c1(cfg, t, 400)) < 1e-8);
}

TEST_CASE("emitter amplitude limits")
{
    auto cfg = reference_scattering_config();
    CHECK(std::abs(analytic_c1(cfg, 0.0)) < 1e-14);
    cfg.Gamma = 0.0;
    cfg.wavepacket.Gamma = 0.0;
    CHECK(std::abs(analytic_c1(cfg, 1.0)) == 0.0);
    CHECK_THROWS_AS(analytic_c1(cfg, -1.0), ValidationError);
}

TEST_CASE("initial density is the input Gaussian")
{
    const auto cfg = reference_scattering_config();
    const auto& w = cfg.wavepacket;
    for (double x : {-2.0, -1.3, -1.0, -0.6, 0.0}) {
        const double z = w.zeta_in;
        const double expect =
            std::exp(-(x - w.x_in) * (x - w.x_in) / (2.0 * z * z)) / (std::sqrt(2.0 * std::numbers::pi) * z);
        CHECK(std::abs(analytic_density(cfg, x, 0.0) - expect) < 1e-10);
    }
}

TEST_CASE("without coupling the packet propagates freely")
{
    auto cfg = reference_scattering_config();
    cfg.Gamma = 0.0;
    cfg.wavepacket.Gamma = 0.0;
    for (auto [x, t] : {std::pair{0.0, 1.0}, std::pair{0.7, 1.5}, std::pair{-1.2, 0.4}}) {
        const cplx ref = testutil::packet_integral(cfg.wavepacket, [&](double p) {
                             return std::sqrt(cfg.wavepacket.g_in(p)) *
                                    std::exp(cplx{0.0, p * (x - cfg.wavepacket.x_in) - cfg.c * std::abs(p) * t});
                         }) /
                         std::sqrt(2.0 * std::numbers::pi);
        CHECK(std::abs(free_packet_amplitude(cfg, x, t) - ref) < 1e-10);
        CHECK(std::abs(analytic_density(cfg, x, t) - std::norm(ref)) < 1e-10);
    }
    // A narrow-band packet keeps its shape while it moves at speed c.
    auto narrow = cfg;
    narrow.wavepacket = make_wave_packet(-1.0, 40.0, 2.0, 1.0, 0.0);
    for (double t : {0.5, 1.5})
        for (double x : {-0.4, -0.1, 0.0, 0.3})
            CHECK(std::abs(analytic_density(narrow, x + t, t) - analytic_density(narrow, x, 0.0)) < 1e-10);
}

TEST_CASE("analytic density is non-negative and grid evaluation matches points")
{
    const auto cfg = reference_scattering_config();
    const std::vector<double> ts{0.5, 1.5};
    const std::vector<double> xs{-1.5, -0.3, 0.0, 0.8};
    const auto grid = analytic_density_grid(cfg, ts, xs);
    for (std::size_t i = 0; i < ts.size(); ++i)
        for (std::size_t j = 0; j < xs.size(); ++j) {
            CHECK(grid[i * xs.size() + j] >= 0.0);
            CHECK(grid[i * xs.size() + j] == analytic_density(cfg, xs[j], ts[i]));
        }
}

TEST_CASE("dephasing functions against quadrature")
{
    const cplx k = DEPH.kappa();
    const double l2 = DEPH.lambda0 * DEPH.lambda0;
    for (double t : {0.0, 1e-5, 1e-3, 0.3, 1.0, 4.0}) {
        const cplx fdot = complex_integral([&](double s) { return DEPH.lambda0 * std::exp(-k * s); }, 0.0, t);
        CHECK(std::abs(dephasing_fdot(DEPH, t) - fdot) < 1e-12);
        const cplx f = complex_integral(
            [&](double tau) {
                using G = boost::math::quadrature::gauss<double, 30>;
                return cplx{G::integrate([&](double s) { return (l2 * std::exp(-k * s)).real(); }, 0.0, tau),
                            G::integrate([&](double s) { return (l2 * std::exp(-k * s)).imag(); }, 0.0, tau)};
            },
            0.0, t);
        CHECK(std::abs(dephasing_f(DEPH, t) - f) < 1e-12);
        CHECK(std::abs(dephasing_g(DEPH, t) - std::norm(dephasing_fdot(DEPH, t))) < 1e-12);
    }
    CHECK_THROWS_AS(DephasingParams({1.0, 1.0, -1.0}).validate(), ValidationError);
}

TEST_CASE("dephasing dissipator")
{
    const auto rho = mixed_state();
    const auto s = pauli::z();
    const auto d = dephasing_dissipator(s, rho);
    const auto ref = cplx{2.0} * s * rho * s - s * s * rho - rho * s * s;
    CHECK(max_abs_diff(d, ref) < 1e-15);
}

TEST_CASE("dephased state")
{
    const ComplexMatrix h = cplx{0.6} * pauli::z();
    CHECK(max_abs_diff(dephasing_rho(DEPH, h, pauli::z(), mixed_state(), 0.0, false), mixed_state()) < 1e-15);
    CHECK(max_abs_diff(dephasing_rho(DEPH, h, pauli::z(), mixed_state(), 0.0, true), mixed_state()) < 1e-15);
    for (double t : {0.4, 2.0, 6.0}) {
        for (bool in : {false, true}) {
            const auto r = dephasing_rho(DEPH, h, pauli::z(), mixed_state(), t, in);
            CHECK(std::abs(r(0, 0) - mixed_state()(0, 0)) < 1e-12);
            CHECK(std::abs(r(1, 1) - mixed_state()(1, 1)) < 1e-12);
        }
        // sigma_z eigenvalues +-1: coherence decays by exp(-4 Re f) and rotates with H.
        const auto r = dephasing_rho(DEPH, h, pauli::z(), mixed_state(), t, false);
        const cplx expect = mixed_state()(0, 1) * std::exp(cplx{0.0, 1.2 * t}) * std::exp(-4.0 * dephasing_f(DEPH, t).real());
        CHECK(std::abs(r(0, 1) - expect) < 1e-12);
    }
    CHECK_THROWS_AS(dephasing_rho(DEPH, h, pauli::x(), mixed_state(), 1.0, false), ValidationError);
}

TEST_CASE("Fock simulation conserves trace and decouples at zero coupling")
{
    const ComplexMatrix h = cplx{0.5} * pauli::z();
    const std::vector<double> ts{0.5, 1.0, 3.0};
    DampedMode free_mode{1.0, 0.0, 0.5, pauli::x()};
    const auto r = fock_brute_force(h, {free_mode}, mixed_state(), 4, ts);
    for (std::size_t k = 0; k < ts.size(); ++k) {
        const auto expect = interaction_picture(mixed_state(), h, -ts[k]);
        CHECK(max_abs_diff(r.rho[k], expect) < 1e-9);
    }
    DampedMode mode{1.0, 0.5, 1.0, pauli::x()};
    const auto c = fock_brute_force(h, {mode, mode}, pauli::excited_projector(), 5, ts, 1e-4);
    for (const auto& rho : c.rho)
        CHECK(std::abs(rho.trace() - 1.0) < 1e-9);
    CHECK(c.convergence_defect < 1e-4);
}

TEST_CASE("single damped mode reproduces the dephasing closed form")
{
    const ComplexMatrix h = cplx{0.6} * pauli::z();
    const std::vector<double> ts{0.5, 1.5, 3.0};
    DampedMode mode{DEPH.Omega0, DEPH.lambda0, DEPH.Gamma0, pauli::z()};
    const auto bare = fock_brute_force(h, {mode}, mixed_state(), 12, ts, 1e-8);
    mode.initial_quanta = 1;
    const auto photon = fock_brute_force(h, {mode}, mixed_state(), 12, ts, 1e-8);
    for (std::size_t k = 0; k < ts.size(); ++k) {
        CHECK(max_abs_diff(bare.rho[k], dephasing_rho(DEPH, h, pauli::z(), mixed_state(), ts[k], false)) < 1e-7);
        CHECK(max_abs_diff(photon.rho[k], dephasing_rho(DEPH, h, pauli::z(), mixed_state(), ts[k], true)) < 1e-7);
    }
}

TEST_CASE("Fock simulation input validation")
{
    const ComplexMatrix h = cplx{0.5} * pauli::z();
    DampedMode mode{1.0, 0.5, 1.0, pauli::x()};
    CHECK_THROWS_AS(fock_brute_force(h, {mode}, mixed_state(), 1, {1.0}), ValidationError);
    CHECK_THROWS_AS(fock_brute_force(h, {mode, mode, mode, mode}, mixed_state(), 2, {1.0}), ValidationError);
    CHECK_THROWS_AS(fock_brute_force(h, {mode}, ComplexMatrix::identity(3), 4, {1.0}), ValidationError);
    DampedMode bad = mode;
    bad.system_operator = ComplexMatrix{{0.0, 1.0}, {0.0, 0.0}};
    CHECK_THROWS_AS(fock_brute_force(h, {bad}, mixed_state(), 4, {1.0}), ValidationError);
    // Strong coupling with a tiny cut does not converge.
    DampedMode strong{1.0, 3.0, 0.1, pauli::x()};
    CHECK_THROWS_AS(fock_brute_force(h, {strong}, pauli::excited_projector(), 2, {3.0}, 1e-6), SolverError);
}
