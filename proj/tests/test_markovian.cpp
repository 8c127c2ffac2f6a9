#include "iohoem/errors.hpp"
#include "iohoem/markovian.hpp"
#include "iohoem/oracles.hpp"
#include "quadrature.hpp"
#include "test_util.hpp"

#include <doctest.h>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <numbers>

using namespace iohoem;

namespace {

std::vector<double> linspace(double a, double b, int n)
{
    std::vector<double> v;
    for (int i = 0; i < n; ++i)
        v.push_back(a + (b - a) * i / (n - 1));
    return v;
}

// Block (a, b, i, j) of a 64-entry vector laid out as in the generator.
ComplexMatrix block(const InOutVector& v, int a, int b, int i, int j) { return inout_block_matrix(v, a, b, i, j); }

// Free packet density |int dp sqrt(g) e^{ip(x - x_in) - i c|p| t}|^2 / 2 pi.
double free_density(const WavePacketSpec& w, double x, double t)
{
    const cplx v = testutil::packet_integral(w, [&](double p) {
        return std::sqrt(w.g_in(p)) * std::exp(cplx{0.0, p * (x - w.x_in) - w.c * std::abs(p) * t});
    });
    return std::norm(v) / (2.0 * std::numbers::pi);
}

}  // namespace

TEST_CASE("reference configuration")
{
    const auto cfg = reference_scattering_config();
    CHECK(cfg.omega_s == doctest::Approx(4.5));
    CHECK(cfg.Gamma == doctest::Approx(1.8));
    CHECK(cfg.wavepacket.p_in == doctest::Approx(4.5));
    CHECK(cfg.wavepacket.sigma_in == doctest::Approx(2.25));
    CHECK(cfg.wavepacket.x_in == -1.0);
    CHECK_NOTHROW(cfg.validate());
    auto bad = cfg;
    bad.dx = 0.0;
    CHECK_THROWS_AS(bad.validate(), ValidationError);
    bad = cfg;
    bad.Gamma = -1.0;
    CHECK_THROWS_AS(bad.validate(), ValidationError);
}

TEST_CASE("Lindblad generator")
{
    auto cfg = reference_scattering_config();
    cfg.Gamma = 0.0;
    const auto h = emitter_hamiltonian(cfg);
    CHECK(max_abs_diff(lindblad_l0(cfg).matrix, (cplx{0.0, -1.0} * commutator_super(h)).matrix) < 1e-15);

    cfg.Gamma = 0.3;
    const auto l0 = testutil::to_eigen(lindblad_l0(cfg).matrix);
    for (double t : {0.2, 1.0, 3.0}) {
        const Eigen::MatrixXcd prop = (l0 * t).exp();
        const auto rho = unvec(std::vector<cplx>(prop.col(3).data(), prop.col(3).data() + 4), 2);
        CHECK(std::abs(rho(1, 1) - std::exp(-2.0 * cfg.Gamma * t)) < 1e-12);
        CHECK(std::abs(rho.trace() - 1.0) < 1e-12);
    }
    const auto g = lindblad_l0(cfg).apply(pauli::ground_projector());
    CHECK(g.max_abs() < 1e-15);
}

TEST_CASE("input drive")
{
    auto cfg = reference_scattering_config();
    for (int sign : {1, -1}) {
        const auto d = drive_in(cfg, sign, 0.4);
        const cplx om = testutil::omega_in_quadrature(cfg.wavepacket, sign, 0.4);
        const ComplexMatrix s = sign > 0 ? pauli::raise() : pauli::lower();
        const auto expect = cplx{0.0, -1.0} * om * commutator_super(s);
        CHECK(max_abs_diff(d.matrix, expect.matrix) < 1e-8);
    }
    // Late times: the kink of |p| at p = 0 leaves a slowly decaying tail.
    const cplx late = testutil::omega_in_quadrature(cfg.wavepacket, 1, 30.0);
    const auto late_expect = cplx{0.0, -1.0} * late * commutator_super(pauli::raise());
    CHECK(max_abs_diff(drive_in(cfg, 1, 30.0).matrix, late_expect.matrix) < 1e-8);
    CHECK(std::abs(late) < 0.05 * std::abs(testutil::omega_in_quadrature(cfg.wavepacket, 1, 0.4)));
    auto off = cfg;
    off.Gamma = 0.0;
    off.wavepacket.Gamma = 0.0;
    CHECK(drive_in(off, 1, 0.5).matrix.max_abs() == 0.0);
}

TEST_CASE("in-out generator structure")
{
    const auto cfg = reference_scattering_config();
    const auto gen = build_in_out_generator(cfg, 0.7);
    const auto l0 = lindblad_l0(cfg).matrix;
    auto flags = [](std::size_t blk) {
        const int in = static_cast<int>(blk / 4), out = static_cast<int>(blk % 4);
        return std::array<int, 4>{in % 2, in / 2, out % 2, out / 2};
    };
    for (std::size_t r = 0; r < INOUT_BLOCKS; ++r)
        for (std::size_t c = 0; c < INOUT_BLOCKS; ++c) {
            double mag = 0.0;
            for (std::size_t i = 0; i < 4; ++i)
                for (std::size_t j = 0; j < 4; ++j) {
                    const cplx v = gen(4 * r + i, 4 * c + j);
                    mag = std::max(mag, std::abs(r == c ? v - l0(i, j) : v));
                }
            const auto fr = flags(r), fc = flags(c);
            const bool raises_a = fr[0] == 1 && fc[0] == 0 && fr[1] == fc[1] && fr[2] == fc[2] && fr[3] == fc[3];
            const bool raises_b = fr[1] == 1 && fc[1] == 0 && fr[0] == fc[0] && fr[2] == fc[2] && fr[3] == fc[3];
            if (!raises_a && !raises_b)
                CHECK(mag == 0.0);
        }

    auto off = cfg;
    off.with_input = false;
    const auto free = build_in_out_generator(off, 0.7);
    for (std::size_t r = 0; r < INOUT_SIZE; ++r)
        for (std::size_t c = 0; c < INOUT_SIZE; ++c) {
            const cplx expect = (r / 4 == c / 4) ? l0(r % 4, c % 4) : cplx{};
            CHECK(free(r, c) == expect);
        }
}

TEST_CASE("kick operator")
{
    const auto m = testutil::to_eigen(kick_generator());
    CHECK((m * m * m).norm() == 0.0);
    auto cfg = reference_scattering_config();
    cfg.t_out = 1.0;
    const double s = std::sqrt(cfg.Gamma * cfg.dx / cfg.c);
    const Eigen::MatrixXcd ref = (cplx{s} * m).exp();
    const auto full = kick_operator(cfg, 0.5);
    CHECK((testutil::to_eigen(full) - ref).cwiseAbs().maxCoeff() < 1e-13);

    const auto half = testutil::to_eigen(kick_operator(cfg, 0.0));
    CHECK((half * half - ref).cwiseAbs().maxCoeff() < 1e-13);
    CHECK((half - (cplx{0.5 * s} * m).exp()).cwiseAbs().maxCoeff() < 1e-13);

    auto tiny = cfg;
    tiny.dx = 1e-300;
    CHECK((testutil::to_eigen(kick_operator(tiny, 0.5)) - Eigen::MatrixXcd::Identity(64, 64)).cwiseAbs().maxCoeff() <
          1e-140);
}

TEST_CASE("initial in-out vector")
{
    const auto v = inout_initial(pauli::excited_projector());
    CHECK(max_abs_diff(block(v, 0, 0, 0, 0), pauli::excited_projector()) == 0.0);
    for (std::size_t b = 1; b < INOUT_BLOCKS; ++b)
        for (std::size_t e = 0; e < 4; ++e)
            CHECK(v[4 * b + e] == cplx{});
    CHECK_THROWS_AS(inout_initial(ComplexMatrix{{0.5, 1.0}, {0.0, 0.5}}), ValidationError);
    CHECK_THROWS_AS(inout_initial(ComplexMatrix{{1.0, 0.0}, {0.0, 1.0}}), ValidationError);
}

TEST_CASE("root block follows the Lindblad evolution alone")
{
    auto cfg = reference_scattering_config();
    cfg.t_out = 1.3;
    cfg.x_out = 0.2;
    const ComplexMatrix rho0{{0.4, cplx{0.1, 0.2}}, {cplx{0.1, -0.2}, 0.6}};
    const auto traj = solve_scattering(cfg, rho0, {0.5, 1.3});
    const auto l0 = testutil::to_eigen(lindblad_l0(cfg).matrix);
    const auto v0 = vec(rho0);
    Eigen::VectorXcd x0(4);
    for (int i = 0; i < 4; ++i)
        x0(i) = v0[static_cast<std::size_t>(i)];
    for (auto [k, t] : {std::pair{0, 0.5}, std::pair{1, 1.3}}) {
        const Eigen::VectorXcd e = (l0 * t).exp() * x0;
        const auto got = block(traj[static_cast<std::size_t>(k)], 0, 0, 0, 0);
        for (int i = 0; i < 4; ++i)
            CHECK(std::abs(got(static_cast<std::size_t>(i % 2), static_cast<std::size_t>(i / 2)) - e(i)) < 1e-9);
    }
}

TEST_CASE("hermiticity pairing along the trajectory")
{
    auto cfg = reference_scattering_config();
    cfg.t_out = 2.0;
    cfg.x_out = 0.5;
    const auto traj = solve_scattering(cfg, pauli::ground_projector(), {0.5, 1.0, 1.5, 2.0});
    for (const auto& v : traj) {
        CHECK(hermiticity_defect(v) < 1e-9);
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                for (int i = 0; i < 2; ++i)
                    for (int j = 0; j < 2; ++j) {
                        const double sign = ((a + b + i + j) % 2) ? -1.0 : 1.0;
                        CHECK(max_abs_diff(block(v, a, b, i, j), sign * block(v, b, a, j, i).adjoint()) < 1e-9);
                    }
    }
}

TEST_CASE("no input packet gives the spontaneous emission profile")
{
    auto cfg = reference_scattering_config();
    cfg.with_input = false;
    const auto ts = std::vector<double>{1.0, 1.5};
    const auto xs = std::vector<double>{-0.4, 0.0, 0.3, 0.9, 1.2, 2.0};
    const auto d = markov_density_grid_serial(cfg, pauli::excited_projector(), ts, xs);
    for (std::size_t i = 0; i < ts.size(); ++i)
        for (std::size_t j = 0; j < xs.size(); ++j) {
            const double tstar = ts[i] - std::abs(xs[j]) / cfg.c;
            const double expect = tstar < 0.0 ? 0.0 : cfg.Gamma / cfg.c * std::exp(-2.0 * cfg.Gamma * tstar);
            CHECK(std::abs(d[i * xs.size() + j] - expect) < 1e-8);
        }
    const auto ground = markov_density_grid_serial(cfg, pauli::ground_projector(), ts, xs);
    for (double v : ground)
        CHECK(std::abs(v) < 1e-14);
}

TEST_CASE("causality: outside the light cone only the free packet is seen")
{
    auto cfg = reference_scattering_config();
    for (auto [t, x] : {std::pair{0.5, -0.8}, std::pair{1.0, 1.5}, std::pair{0.2, -0.3}}) {
        const auto d = markov_density_grid_serial(cfg, pauli::ground_projector(), {t}, {x});
        CHECK(std::abs(d[0] - free_density(cfg.wavepacket, x, t)) < 1e-8);
    }
}

TEST_CASE("decoupled limit transmits the packet unchanged")
{
    auto cfg = reference_scattering_config();
    cfg.Gamma = 1e-12;
    cfg.wavepacket = make_wave_packet(-1.0, 4.5, 2.25, 1.0, cfg.Gamma);
    for (auto [t, x] : {std::pair{1.0, 0.0}, std::pair{1.5, 0.6}, std::pair{2.0, 1.1}}) {
        const auto d = markov_density_grid_serial(cfg, pauli::ground_projector(), {t}, {x});
        CHECK(std::abs(d[0] - free_density(cfg.wavepacket, x, t)) < 1e-8);
    }
}

TEST_CASE("Markovian density agrees with the analytic scattering solution")
{
    const auto cfg = reference_scattering_config();
    const auto ts = std::vector<double>{0.0, 0.75, 1.25, 2.0};
    const auto xs = linspace(-2.0, 2.0, 17);
    const auto m = markov_density_grid(cfg, pauli::ground_projector(), ts, xs);
    const auto a = analytic_density_grid(cfg, ts, xs);
    double peak = 0.0, diff = 0.0;
    for (std::size_t k = 0; k < m.size(); ++k) {
        peak = std::max(peak, a[k]);
        diff = std::max(diff, std::abs(m[k] - a[k]));
        CHECK(m[k] >= -1e-8);
    }
    CHECK(diff / peak < 1e-6);
}

TEST_CASE("parallel and serial density grids agree")
{
    const auto cfg = reference_scattering_config();
    const auto ts = std::vector<double>{0.5, 1.5};
    const auto xs = linspace(-1.0, 1.0, 9);
    const auto p = markov_density_grid(cfg, pauli::ground_projector(), ts, xs);
    const auto s = markov_density_grid_serial(cfg, pauli::ground_projector(), ts, xs);
    REQUIRE(p.size() == s.size());
    for (std::size_t k = 0; k < p.size(); ++k)
        CHECK(p[k] == s[k]);
}

TEST_CASE("excitation bookkeeping on a wide grid")
{
    auto excitation_sum = [](const ScatteringConfig& cfg, double t) {
        std::vector<double> xs;
        for (int k = -200; k <= 200; ++k)
            xs.push_back(k * cfg.dx);
        const auto d = markov_density_grid(cfg, pauli::ground_projector(), {t}, xs);
        double total = 0.0;
        for (double v : d)
            total += v * cfg.dx;
        return total + std::norm(analytic_c1(cfg, t));
    };
    const auto cfg = reference_scattering_config();
    CHECK(std::abs(excitation_sum(cfg, 0.0) - 1.0) < 1e-6);
    // Transient deficit of the Markov description, gone once the pulse has passed.
    CHECK(std::abs(excitation_sum(cfg, 1.0) - 1.0) < 5e-2);
    CHECK(std::abs(excitation_sum(cfg, 4.0) - 1.0) < 1e-2);
    auto weak = cfg;
    weak.Gamma = 0.01 * cfg.Gamma;
    weak.wavepacket.Gamma = weak.Gamma;
    for (double t : {1.0, 2.0, 4.0})
        CHECK(std::abs(excitation_sum(weak, t) - 1.0) < 2e-3);
}

TEST_CASE("observable and solver errors")
{
    InOutVector v{};
    CHECK(observable_expectation(v, 0.0) == 0.0);
    v[inout_block(1, 0, 0, 1) * 4] = cplx{0.0, 1.0};
    CHECK_THROWS_AS(observable_expectation(v, 1.0), SolverError);
    auto cfg = reference_scattering_config();
    CHECK_THROWS_AS(solve_scattering(cfg, ComplexMatrix::identity(3)), ValidationError);
    CHECK_THROWS_AS(drive_in(cfg, 1, -1.0), ValidationError);
}
