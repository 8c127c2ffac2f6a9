#include "iohoem/oracles.hpp"

#include "iohoem/errors.hpp"

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss.hpp>

#include <cmath>
#include <numbers>
#include <omp.h>

namespace iohoem {

namespace {

using Quad = boost::math::quadrature::gauss<double, 20>;

template <class F>
cplx panel_sum(const F& f, double a, double b, int panels)
{
    cplx total = 0.0;
    const double h = (b - a) / panels;
    for (int k = 0; k < panels; ++k) {
        const double lo = a + k * h;
        const double hi = k + 1 == panels ? b : lo + h;
        total += Quad::integrate(f, lo, hi);
    }
    return total;
}

// Integral over the packet support, split at the dispersion kink p = 0, with
// panel doubling until the change drops below the tolerance.
template <class F>
cplx packet_integral(const F& f, const WavePacketSpec& w, const QuadratureOptions& q)
{
    const double lo = w.p_in - q.half_width_sigmas * w.sigma_in;
    const double hi = w.p_in + q.half_width_sigmas * w.sigma_in;
    auto eval = [&](int panels) {
        if (lo < 0.0 && hi > 0.0) {
            const int left = std::max(1, static_cast<int>(std::lround(panels * (-lo) / (hi - lo))));
            const int right = std::max(1, panels - left);
            return panel_sum(f, lo, 0.0, left) + panel_sum(f, 0.0, hi, right);
        }
        return panel_sum(f, lo, hi, panels);
    };
    int panels = std::max(1, q.panels);
    cplx prev = eval(panels);
    for (int d = 0; d < q.max_doublings; ++d) {
        panels *= 2;
        const cplx next = eval(panels);
        if (std::abs(next - prev) <= q.tolerance * std::max(1.0, std::abs(next)))
            return next;
        prev = next;
    }
    throw SolverError("momentum quadrature did not converge");
}

void check_scattering(const ScatteringConfig& cfg)
{
    if (!(cfg.Gamma >= 0.0) || !(cfg.c > 0.0) || !(cfg.wavepacket.sigma_in > 0.0))
        throw ValidationError("scattering oracle: needs Gamma >= 0, c > 0 and sigma_in > 0");
}

}  // namespace

cplx analytic_c1(const ScatteringConfig& cfg, double t, const QuadratureOptions& q)
{
    check_scattering(cfg);
    if (!(t >= 0.0))
        throw ValidationError("analytic_c1: t must be non-negative");
    if (cfg.Gamma == 0.0 || !cfg.with_input || t == 0.0)
        return 0.0;
    const WavePacketSpec& w = cfg.wavepacket;
    const double g = std::sqrt(cfg.Gamma * cfg.c / (2.0 * std::numbers::pi));
    const cplx kappa{cfg.Gamma, cfg.omega_s};
    const cplx decay = std::exp(-kappa * t);
    auto f = [&](double p) {
        const double om = cfg.c * std::abs(p);
        const cplx amp = std::sqrt(w.g_in(p)) * std::exp(cplx{0.0, -p * w.x_in});
        return amp * (std::exp(cplx{0.0, -om * t}) - decay) / (kappa - I_UNIT * om);
    };
    return -I_UNIT * g * packet_integral(f, w, q);
}

cplx free_packet_amplitude(const ScatteringConfig& cfg, double x, double t, const QuadratureOptions& q)
{
    check_scattering(cfg);
    if (!cfg.with_input)
        return 0.0;
    const WavePacketSpec& w = cfg.wavepacket;
    auto f = [&](double p) {
        return std::sqrt(w.g_in(p)) * std::exp(cplx{0.0, p * (x - w.x_in) - cfg.c * std::abs(p) * t});
    };
    return packet_integral(f, w, q) / std::sqrt(2.0 * std::numbers::pi);
}

cplx analytic_amplitude(const ScatteringConfig& cfg, double x, double t, const QuadratureOptions& q)
{
    if (!(t >= 0.0))
        throw ValidationError("analytic_amplitude: t must be non-negative");
    cplx a = free_packet_amplitude(cfg, x, t, q);
    const double retarded = t - std::abs(x) / cfg.c;
    if (retarded > 0.0)
        a -= I_UNIT * std::sqrt(cfg.Gamma / cfg.c) * analytic_c1(cfg, retarded, q);
    return a;
}

double analytic_density(const ScatteringConfig& cfg, double x, double t_out, const QuadratureOptions& q)
{
    return std::norm(analytic_amplitude(cfg, x, t_out, q));
}

std::vector<double> analytic_density_grid(const ScatteringConfig& cfg, const std::vector<double>& t_outs,
                                          const std::vector<double>& xs, const QuadratureOptions& q)
{
    const std::size_t nx = xs.size();
    const auto total = static_cast<std::int64_t>(t_outs.size() * nx);
    std::vector<double> out(static_cast<std::size_t>(total));
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t k = 0; k < total; ++k) {
        try {
            const auto u = static_cast<std::size_t>(k);
            out[u] = analytic_density(cfg, xs[u % nx], t_outs[u / nx], q);
        } catch (...) {
#pragma omp critical
            if (!failure)
                failure = std::current_exception();
        }
    }
    if (failure)
        std::rethrow_exception(failure);
    return out;
}

// ---------------------------------------------------------------------------

void DephasingParams::validate() const
{
    if (!std::isfinite(lambda0) || !std::isfinite(Omega0) || !std::isfinite(Gamma0))
        throw ValidationError("dephasing parameters must be finite");
    if (!(Gamma0 >= 0.0))
        throw ValidationError("dephasing: Gamma0 must be non-negative");
    if (Gamma0 == 0.0 && Omega0 == 0.0)
        throw ValidationError("dephasing: Gamma0 and Omega0 cannot both vanish");
}

cplx dephasing_f(const DephasingParams& p, double t)
{
    p.validate();
    if (!(t >= 0.0))
        throw ValidationError("dephasing_f: t must be non-negative");
    const cplx k = p.kappa();
    const cplx kt = k * t;
    // Series for small kappa t avoids cancellation.
    if (std::abs(kt) < 1e-3) {
        const cplx s = kt * kt / 2.0 - kt * kt * kt / 6.0 + kt * kt * kt * kt / 24.0;
        return p.lambda0 * p.lambda0 * s / (k * k);
    }
    return p.lambda0 * p.lambda0 * (std::exp(-kt) - 1.0 + kt) / (k * k);
}

cplx dephasing_fdot(const DephasingParams& p, double t)
{
    p.validate();
    if (!(t >= 0.0))
        throw ValidationError("dephasing_fdot: t must be non-negative");
    const cplx kt = p.kappa() * t;
    if (std::abs(kt) < 1e-3)
        return p.lambda0 * t * (1.0 - kt / 2.0 + kt * kt / 6.0 - kt * kt * kt / 24.0);
    return p.lambda0 * (1.0 - std::exp(-kt)) / p.kappa();
}

double dephasing_g(const DephasingParams& p, double t)
{
    p.validate();
    if (!(t >= 0.0))
        throw ValidationError("dephasing_g: t must be non-negative");
    const cplx e1 = std::exp(cplx{-p.Gamma0 * t, -p.Omega0 * t});
    const cplx e2 = std::exp(cplx{-p.Gamma0 * t, p.Omega0 * t});
    const cplx v = p.lambda0 * p.lambda0 * (1.0 - e1) * (1.0 - e2) / (p.Omega0 * p.Omega0 + p.Gamma0 * p.Gamma0);
    return v.real();
}

ComplexMatrix dephasing_dissipator(const ComplexMatrix& s, const ComplexMatrix& rho)
{
    const ComplexMatrix s2 = s * s;
    return cplx{2.0} * (s * rho * s) - s2 * rho - rho * s2;
}

ComplexMatrix dephasing_rho(const DephasingParams& p, const ComplexMatrix& h_s, const ComplexMatrix& s,
                            const ComplexMatrix& rho0, double t, bool with_input)
{
    p.validate();
    const std::size_t d = h_s.rows();
    if (!h_s.square() || s.rows() != d || s.cols() != d || rho0.rows() != d || rho0.cols() != d)
        throw ValidationError("dephasing_rho: dimension mismatch");
    if (!s.is_hermitian(1e-12))
        throw ValidationError("dephasing_rho: coupling must be hermitian");
    const double scale = std::max({1.0, h_s.max_abs(), s.max_abs()});
    if ((h_s * s - s * h_s).max_abs() > 1e-12 * scale * scale)
        throw ValidationError("dephasing_rho: coupling does not commute with the system Hamiltonian");
    if (!(t >= 0.0))
        throw ValidationError("dephasing_rho: t must be non-negative");

    Eigen::MatrixXcd se(d, d), r(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            se(i, j) = s(i, j);
            r(i, j) = rho0(i, j);
        }
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(se);
    const Eigen::MatrixXcd& u = eig.eigenvectors();
    const Eigen::VectorXd& ev = eig.eigenvalues();
    Eigen::MatrixXcd rb = u.adjoint() * r * u;
    const cplx f = dephasing_f(p, t);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            const double si = ev(i), sj = ev(j);
            rb(i, j) *= std::exp(f * (si * sj - si * si) + std::conj(f) * (si * sj - sj * sj));
        }
    const Eigen::MatrixXcd rs = u * rb * u.adjoint();
    ComplexMatrix out(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            out(i, j) = rs(i, j);
    // Free rotation e^{-i H t} rho e^{i H t}; it commutes with the dephasing map.
    out = interaction_picture(out, h_s, -t);
    if (with_input)
        out += cplx{dephasing_g(p, t)} * dephasing_dissipator(s, out);
    return out;
}

// ---------------------------------------------------------------------------

namespace {

Eigen::MatrixXcd to_eigen(const ComplexMatrix& m)
{
    Eigen::MatrixXcd e(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            e(i, j) = m(i, j);
    return e;
}

Eigen::MatrixXcd ekron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b)
{
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

std::vector<ComplexMatrix> fock_run(const ComplexMatrix& h_s, const std::vector<DampedMode>& modes,
                                    const ComplexMatrix& rho0, int cut, const std::vector<double>& t_grid,
                                    const OdeOptions& opts)
{
    const auto ds = static_cast<Eigen::Index>(h_s.rows());
    const Eigen::Index levels = cut + 1;
    Eigen::Index dm = 1;
    for (std::size_t k = 0; k < modes.size(); ++k)
        dm *= levels;
    const Eigen::Index dim = ds * dm;

    Eigen::MatrixXcd a1 = Eigen::MatrixXcd::Zero(levels, levels);
    for (Eigen::Index n = 1; n < levels; ++n)
        a1(n - 1, n) = std::sqrt(static_cast<double>(n));
    const Eigen::MatrixXcd id_s = Eigen::MatrixXcd::Identity(ds, ds);

    Eigen::MatrixXcd h = ekron(to_eigen(h_s), Eigen::MatrixXcd::Identity(dm, dm));
    std::vector<Eigen::MatrixXcd> jumps;
    std::vector<double> rates;
    for (std::size_t k = 0; k < modes.size(); ++k) {
        // Mode k occupies factor k after the system.
        Eigen::MatrixXcd ak = Eigen::MatrixXcd::Identity(1, 1);
        for (std::size_t m = 0; m < modes.size(); ++m)
            ak = ekron(ak, m == k ? a1 : Eigen::MatrixXcd::Identity(levels, levels));
        const Eigen::MatrixXcd a = ekron(id_s, ak);
        const Eigen::MatrixXcd s = ekron(to_eigen(modes[k].system_operator), Eigen::MatrixXcd::Identity(dm, dm));
        h += modes[k].frequency * (a.adjoint() * a) + modes[k].coupling * s * (a + a.adjoint());
        if (modes[k].decay > 0.0) {
            jumps.push_back(a);
            rates.push_back(modes[k].decay);
        }
    }

    Eigen::Index m0 = 0;
    for (const auto& m : modes)
        m0 = m0 * levels + m.initial_quanta;
    Eigen::MatrixXcd r0 = Eigen::MatrixXcd::Zero(dim, dim);
    for (Eigen::Index i = 0; i < ds; ++i)
        for (Eigen::Index j = 0; j < ds; ++j)
            r0(i * dm + m0, j * dm + m0) = rho0(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    StateVector y0(static_cast<std::size_t>(dim * dim));
    Eigen::Map<Eigen::MatrixXcd>(y0.data(), dim, dim) = r0;

    const RhsFn f = [&](double, const cplx* x, cplx* dy) {
        const Eigen::Map<const Eigen::MatrixXcd> r(x, dim, dim);
        Eigen::Map<Eigen::MatrixXcd> out(dy, dim, dim);
        out = -I_UNIT * (h * r - r * h);
        for (std::size_t k = 0; k < jumps.size(); ++k) {
            const Eigen::MatrixXcd& a = jumps[k];
            const Eigen::MatrixXcd n = a.adjoint() * a;
            out += rates[k] * (2.0 * a * r * a.adjoint() - n * r - r * n);
        }
    };
    const auto raw = integrate_ode(f, y0, 0.0, t_grid, {}, opts);

    std::vector<ComplexMatrix> out;
    out.reserve(raw.size());
    for (const auto& v : raw) {
        const Eigen::Map<const Eigen::MatrixXcd> r(v.data(), dim, dim);
        ComplexMatrix rs(static_cast<std::size_t>(ds), static_cast<std::size_t>(ds));
        for (Eigen::Index i = 0; i < ds; ++i)
            for (Eigen::Index j = 0; j < ds; ++j) {
                cplx acc = 0.0;
                for (Eigen::Index m = 0; m < dm; ++m)
                    acc += r(i * dm + m, j * dm + m);
                rs(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = acc;
            }
        out.push_back(rs);
    }
    return out;
}

}  // namespace

FockResult fock_brute_force(const ComplexMatrix& h_s, const std::vector<DampedMode>& modes, const ComplexMatrix& rho0,
                            int fock_cut, const std::vector<double>& t_grid, double convergence_tol,
                            const OdeOptions& opts)
{
    if (!h_s.square() || h_s.rows() == 0 || !h_s.is_hermitian(1e-12))
        throw ValidationError("fock_brute_force: system Hamiltonian must be hermitian");
    if (rho0.rows() != h_s.rows() || rho0.cols() != h_s.rows())
        throw ValidationError("fock_brute_force: initial state dimension mismatch");
    if (fock_cut < 2)
        throw ValidationError("fock_brute_force: fock_cut must be at least 2");
    if (modes.size() > 3)
        throw ValidationError("fock_brute_force: at most 3 modes are supported");
    for (const auto& m : modes) {
        if (m.system_operator.rows() != h_s.rows() || m.system_operator.cols() != h_s.rows() ||
            !m.system_operator.is_hermitian(1e-12))
            throw ValidationError("fock_brute_force: mode coupling operator must be hermitian with system dimension");
        if (!(m.decay >= 0.0))
            throw ValidationError("fock_brute_force: mode decay must be non-negative");
        if (m.initial_quanta < 0 || m.initial_quanta > fock_cut)
            throw ValidationError("fock_brute_force: initial quanta outside the truncated basis");
    }
    FockResult res;
    res.rho = fock_run(h_s, modes, rho0, fock_cut, t_grid, opts);
    if (convergence_tol >= 0.0) {
        const auto finer = fock_run(h_s, modes, rho0, fock_cut + 2, t_grid, opts);
        for (std::size_t k = 0; k < finer.size(); ++k)
            res.convergence_defect = std::max(res.convergence_defect, trace_distance(res.rho[k], finer[k]));
        if (res.convergence_defect > convergence_tol)
            throw SolverError("fock_brute_force: truncation not converged (defect " +
                              std::to_string(res.convergence_defect) + ")");
    }
    return res;
}

}  // namespace iohoem
