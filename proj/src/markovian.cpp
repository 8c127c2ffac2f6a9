#include "iohoem/markovian.hpp"

#include "iohoem/errors.hpp"

#include <algorithm>
#include <cmath>
#include <omp.h>

namespace iohoem {

void ScatteringConfig::validate() const
{
    auto finite = [](double v) { return std::isfinite(v); };
    if (!finite(omega_s))
        throw ValidationError("scattering: omega_s must be finite");
    if (!(Gamma > 0.0) || !finite(Gamma))
        throw ValidationError("scattering: Gamma must be positive");
    if (!(c > 0.0) || !finite(c))
        throw ValidationError("scattering: c must be positive");
    if (!(t_out >= 0.0) || !finite(t_out))
        throw ValidationError("scattering: t_out must be non-negative");
    if (!(dx > 0.0) || !finite(dx))
        throw ValidationError("scattering: dx must be positive");
    if (!finite(x_out))
        throw ValidationError("scattering: x_out must be finite");
    if (with_input && !(wavepacket.sigma_in > 0.0))
        throw ValidationError("scattering: sigma_in must be positive");
}

ScatteringConfig reference_scattering_config(double x_in, double c, double dx)
{
    if (!(x_in < 0.0))
        throw ValidationError("reference configuration needs x_in < 0");
    ScatteringConfig cfg;
    cfg.c = c;
    cfg.omega_s = 4.5 * c / std::abs(x_in);
    cfg.Gamma = 0.4 * cfg.omega_s;
    const double p_in = cfg.omega_s / c;
    cfg.wavepacket = make_wave_packet(x_in, p_in, p_in / 2.0, c, cfg.Gamma);
    cfg.dx = dx;
    return cfg;
}

ComplexMatrix inout_block_matrix(const InOutVector& v, int a, int b, int i, int j)
{
    const std::size_t base = inout_block(a, b, i, j) * 4;
    return unvec(std::vector<cplx>(v.begin() + static_cast<std::ptrdiff_t>(base),
                                   v.begin() + static_cast<std::ptrdiff_t>(base + 4)),
                 2);
}

InOutVector inout_initial(const ComplexMatrix& rho0)
{
    if (rho0.rows() != 2 || rho0.cols() != 2)
        throw ValidationError("scattering: rho0 must be 2x2");
    if (!rho0.is_hermitian(1e-10) || std::abs(rho0.trace() - 1.0) > 1e-10)
        throw ValidationError("scattering: rho0 must be hermitian with unit trace");
    InOutVector v{};
    const auto r = vec(rho0);
    std::copy(r.begin(), r.end(), v.begin());
    return v;
}

ComplexMatrix emitter_hamiltonian(const ScatteringConfig& cfg) { return cplx{cfg.omega_s} * pauli::excited_projector(); }

SuperOperator lindblad_l0(const ScatteringConfig& cfg)
{
    return commutator_super(emitter_hamiltonian(cfg)) * (-I_UNIT) + dissipator_super(pauli::lower()) * cfg.Gamma;
}

namespace {

WavePacketSpec packet_of(const ScatteringConfig& cfg)
{
    WavePacketSpec w = cfg.wavepacket;
    w.c = cfg.c;
    w.Gamma = cfg.Gamma;
    return w;
}

// Superoperators -i[sigma_+, .] and -i[sigma_-, .] (without Omega).
struct DriveOps {
    ComplexMatrix plus = (commutator_super(pauli::raise()) * (-I_UNIT)).matrix;
    ComplexMatrix minus = (commutator_super(pauli::lower()) * (-I_UNIT)).matrix;
};

const DriveOps& drive_ops()
{
    static const DriveOps ops;
    return ops;
}

void add_block(ComplexMatrix& g, std::size_t row_block, std::size_t col_block, const ComplexMatrix& m, cplx s)
{
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c)
            g(row_block * 4 + r, col_block * 4 + c) += s * m(r, c);
}

// y = L0 on every block plus input drives.
void inout_rhs(const ComplexMatrix& l0, cplx om_plus, cplx om_minus, const cplx* x, cplx* y)
{
    const auto& ops = drive_ops();
    auto mul = [](const ComplexMatrix& m, const cplx* in, cplx* out, cplx s) {
        for (std::size_t r = 0; r < 4; ++r) {
            cplx acc = 0.0;
            for (std::size_t c = 0; c < 4; ++c)
                acc += m(r, c) * in[c];
            out[r] += s * acc;
        }
    };
    std::fill(y, y + INOUT_SIZE, cplx{});
    for (int b = 0; b < 2; ++b)
        for (int a = 0; a < 2; ++a)
            for (int j = 0; j < 2; ++j)
                for (int i = 0; i < 2; ++i) {
                    const std::size_t blk = inout_block(a, b, i, j);
                    mul(l0, x + blk * 4, y + blk * 4, 1.0);
                    if (a == 1)
                        mul(ops.plus, x + inout_block(0, b, i, j) * 4, y + blk * 4, om_plus);
                    if (b == 1)
                        mul(ops.minus, x + inout_block(a, 0, i, j) * 4, y + blk * 4, om_minus);
                }
}

}  // namespace

SuperOperator drive_in(const ScatteringConfig& cfg, int sign, double t)
{
    const WavePacketSpec w = packet_of(cfg);
    const cplx om = cfg.with_input ? omega_in(w, sign, t) : cplx{};
    const ComplexMatrix& s = sign > 0 ? drive_ops().plus : drive_ops().minus;
    return SuperOperator(2, om * s);
}

ComplexMatrix build_in_out_generator(const ScatteringConfig& cfg, double t)
{
    cfg.validate();
    const ComplexMatrix l0 = lindblad_l0(cfg).matrix;
    const ComplexMatrix dp = drive_in(cfg, 1, t).matrix;
    const ComplexMatrix dm = drive_in(cfg, -1, t).matrix;
    ComplexMatrix g(INOUT_SIZE, INOUT_SIZE);
    for (int b = 0; b < 2; ++b)
        for (int a = 0; a < 2; ++a)
            for (int j = 0; j < 2; ++j)
                for (int i = 0; i < 2; ++i) {
                    const std::size_t blk = inout_block(a, b, i, j);
                    add_block(g, blk, blk, l0, 1.0);
                    if (a == 1)
                        add_block(g, blk, inout_block(0, b, i, j), dp, 1.0);
                    if (b == 1)
                        add_block(g, blk, inout_block(a, 0, i, j), dm, 1.0);
                }
    return g;
}

ComplexMatrix kick_generator()
{
    const ComplexMatrix lower_left = left_mul_super(pauli::lower()).matrix;
    const ComplexMatrix raise_right = right_mul_super(pauli::raise()).matrix;
    ComplexMatrix m(INOUT_SIZE, INOUT_SIZE);
    for (int b = 0; b < 2; ++b)
        for (int a = 0; a < 2; ++a)
            for (int j = 0; j < 2; ++j)
                for (int i = 0; i < 2; ++i) {
                    const std::size_t blk = inout_block(a, b, i, j);
                    if (j == 1)
                        add_block(m, blk, inout_block(a, b, i, 0), lower_left, 1.0);
                    if (i == 1)
                        add_block(m, blk, inout_block(a, b, 0, j), raise_right, -1.0);
                }
    return m;
}

ComplexMatrix kick_operator(const ScatteringConfig& cfg, double t_star)
{
    cfg.validate();
    if (!(t_star >= 0.0) || t_star > cfg.t_out)
        throw ValidationError("kick_operator: t_star must lie in [0, t_out]");
    const double weight = (t_star == 0.0 && cfg.t_out > 0.0) ? 0.5 : 1.0;
    const double s = weight * std::sqrt(cfg.Gamma * cfg.dx / cfg.c);
    const ComplexMatrix m = kick_generator();
    const ComplexMatrix m2 = m * m;
    return ComplexMatrix::identity(INOUT_SIZE) + cplx{s} * m + cplx{0.5 * s * s} * m2;
}

std::vector<InOutVector> solve_scattering(const ScatteringConfig& cfg, const ComplexMatrix& rho0,
                                          std::vector<double> t_grid, const OdeOptions& opts, OdeStats* stats)
{
    cfg.validate();
    if (t_grid.empty())
        t_grid = {cfg.t_out};
    if (t_grid.back() < cfg.t_out)
        throw ValidationError("solve_scattering: time grid must reach t_out");
    const InOutVector init = inout_initial(rho0);
    const ComplexMatrix l0 = lindblad_l0(cfg).matrix;
    const WavePacketSpec w = packet_of(cfg);
    const bool input = cfg.with_input;

    std::vector<OdeEvent> events;
    for (const auto& k : omega_out_kick_times(cfg.x_out, cfg.t_out, cfg.c)) {
        const ComplexMatrix kick = kick_operator(cfg, k.time);
        events.push_back({k.time, [kick](StateVector& y) { y = kick * y; }});
    }

    const RhsFn f = [&](double t, const cplx* x, cplx* y) {
        const cplx op = input ? omega_in(w, 1, t) : cplx{};
        const cplx om = input ? omega_in(w, -1, t) : cplx{};
        inout_rhs(l0, op, om, x, y);
    };
    const auto raw = integrate_ode(f, StateVector(init.begin(), init.end()), 0.0, t_grid, std::move(events), opts,
                                   stats);
    std::vector<InOutVector> out(raw.size());
    for (std::size_t k = 0; k < raw.size(); ++k)
        std::copy(raw[k].begin(), raw[k].end(), out[k].begin());
    return out;
}

double observable_expectation(const InOutVector& psi, cplx overlap, double imag_tol)
{
    auto tr = [&](int a, int b, int i, int j) { return inout_block_matrix(psi, a, b, i, j).trace(); };
    const cplx value = std::norm(overlap) * tr(0, 0, 0, 0) + tr(1, 1, 1, 1) - tr(0, 0, 1, 1) -
                       overlap * tr(1, 0, 0, 1) - std::conj(overlap) * tr(0, 1, 1, 0);
    if (std::abs(value.imag()) > imag_tol)
        throw SolverError("observable has imaginary residue " + std::to_string(value.imag()));
    return value.real();
}

double hermiticity_defect(const InOutVector& psi)
{
    double worst = 0.0;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) {
                    const double sign = ((a + b + i + j) % 2 == 0) ? 1.0 : -1.0;
                    const ComplexMatrix lhs = inout_block_matrix(psi, a, b, i, j);
                    const ComplexMatrix rhs = cplx{sign} * inout_block_matrix(psi, b, a, j, i).adjoint();
                    worst = std::max(worst, max_abs_diff(lhs, rhs));
                }
    return worst;
}

namespace {

double density_point(const ScatteringConfig& base, const ComplexMatrix& rho0, double t_out, double x,
                     const OdeOptions& opts)
{
    ScatteringConfig cfg = base;
    cfg.t_out = t_out;
    cfg.x_out = x;
    const auto traj = solve_scattering(cfg, rho0, {t_out}, opts);
    const cplx ov = cfg.with_input ? free_field_overlap(packet_of(cfg), OutputProfile{cfg.dx}, x, t_out) : cplx{};
    return observable_expectation(traj.back(), ov) / cfg.dx;
}

}  // namespace

std::vector<double> markov_density_grid(const ScatteringConfig& base, const ComplexMatrix& rho0,
                                        const std::vector<double>& t_outs, const std::vector<double>& xs,
                                        const OdeOptions& opts)
{
    base.validate();
    const std::size_t nx = xs.size();
    const auto total = static_cast<std::int64_t>(t_outs.size() * nx);
    std::vector<double> out(static_cast<std::size_t>(total));
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t k = 0; k < total; ++k) {
        try {
            const auto u = static_cast<std::size_t>(k);
            out[u] = density_point(base, rho0, t_outs[u / nx], xs[u % nx], opts);
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

std::vector<double> markov_density_grid_serial(const ScatteringConfig& base, const ComplexMatrix& rho0,
                                               const std::vector<double>& t_outs, const std::vector<double>& xs,
                                               const OdeOptions& opts)
{
    base.validate();
    std::vector<double> out;
    out.reserve(t_outs.size() * xs.size());
    for (double t : t_outs)
        for (double x : xs)
            out.push_back(density_point(base, rho0, t, x, opts));
    return out;
}

}  // namespace iohoem
