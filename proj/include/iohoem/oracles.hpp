#pragma once

// Independent reference solutions: single-excitation waveguide scattering,
// pure dephasing under a single-mode bath (with and without a one-photon
// input), and brute-force simulation of a system coupled to damped modes.

#include "iohoem/markovian.hpp"
#include "iohoem/ode.hpp"
#include "iohoem/operators.hpp"

#include <vector>

namespace iohoem {

// ---------------------------------------------------------------------------
// Single-excitation scattering

struct QuadratureOptions {
    int panels = 64;         // Gauss-Legendre panels on the starting grid
    double tolerance = 1e-10;  // panel doubling stops below this change
    int max_doublings = 6;
    double half_width_sigmas = 10.0;
};

// Emitter amplitude c1(t) for c1(0) = 0 and the packet on the positive branch.
cplx analytic_c1(const ScatteringConfig& cfg, double t, const QuadratureOptions& q = {});
// Freely propagated packet amplitude in position space.
cplx free_packet_amplitude(const ScatteringConfig& cfg, double x, double t, const QuadratureOptions& q = {});
// Full position amplitude: free part plus the emitted wave.
cplx analytic_amplitude(const ScatteringConfig& cfg, double x, double t, const QuadratureOptions& q = {});
// Occupation density |A(x, t)|^2.
double analytic_density(const ScatteringConfig& cfg, double x, double t_out, const QuadratureOptions& q = {});
// Density for every (t, x) pair, row-major in t (OpenMP over points).
std::vector<double> analytic_density_grid(const ScatteringConfig& cfg, const std::vector<double>& t_outs,
                                          const std::vector<double>& xs, const QuadratureOptions& q = {});

// ---------------------------------------------------------------------------
// Pure dephasing, bath C0(t) = lambda0^2 exp(-i Omega0 t - Gamma0 |t|)

struct DephasingParams {
    double lambda0 = 1.0;
    double Omega0 = 1.0;
    double Gamma0 = 1.0;

    void validate() const;
    cplx kappa() const { return {Gamma0, Omega0}; }
};

// lambda0^2 [exp(-kappa t) - 1 + kappa t] / kappa^2.
cplx dephasing_f(const DephasingParams& p, double t);
// Integral of the field cross-correlation lambda0 exp(-kappa tau) over [0, t].
cplx dephasing_fdot(const DephasingParams& p, double t);
// lambda0^2 (1 - e^{-i Omega t - Gamma t})(1 - e^{i Omega t - Gamma t}) / (Omega^2 + Gamma^2).
double dephasing_g(const DephasingParams& p, double t);
// rho -> 2 s rho s - s^2 rho - rho s^2.
ComplexMatrix dephasing_dissipator(const ComplexMatrix& s, const ComplexMatrix& rho);

// Dephased state for H_S commuting with s; with_input adds g_t D_s[rho].
ComplexMatrix dephasing_rho(const DephasingParams& p, const ComplexMatrix& h_s, const ComplexMatrix& s,
                            const ComplexMatrix& rho0, double t, bool with_input);

// ---------------------------------------------------------------------------
// System coupled to damped bosonic modes, truncated Fock basis

struct DampedMode {
    double frequency = 1.0;
    double coupling = 0.0;
    double decay = 0.0;
    ComplexMatrix system_operator;  // hermitian; H_int = coupling s (a + a^dagger)
    int initial_quanta = 0;         // mode starts in this Fock state
};

struct FockResult {
    std::vector<ComplexMatrix> rho;  // reduced system state per time
    double convergence_defect = 0.0;  // max trace distance to the fock_cut + 2 run
};

// Lindblad evolution with dissipator decay (2 a rho a^dag - {a^dag a, rho})
// per mode; throws SolverError when the fock_cut + 2 run differs by more than
// convergence_tol (a negative tolerance skips the check).
FockResult fock_brute_force(const ComplexMatrix& h_s, const std::vector<DampedMode>& modes, const ComplexMatrix& rho0,
                            int fock_cut, const std::vector<double>& t_grid, double convergence_tol = 1e-6,
                            const OdeOptions& opts = {});

}  // namespace iohoem
