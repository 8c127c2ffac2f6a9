#pragma once

// Input-output Lindblad model of a two-level emitter in a one-dimensional
// Markovian waveguide probed by a single-photon wave packet.
//
// The in-out vector holds 16 blocks rho_{ab,ij} (a, b input flags; i, j output
// flags), each a column-stacked 2x2 matrix. Block index (a + 2b) * 4 + (i + 2j).

#include "iohoem/correlations.hpp"
#include "iohoem/ode.hpp"
#include "iohoem/operators.hpp"

#include <array>
#include <vector>

namespace iohoem {

struct ScatteringConfig {
    double omega_s = 1.0;
    double Gamma = 0.1;
    double c = 1.0;
    WavePacketSpec wavepacket;
    double x_out = 0.0;
    double t_out = 0.0;
    double dx = 0.05;
    bool with_input = true;  // false: no packet, vacuum input

    void validate() const;
};

// Emitter at x = 0, packet from x_in < 0 with omega_s = 4.5 c / |x_in|,
// Gamma = 0.4 omega_s, p_in = omega_s / c, sigma_in = p_in / 2.
ScatteringConfig reference_scattering_config(double x_in = -1.0, double c = 1.0, double dx = 0.05);

inline constexpr std::size_t INOUT_BLOCKS = 16;
inline constexpr std::size_t INOUT_SIZE = 64;

using InOutVector = std::array<cplx, INOUT_SIZE>;

constexpr std::size_t inout_block(int a, int b, int i, int j) { return static_cast<std::size_t>((a + 2 * b) * 4 + (i + 2 * j)); }

ComplexMatrix inout_block_matrix(const InOutVector& v, int a, int b, int i, int j);
InOutVector inout_initial(const ComplexMatrix& rho0);

// H_S = omega_s sigma_+ sigma_-.
ComplexMatrix emitter_hamiltonian(const ScatteringConfig& cfg);
// -i[H_S, .] + Gamma (2 s_- . s_+ - s_+ s_- . - . s_+ s_-).
SuperOperator lindblad_l0(const ScatteringConfig& cfg);
// -i Omega^in_{+/-}(t) [sigma_{+/-}, .] in the Schroedinger picture.
SuperOperator drive_in(const ScatteringConfig& cfg, int sign, double t);
// 64 x 64 generator: L0 on every block, D^in_+ raising a, D^in_- raising b.
ComplexMatrix build_in_out_generator(const ScatteringConfig& cfg, double t);
// Output-flag raising generator: +sigma_- . raises j, -. sigma_+ raises i.
ComplexMatrix kick_generator();
// exp(w sqrt(Gamma dx / c) M) through the terminating series (M^3 = 0);
// w = 1/2 when t_star = 0 and t_out > 0.
ComplexMatrix kick_operator(const ScatteringConfig& cfg, double t_star);

// Trajectory on t_grid (default {t_out}) with the kick at t* applied.
std::vector<InOutVector> solve_scattering(const ScatteringConfig& cfg, const ComplexMatrix& rho0,
                                          std::vector<double> t_grid = {}, const OdeOptions& opts = {},
                                          OdeStats* stats = nullptr);

// Delta x times the occupation density at (x_out, t_out); `overlap` is the
// free overlap <phi_1^out phi_2^in>. Throws SolverError when the imaginary
// residue exceeds imag_tol.
double observable_expectation(const InOutVector& psi, cplx overlap, double imag_tol = 1e-8);

// Max blockwise defect of rho_{ab,ij} = (-1)^{a+b+i+j} rho_{ba,ji}^dagger.
double hermiticity_defect(const InOutVector& psi);

// Occupation density <O^x>/dx for every (t_out, x_out) pair, row-major in t
// (OpenMP over grid points).
std::vector<double> markov_density_grid(const ScatteringConfig& base, const ComplexMatrix& rho0,
                                        const std::vector<double>& t_outs, const std::vector<double>& xs,
                                        const OdeOptions& opts = {});
// Serial reference of markov_density_grid.
std::vector<double> markov_density_grid_serial(const ScatteringConfig& base, const ComplexMatrix& rho0,
                                               const std::vector<double>& t_outs, const std::vector<double>& xs,
                                               const OdeOptions& opts = {});

}  // namespace iohoem
