#pragma once

// Scenario dispatch: turns a RunConfig into library calls and a ResultTable.

#include "iohoem/config.hpp"
#include "iohoem/emit.hpp"
#include "iohoem/hierarchy.hpp"
#include "iohoem/markovian.hpp"

namespace iohoem {

inline constexpr const char* IOHOEM_VERSION = "1.0.0";

// Bath correlation lambda^2 exp(-(gamma + i omega) t) of a single damped mode.
ExponentialSeries single_mode_correlation(double lambda, double omega, double gamma);

// Influence terms of a single hermitian coupling in the requested form.
std::vector<InfluenceTerm> single_mode_influence(const ComplexMatrix& s, double lambda, double omega, double gamma,
                                                 Representation rep);

// Static fields for one photon prepared in the bath mode: label 1 carries
// lambda exp(-kappa tau), label 2 lambda exp(-conj(kappa) tau), on both sides.
std::vector<FieldSpec> single_mode_photon_fields(double lambda, double omega, double gamma, std::size_t n_alpha);

// Reduced state with the photon input: <phi_1 phi_2> rho_root - rho_{12}.
ComplexMatrix photon_reduced_state(const Hierarchy& h, const HierarchyState& state);

ComplexMatrix initial_state_from(const RunConfig& cfg);
HierarchySpec hierarchy_spec_from(const RunConfig& cfg, bool with_photon);
ScatteringConfig scattering_from(const RunConfig& cfg);

struct ScenarioResult {
    ResultTable table;
    bool within_tolerance = true;  // only meaningful for oracle-compare
};

// Deterministic for a fixed config; SolverError and ValidationError propagate
// with scenario context.
ScenarioResult run_scenario(const RunConfig& cfg);

}  // namespace iohoem
