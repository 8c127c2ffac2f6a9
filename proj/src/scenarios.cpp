#include "iohoem/scenarios.hpp"

#include "iohoem/errors.hpp"
#include "iohoem/oracles.hpp"
#include "iohoem/wick.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace iohoem {

ExponentialSeries single_mode_correlation(double lambda, double omega, double gamma)
{
    return ExponentialSeries{{cplx{lambda * lambda}, cplx{gamma, omega}}};
}

std::vector<InfluenceTerm> single_mode_influence(const ComplexMatrix& s, double lambda, double omega, double gamma,
                                                 Representation rep)
{
    const ExponentialSeries c = single_mode_correlation(lambda, omega, gamma);
    switch (rep) {
    case Representation::Direct: {
        SystemModel sys{ComplexMatrix::zero(s.rows(), s.rows()), {s}};
        return direct_form(sys, single_coupling_table(c));
    }
    case Representation::Causal:
        return causal_form(s, c);
    case Representation::Real: {
        const double l2 = lambda * lambda;
        const cplx k{gamma, omega};
        const ExponentialSeries re{{cplx{l2 / 2.0}, k}, {cplx{l2 / 2.0}, std::conj(k)}};
        const ExponentialSeries im{{cplx{0.0, -l2 / 2.0}, k}, {cplx{0.0, l2 / 2.0}, std::conj(k)}};
        return real_form(s, re, im);
    }
    }
    throw ValidationError("unknown representation");
}

std::vector<FieldSpec> single_mode_photon_fields(double lambda, double omega, double gamma, std::size_t n_alpha)
{
    const cplx k{gamma, omega};
    FieldSpec f1;
    f1.label = 1;
    f1.role = FieldRole::Static;
    f1.side = FieldSide::Left;
    f1.kernels.assign(n_alpha, ExponentialSeries{{cplx{lambda}, k}});
    FieldSpec f2 = f1;
    f2.label = 2;
    f2.side = FieldSide::Right;
    f2.kernels.assign(n_alpha, ExponentialSeries{{cplx{lambda}, std::conj(k)}});
    return {f1, f2};
}

ComplexMatrix photon_reduced_state(const Hierarchy& h, const HierarchyState& state)
{
    FieldSet fs;
    fs.m = 2;
    fs.set_pair(1, 2, 1.0);
    return assemble_series(fs, h.reconstruct(state, {{}, {1, 2}}));
}

ComplexMatrix initial_state_from(const RunConfig& cfg)
{
    if (cfg.system.initial_state == "excited")
        return pauli::excited_projector();
    if (cfg.system.initial_state == "ground")
        return pauli::ground_projector();
    return ComplexMatrix{{0.5, 0.5}, {0.5, 0.5}};
}

namespace {

ComplexMatrix coupling_of(const RunConfig& cfg) { return cfg.system.coupling == "z" ? pauli::z() : pauli::x(); }

ComplexMatrix hamiltonian_of(const RunConfig& cfg) { return cplx{cfg.system.omega_s_per_time / 2.0} * pauli::z(); }

OdeOptions ode_of(const RunConfig& cfg)
{
    OdeOptions o;
    o.rtol = cfg.integrator.rtol;
    o.atol = cfg.integrator.atol;
    return o;
}

std::string num(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

const char* RHO_NAMES[2][2] = {{"rho_00", "rho_01"}, {"rho_10", "rho_11"}};

void push_rho(ResultTable& t, double time, const ComplexMatrix& rho, const std::string& prefix)
{
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            const cplx v = rho(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
            t.rows.push_back({time, 0.0, prefix + RHO_NAMES[i][j], v.real(), v.imag()});
        }
}

struct HeomRun {
    std::vector<double> times;
    std::vector<ComplexMatrix> rho;
    std::size_t adms = 0;
    OdeStats stats;
};

HeomRun run_hierarchy(const RunConfig& cfg, bool with_photon)
{
    const Hierarchy h(hierarchy_spec_from(cfg, with_photon));
    HeomRun run;
    run.times = cfg.grid.times();
    run.adms = h.space().size();
    const auto states = h.integrate(initial_state_from(cfg), run.times, {}, ode_of(cfg), 0.0, &run.stats);
    for (const auto& s : states)
        run.rho.push_back(with_photon ? photon_reduced_state(h, s) : s.root());
    return run;
}

void heom_metadata(ResultTable& t, const HeomRun& run)
{
    double drift = 0.0;
    for (const auto& r : run.rho)
        drift = std::max(drift, std::abs(r.trace() - 1.0));
    t.set_meta("adm_count", std::to_string(run.adms));
    t.set_meta("rhs_evals", std::to_string(run.stats.rhs_evals));
    t.set_meta("accepted_steps", std::to_string(run.stats.accepted));
    t.set_meta("max_trace_drift", num(drift));
}

}  // namespace

HierarchySpec hierarchy_spec_from(const RunConfig& cfg, bool with_photon)
{
    HierarchySpec spec;
    const ComplexMatrix s = coupling_of(cfg);
    spec.system = {hamiltonian_of(cfg), {s}};
    spec.influence = single_mode_influence(s, cfg.bath.lambda_per_time, cfg.bath.omega_per_time,
                                           cfg.bath.gamma_per_time, cfg.bath.representation);
    spec.max_tier = cfg.bath.nmax;
    spec.alpha0 = cplx{cfg.bath.alpha0_re, cfg.bath.alpha0_im};
    spec.scaled = cfg.bath.scaled;
    if (with_photon)
        spec.static_fields = single_mode_photon_fields(cfg.bath.lambda_per_time, cfg.bath.omega_per_time,
                                                       cfg.bath.gamma_per_time, spec.system.n_alpha());
    return spec;
}

ScatteringConfig scattering_from(const RunConfig& cfg)
{
    const auto& s = cfg.scattering;
    ScatteringConfig out;
    out.omega_s = s.omega_s_per_time;
    out.Gamma = s.gamma_per_time;
    out.c = s.c_length_per_time;
    out.wavepacket = make_wave_packet(s.x_in_length, s.p_in_per_length, s.sigma_in_per_length, s.c_length_per_time,
                                      s.gamma_per_time);
    out.dx = s.dx_length;
    out.validate();
    return out;
}

ScenarioResult run_scenario(const RunConfig& cfg)
{
    cfg.validate();
    ScenarioResult res;
    ResultTable& t = res.table;
    t.set_meta("tool", "iohoem");
    t.set_meta("version", IOHOEM_VERSION);
    t.set_meta("scenario", to_string(cfg.scenario));
    t.set_meta("config_hash", cfg.hash());
    t.set_meta("seed", std::to_string(cfg.seed));

    try {
        switch (cfg.scenario) {
        case Scenario::Heom:
        case Scenario::IoHeom: {
            const bool photon = cfg.scenario == Scenario::IoHeom;
            const HeomRun run = run_hierarchy(cfg, photon);
            t.set_meta("nmax", std::to_string(cfg.bath.nmax));
            t.set_meta("representation", to_string(cfg.bath.representation));
            heom_metadata(t, run);
            for (std::size_t k = 0; k < run.times.size(); ++k)
                push_rho(t, run.times[k], run.rho[k], "");
            break;
        }
        case Scenario::MarkovScatter: {
            const ScatteringConfig sc = scattering_from(cfg);
            const auto ts = cfg.grid.times();
            const auto xs = cfg.grid.positions();
            const auto dens = markov_density_grid(sc, pauli::ground_projector(), ts, xs, ode_of(cfg));
            for (std::size_t i = 0; i < ts.size(); ++i)
                for (std::size_t j = 0; j < xs.size(); ++j)
                    t.rows.push_back({ts[i], xs[j], "density", dens[i * xs.size() + j], 0.0});
            break;
        }
        case Scenario::OracleCompare: {
            double diff = 0.0;
            double scale = 1.0;
            t.set_meta("oracle", to_string(cfg.oracle.which));
            if (cfg.oracle.which == OracleKind::Scattering) {
                const ScatteringConfig sc = scattering_from(cfg);
                const auto ts = cfg.grid.times();
                const auto xs = cfg.grid.positions();
                const auto lhs = markov_density_grid(sc, pauli::ground_projector(), ts, xs, ode_of(cfg));
                const auto rhs = analytic_density_grid(sc, ts, xs);
                double peak = 0.0;
                for (std::size_t k = 0; k < lhs.size(); ++k) {
                    diff = std::max(diff, std::abs(lhs[k] - rhs[k]));
                    peak = std::max(peak, std::abs(rhs[k]));
                }
                scale = peak > 0.0 ? peak : 1.0;
                t.set_meta("peak_density", num(peak));
                for (std::size_t i = 0; i < ts.size(); ++i)
                    for (std::size_t j = 0; j < xs.size(); ++j) {
                        const std::size_t k = i * xs.size() + j;
                        t.rows.push_back({ts[i], xs[j], "io_lindblad:density", lhs[k], 0.0});
                        t.rows.push_back({ts[i], xs[j], "analytic:density", rhs[k], 0.0});
                    }
            } else {
                const bool photon = cfg.oracle.which == OracleKind::Dephasing;
                const HeomRun run = run_hierarchy(cfg, photon);
                t.set_meta("nmax", std::to_string(cfg.bath.nmax));
                heom_metadata(t, run);
                std::vector<ComplexMatrix> ref;
                if (photon) {
                    const DephasingParams p{cfg.bath.lambda_per_time, cfg.bath.omega_per_time,
                                            cfg.bath.gamma_per_time};
                    for (double time : run.times)
                        ref.push_back(
                            dephasing_rho(p, hamiltonian_of(cfg), coupling_of(cfg), initial_state_from(cfg), time, true));
                } else {
                    DampedMode mode{cfg.bath.omega_per_time, cfg.bath.lambda_per_time, cfg.bath.gamma_per_time,
                                    coupling_of(cfg)};
                    ref = fock_brute_force(hamiltonian_of(cfg), {mode}, initial_state_from(cfg), cfg.oracle.fock_cut,
                                           run.times, -1.0, ode_of(cfg))
                              .rho;
                }
                const std::string ref_name = photon ? "dephasing:" : "fock:";
                for (std::size_t k = 0; k < run.times.size(); ++k) {
                    diff = std::max(diff, max_abs_diff(run.rho[k], ref[k]));
                    push_rho(t, run.times[k], run.rho[k], "heom:");
                    push_rho(t, run.times[k], ref[k], ref_name);
                }
            }
            const double metric = diff / scale;
            res.within_tolerance = metric <= cfg.oracle.tolerance;
            t.set_meta("max_abs_diff", num(diff));
            t.set_meta("error_metric", num(metric));
            t.set_meta("tolerance", num(cfg.oracle.tolerance));
            t.set_meta("status", res.within_tolerance ? "pass" : "fail");
            break;
        }
        }
    } catch (const SolverError& e) {
        throw SolverError("scenario " + to_string(cfg.scenario) + ": " + e.what());
    } catch (const OverflowError& e) {
        throw SolverError("scenario " + to_string(cfg.scenario) + ": " + e.what());
    } catch (const ValidationError& e) {
        throw ValidationError("scenario " + to_string(cfg.scenario) + ": " + e.what());
    }
    return res;
}

}  // namespace iohoem
