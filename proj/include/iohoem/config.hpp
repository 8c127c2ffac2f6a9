#pragma once

// Run configuration: sectioned INI document with units in key names.
//
//   [run]        scenario = heom | io-heom | markov-scatter | oracle-compare
//                format = csv | json, out = path
//   [system]     omega_s_per_time, coupling = x | z, initial_state
//   [bath]       lambda_per_time, omega_per_time, gamma_per_time, nmax,
//                representation = direct | causal | real, alpha0_re, alpha0_im, scaled
//   [grid]       t_start_time, t_stop_time, t_points, x_min_length, x_max_length, x_points
//   [scattering] omega_s_per_time, gamma_per_time, c_length_per_time, x_in_length,
//                p_in_per_length, sigma_in_per_length, dx_length
//   [oracle]     which = scattering | dephasing | pseudomode, tolerance, fock_cut
//   [integrator] rtol, atol

#include <cstdint>
#include <string>
#include <vector>

namespace iohoem {

enum class Scenario { Heom, IoHeom, MarkovScatter, OracleCompare };
enum class Representation { Direct, Causal, Real };
enum class OracleKind { Scattering, Dephasing, Pseudomode };

struct SystemSection {
    double omega_s_per_time = 1.0;
    std::string coupling = "x";
    std::string initial_state = "excited";  // excited | ground | plus
};

struct BathSection {
    double lambda_per_time = 0.5;
    double omega_per_time = 1.0;
    double gamma_per_time = 1.0;
    int nmax = 8;
    Representation representation = Representation::Causal;
    double alpha0_re = 0.0;
    double alpha0_im = -1.0;
    bool scaled = false;
};

struct GridSection {
    double t_start_time = 0.0;
    double t_stop_time = 5.0;
    int t_points = 51;
    double x_min_length = -2.0;
    double x_max_length = 2.0;
    int x_points = 81;

    std::vector<double> times() const;
    std::vector<double> positions() const;
};

struct ScatteringSection {
    double omega_s_per_time = 4.5;
    double gamma_per_time = 1.8;
    double c_length_per_time = 1.0;
    double x_in_length = -1.0;
    double p_in_per_length = 4.5;
    double sigma_in_per_length = 2.25;
    double dx_length = 0.05;
};

struct OracleSection {
    OracleKind which = OracleKind::Scattering;
    double tolerance = 1e-3;
    int fock_cut = 8;
};

struct IntegratorSection {
    double rtol = 1e-10;
    double atol = 1e-12;
};

struct RunConfig {
    Scenario scenario = Scenario::Heom;
    std::string format = "csv";
    std::string out;
    SystemSection system;
    BathSection bath;
    GridSection grid;
    ScatteringSection scattering;
    OracleSection oracle;
    IntegratorSection integrator;
    std::uint64_t seed = 0;

    // Throws ConfigError naming the offending field.
    void validate() const;
    // Every key with its resolved value, one "section.key = value" per line,
    // sorted; `out` and `format` are excluded so they do not change the hash.
    std::string canonical() const;
    // SHA-256 of canonical(), lowercase hex.
    std::string hash() const;
};

// Parses and validates a config file; ConfigError carries the line number
// when the problem is tied to one.
RunConfig parse_config(const std::string& path);
RunConfig parse_config_string(const std::string& text);

std::string to_string(Scenario s);
std::string to_string(Representation r);
std::string to_string(OracleKind k);

std::string sha256_hex(const std::string& data);

}  // namespace iohoem
