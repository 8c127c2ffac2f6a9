#include "iohoem/config.hpp"

#include "iohoem/errors.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <openssl/evp.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace iohoem {

namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

// Line of every "section.key" occurrence, for error messages.
std::map<std::string, int> key_lines(const std::string& text)
{
    std::map<std::string, int> lines;
    std::istringstream in(text);
    std::string line, section;
    int n = 0;
    while (std::getline(in, line)) {
        ++n;
        const std::string t = trim(line);
        if (t.empty() || t[0] == ';' || t[0] == '#')
            continue;
        if (t.front() == '[' && t.back() == ']') {
            section = trim(t.substr(1, t.size() - 2));
            continue;
        }
        const auto eq = t.find('=');
        if (eq != std::string::npos)
            lines.emplace(section.empty() ? trim(t.substr(0, eq)) : section + "." + trim(t.substr(0, eq)), n);
    }
    return lines;
}

std::string fmt_double(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse_double(const std::string& key, const std::string& v, int line)
{
    double out = 0.0;
    const char* b = v.data();
    const char* e = v.data() + v.size();
    const auto [ptr, ec] = std::from_chars(b, e, out);
    if (ec != std::errc{} || ptr != e || !std::isfinite(out))
        throw ConfigError("field `" + key + "`: expected a finite number, got '" + v + "'", line);
    return out;
}

int parse_int(const std::string& key, const std::string& v, int line)
{
    int out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size())
        throw ConfigError("field `" + key + "`: expected an integer, got '" + v + "'", line);
    return out;
}

bool parse_bool(const std::string& key, const std::string& v, int line)
{
    if (v == "true" || v == "1" || v == "yes")
        return true;
    if (v == "false" || v == "0" || v == "no")
        return false;
    throw ConfigError("field `" + key + "`: expected true or false, got '" + v + "'", line);
}

Scenario parse_scenario(const std::string& v, int line)
{
    if (v == "heom")
        return Scenario::Heom;
    if (v == "io-heom")
        return Scenario::IoHeom;
    if (v == "markov-scatter")
        return Scenario::MarkovScatter;
    if (v == "oracle-compare")
        return Scenario::OracleCompare;
    throw ConfigError("field `scenario`: unknown scenario '" + v + "'", line);
}

Representation parse_representation(const std::string& v, int line)
{
    if (v == "direct")
        return Representation::Direct;
    if (v == "causal")
        return Representation::Causal;
    if (v == "real")
        return Representation::Real;
    throw ConfigError("field `representation`: expected direct, causal or real, got '" + v + "'", line);
}

OracleKind parse_oracle(const std::string& v, int line)
{
    if (v == "scattering")
        return OracleKind::Scattering;
    if (v == "dephasing")
        return OracleKind::Dephasing;
    if (v == "pseudomode")
        return OracleKind::Pseudomode;
    throw ConfigError("field `which`: expected scattering, dephasing or pseudomode, got '" + v + "'", line);
}

using Setter = std::function<void(RunConfig&, const std::string&, int)>;

const std::map<std::string, Setter>& setters()
{
    static const std::map<std::string, Setter> table = [] {
        std::map<std::string, Setter> t;
        auto dbl = [&t](const std::string& key, auto member) {
            t[key] = [key, member](RunConfig& c, const std::string& v, int l) { member(c) = parse_double(key, v, l); };
        };
        auto integer = [&t](const std::string& key, auto member) {
            t[key] = [key, member](RunConfig& c, const std::string& v, int l) { member(c) = parse_int(key, v, l); };
        };
        auto str = [&t](const std::string& key, auto member) {
            t[key] = [member](RunConfig& c, const std::string& v, int) { member(c) = v; };
        };
        t["run.scenario"] = [](RunConfig& c, const std::string& v, int l) { c.scenario = parse_scenario(v, l); };
        str("run.format", [](RunConfig& c) -> std::string& { return c.format; });
        str("run.out", [](RunConfig& c) -> std::string& { return c.out; });

        dbl("system.omega_s_per_time", [](RunConfig& c) -> double& { return c.system.omega_s_per_time; });
        str("system.coupling", [](RunConfig& c) -> std::string& { return c.system.coupling; });
        str("system.initial_state", [](RunConfig& c) -> std::string& { return c.system.initial_state; });

        dbl("bath.lambda_per_time", [](RunConfig& c) -> double& { return c.bath.lambda_per_time; });
        dbl("bath.omega_per_time", [](RunConfig& c) -> double& { return c.bath.omega_per_time; });
        dbl("bath.gamma_per_time", [](RunConfig& c) -> double& { return c.bath.gamma_per_time; });
        integer("bath.nmax", [](RunConfig& c) -> int& { return c.bath.nmax; });
        t["bath.representation"] = [](RunConfig& c, const std::string& v, int l) {
            c.bath.representation = parse_representation(v, l);
        };
        dbl("bath.alpha0_re", [](RunConfig& c) -> double& { return c.bath.alpha0_re; });
        dbl("bath.alpha0_im", [](RunConfig& c) -> double& { return c.bath.alpha0_im; });
        t["bath.scaled"] = [](RunConfig& c, const std::string& v, int l) { c.bath.scaled = parse_bool("scaled", v, l); };

        dbl("grid.t_start_time", [](RunConfig& c) -> double& { return c.grid.t_start_time; });
        dbl("grid.t_stop_time", [](RunConfig& c) -> double& { return c.grid.t_stop_time; });
        integer("grid.t_points", [](RunConfig& c) -> int& { return c.grid.t_points; });
        dbl("grid.x_min_length", [](RunConfig& c) -> double& { return c.grid.x_min_length; });
        dbl("grid.x_max_length", [](RunConfig& c) -> double& { return c.grid.x_max_length; });
        integer("grid.x_points", [](RunConfig& c) -> int& { return c.grid.x_points; });

        dbl("scattering.omega_s_per_time", [](RunConfig& c) -> double& { return c.scattering.omega_s_per_time; });
        dbl("scattering.gamma_per_time", [](RunConfig& c) -> double& { return c.scattering.gamma_per_time; });
        dbl("scattering.c_length_per_time", [](RunConfig& c) -> double& { return c.scattering.c_length_per_time; });
        dbl("scattering.x_in_length", [](RunConfig& c) -> double& { return c.scattering.x_in_length; });
        dbl("scattering.p_in_per_length", [](RunConfig& c) -> double& { return c.scattering.p_in_per_length; });
        dbl("scattering.sigma_in_per_length",
            [](RunConfig& c) -> double& { return c.scattering.sigma_in_per_length; });
        dbl("scattering.dx_length", [](RunConfig& c) -> double& { return c.scattering.dx_length; });

        t["oracle.which"] = [](RunConfig& c, const std::string& v, int l) { c.oracle.which = parse_oracle(v, l); };
        dbl("oracle.tolerance", [](RunConfig& c) -> double& { return c.oracle.tolerance; });
        integer("oracle.fock_cut", [](RunConfig& c) -> int& { return c.oracle.fock_cut; });

        dbl("integrator.rtol", [](RunConfig& c) -> double& { return c.integrator.rtol; });
        dbl("integrator.atol", [](RunConfig& c) -> double& { return c.integrator.atol; });
        return t;
    }();
    return table;
}

std::vector<double> linspace(double a, double b, int n)
{
    std::vector<double> out(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k)
        out[static_cast<std::size_t>(k)] = n == 1 ? a : a + (b - a) * k / (n - 1);
    return out;
}

}  // namespace

std::vector<double> GridSection::times() const { return linspace(t_start_time, t_stop_time, t_points); }
std::vector<double> GridSection::positions() const { return linspace(x_min_length, x_max_length, x_points); }

std::string to_string(Scenario s)
{
    switch (s) {
    case Scenario::Heom:
        return "heom";
    case Scenario::IoHeom:
        return "io-heom";
    case Scenario::MarkovScatter:
        return "markov-scatter";
    case Scenario::OracleCompare:
        return "oracle-compare";
    }
    return "";
}

std::string to_string(Representation r)
{
    switch (r) {
    case Representation::Direct:
        return "direct";
    case Representation::Causal:
        return "causal";
    case Representation::Real:
        return "real";
    }
    return "";
}

std::string to_string(OracleKind k)
{
    switch (k) {
    case OracleKind::Scattering:
        return "scattering";
    case OracleKind::Dephasing:
        return "dephasing";
    case OracleKind::Pseudomode:
        return "pseudomode";
    }
    return "";
}

void RunConfig::validate() const
{
    auto fail = [](const std::string& field, const std::string& msg) {
        throw ConfigError("field `" + field + "`: " + msg);
    };
    if (format != "csv" && format != "json")
        fail("format", "expected csv or json");
    if (system.coupling != "x" && system.coupling != "z")
        fail("coupling", "expected x or z");
    if (system.initial_state != "excited" && system.initial_state != "ground" && system.initial_state != "plus")
        fail("initial_state", "expected excited, ground or plus");
    if (!(bath.gamma_per_time > 0.0))
        fail("bath.gamma_per_time", "must be positive");
    if (bath.nmax < 0 || bath.nmax > 40)
        fail("nmax", "must lie in [0, 40]");
    if (bath.alpha0_re == 0.0 && bath.alpha0_im == 0.0)
        fail("alpha0", "must be non-zero");
    if (!(grid.t_start_time >= 0.0))
        fail("t_start_time", "must be non-negative");
    if (grid.t_points < 1 || (grid.t_points > 1 && !(grid.t_stop_time > grid.t_start_time)))
        fail("t_stop_time", "time grid must be non-empty and increasing");
    if (grid.x_points < 1 || (grid.x_points > 1 && !(grid.x_max_length > grid.x_min_length)))
        fail("x_max_length", "space grid must be non-empty and increasing");
    if (!(scattering.gamma_per_time > 0.0))
        fail("scattering.gamma_per_time", "must be positive");
    if (!(scattering.c_length_per_time > 0.0))
        fail("c_length_per_time", "must be positive");
    if (!(scattering.sigma_in_per_length > 0.0))
        fail("sigma_in_per_length", "must be positive");
    if (!(scattering.dx_length > 0.0))
        fail("dx_length", "must be positive");
    if (!(oracle.tolerance > 0.0))
        fail("tolerance", "must be positive");
    if (oracle.fock_cut < 2 || oracle.fock_cut > 30)
        fail("fock_cut", "must lie in [2, 30]");
    if (!(integrator.rtol > 0.0) || !(integrator.atol > 0.0))
        fail("rtol", "integrator tolerances must be positive");
    if (scenario == Scenario::OracleCompare && oracle.which == OracleKind::Dephasing && system.coupling != "z")
        fail("coupling", "the dephasing oracle needs coupling = z");
}

std::string RunConfig::canonical() const
{
    std::map<std::string, std::string> kv;
    kv["run.scenario"] = to_string(scenario);
    kv["system.omega_s_per_time"] = fmt_double(system.omega_s_per_time);
    kv["system.coupling"] = system.coupling;
    kv["system.initial_state"] = system.initial_state;
    kv["bath.lambda_per_time"] = fmt_double(bath.lambda_per_time);
    kv["bath.omega_per_time"] = fmt_double(bath.omega_per_time);
    kv["bath.gamma_per_time"] = fmt_double(bath.gamma_per_time);
    kv["bath.nmax"] = std::to_string(bath.nmax);
    kv["bath.representation"] = to_string(bath.representation);
    kv["bath.alpha0_re"] = fmt_double(bath.alpha0_re);
    kv["bath.alpha0_im"] = fmt_double(bath.alpha0_im);
    kv["bath.scaled"] = bath.scaled ? "true" : "false";
    kv["grid.t_start_time"] = fmt_double(grid.t_start_time);
    kv["grid.t_stop_time"] = fmt_double(grid.t_stop_time);
    kv["grid.t_points"] = std::to_string(grid.t_points);
    kv["grid.x_min_length"] = fmt_double(grid.x_min_length);
    kv["grid.x_max_length"] = fmt_double(grid.x_max_length);
    kv["grid.x_points"] = std::to_string(grid.x_points);
    kv["scattering.omega_s_per_time"] = fmt_double(scattering.omega_s_per_time);
    kv["scattering.gamma_per_time"] = fmt_double(scattering.gamma_per_time);
    kv["scattering.c_length_per_time"] = fmt_double(scattering.c_length_per_time);
    kv["scattering.x_in_length"] = fmt_double(scattering.x_in_length);
    kv["scattering.p_in_per_length"] = fmt_double(scattering.p_in_per_length);
    kv["scattering.sigma_in_per_length"] = fmt_double(scattering.sigma_in_per_length);
    kv["scattering.dx_length"] = fmt_double(scattering.dx_length);
    kv["oracle.which"] = to_string(oracle.which);
    kv["oracle.tolerance"] = fmt_double(oracle.tolerance);
    kv["oracle.fock_cut"] = std::to_string(oracle.fock_cut);
    kv["integrator.rtol"] = fmt_double(integrator.rtol);
    kv["integrator.atol"] = fmt_double(integrator.atol);
    kv["run.seed"] = std::to_string(seed);
    std::string out;
    for (const auto& [k, v] : kv)
        out += k + " = " + v + "\n";
    return out;
}

std::string sha256_hex(const std::string& data)
{
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("SHA-256 digest failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 0xF];
    }
    return out;
}

std::string RunConfig::hash() const { return sha256_hex(canonical()); }

RunConfig parse_config_string(const std::string& text)
{
    namespace pt = boost::property_tree;
    pt::ptree tree;
    std::istringstream in(text);
    try {
        pt::ini_parser::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError("parse error: " + e.message(), static_cast<int>(e.line()));
    }
    const auto lines = key_lines(text);
    auto line_of = [&](const std::string& key) {
        auto it = lines.find(key);
        return it == lines.end() ? 0 : it->second;
    };

    RunConfig cfg;
    bool have_scenario = false;
    for (const auto& [section, body] : tree) {
        if (body.empty())
            throw ConfigError("key `" + section + "` must belong to a section", line_of(section));
        for (const auto& [key, value] : body) {
            const std::string full = section + "." + key;
            auto it = setters().find(full);
            if (it == setters().end())
                throw ConfigError("unknown key `" + full + "`", line_of(full));
            it->second(cfg, trim(value.data()), line_of(full));
            if (full == "run.scenario")
                have_scenario = true;
        }
    }
    if (!have_scenario)
        throw ConfigError("missing required field `scenario` in [run]");
    cfg.validate();
    return cfg;
}

RunConfig parse_config(const std::string& path)
{
    std::ifstream f(path);
    if (!f)
        throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_config_string(ss.str());
}

}  // namespace iohoem
