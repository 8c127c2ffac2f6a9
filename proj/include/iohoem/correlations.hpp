#pragma once

// Correlation data: exponential decompositions of bath correlations,
// field/coupling cross-correlations, wave-packet drive kernels and free
// field overlaps for the Markovian waveguide model.

#include "iohoem/operators.hpp"

#include <functional>
#include <variant>
#include <vector>

namespace iohoem {

// One term a * exp(-b * lag).
struct ExpTerm {
    cplx a;
    cplx b;
};

struct ExponentialSeries {
    std::vector<ExpTerm> terms;

    ExponentialSeries() = default;
    ExponentialSeries(std::initializer_list<ExpTerm> t);
    explicit ExponentialSeries(std::vector<ExpTerm> t);

    bool empty() const { return terms.empty(); }
    // Sum of amplitudes (value at zero lag).
    cplx amplitude_sum() const;
    // Complex conjugate of the function: terms (conj a, conj b).
    ExponentialSeries conjugate() const;
};

// Sum_k a_k exp(-b_k lag); lag must be non-negative.
cplx eval_series(const ExponentialSeries& s, double lag);
// Throws ValidationError when a rate has negative real part.
void validate_series(const ExponentialSeries& s);

// Two-point correlation matrix D^{alpha beta}, n_alpha x n_alpha.
class CorrelationTable {
public:
    CorrelationTable() = default;
    explicit CorrelationTable(std::size_t n_alpha);

    std::size_t n_alpha() const { return n_; }
    ExponentialSeries& at(std::size_t alpha, std::size_t beta);
    const ExponentialSeries& at(std::size_t alpha, std::size_t beta) const;
    bool empty() const;

private:
    std::size_t n_ = 0;
    std::vector<ExponentialSeries> entries_;
};

// Cross-correlation between a field and one coupling superoperator label.
// ExponentialForm is a function of the lag t - tau >= 0 (dynamic fields);
// Sampled is a function of the absolute time tau (static fields).
struct CrossCorrelationFn {
    using Sampled = std::function<cplx(double)>;
    std::variant<ExponentialSeries, Sampled> kind;

    CrossCorrelationFn() : kind(ExponentialSeries{}) {}
    CrossCorrelationFn(ExponentialSeries s) : kind(std::move(s)) {}
    CrossCorrelationFn(Sampled f) : kind(std::move(f)) {}

    bool is_exponential() const { return std::holds_alternative<ExponentialSeries>(kind); }
    const ExponentialSeries& series() const;
    cplx operator()(double x) const;
};

// Gaussian single-photon wave packet on the right-moving branch.
struct WavePacketSpec {
    double x_in = 0.0;
    double p_in = 0.0;
    double sigma_in = 1.0;
    double zeta_in = 0.5;  // 1 / (2 sigma_in), set by make_wave_packet
    double c = 1.0;
    double Gamma = 0.0;

    // Momentum profile g_in(p) = exp(-(p - p_in)^2 / 2 sigma^2) / (sqrt(2 pi) sigma).
    double g_in(double p) const;
};

WavePacketSpec make_wave_packet(double x_in, double p_in, double sigma_in, double c, double Gamma);

// Scaled complex error function w(z) = exp(-z^2) erfc(-i z).
cplx faddeeva_w(cplx z);
// Imaginary error function Erfi(z) = -i erf(i z).
cplx faddeeva_erfi(cplx z);

// Closed-form input drive Omega^in_{+/-}(t); sign is +1 or -1.
cplx omega_in(const WavePacketSpec& w, int sign, double t);

struct KickTime {
    double time;
    double weight;  // 1, or 0.5 when the impulse sits on the t = 0 boundary
};

// Impulse times of the delta-shaped output drive inside [0, t_out].
std::vector<KickTime> omega_out_kick_times(double x_out, double t_out, double c);

// Position-eigenmode output profile g_out(p) = exp(-i p x_out) sqrt(dx / 2 pi).
struct OutputProfile {
    double dx = 1.0;
};

// Free overlap <phi_1^out phi_2^in> between the output field at (x_out, t_out)
// and the input packet.
cplx free_field_overlap(const WavePacketSpec& w, const OutputProfile& g_out, double x_out, double t_out);

}  // namespace iohoem
