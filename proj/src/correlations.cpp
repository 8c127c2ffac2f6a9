#include "iohoem/correlations.hpp"

#include "iohoem/errors.hpp"

#include <cmath>
#include <numbers>

namespace iohoem {

ExponentialSeries::ExponentialSeries(std::initializer_list<ExpTerm> t) : terms(t) {}
ExponentialSeries::ExponentialSeries(std::vector<ExpTerm> t) : terms(std::move(t)) {}

cplx ExponentialSeries::amplitude_sum() const
{
    cplx s = 0.0;
    for (const auto& t : terms)
        s += t.a;
    return s;
}

ExponentialSeries ExponentialSeries::conjugate() const
{
    ExponentialSeries out;
    out.terms.reserve(terms.size());
    for (const auto& t : terms)
        out.terms.push_back({std::conj(t.a), std::conj(t.b)});
    return out;
}

cplx eval_series(const ExponentialSeries& s, double lag)
{
    if (!(lag >= 0.0))
        throw ValidationError("eval_series: lag must be non-negative");
    cplx sum = 0.0;
    for (const auto& t : s.terms)
        sum += t.a * std::exp(-t.b * lag);
    return sum;
}

void validate_series(const ExponentialSeries& s)
{
    for (const auto& t : s.terms) {
        if (!std::isfinite(t.a.real()) || !std::isfinite(t.a.imag()) || !std::isfinite(t.b.real()) ||
            !std::isfinite(t.b.imag()))
            throw ValidationError("exponential series has non-finite terms");
        if (t.b.real() < 0.0)
            throw ValidationError("exponential series rate has negative real part");
    }
}

CorrelationTable::CorrelationTable(std::size_t n_alpha) : n_(n_alpha), entries_(n_alpha * n_alpha) {}

ExponentialSeries& CorrelationTable::at(std::size_t alpha, std::size_t beta)
{
    if (alpha >= n_ || beta >= n_)
        throw ValidationError("correlation table index out of range");
    return entries_[alpha * n_ + beta];
}

const ExponentialSeries& CorrelationTable::at(std::size_t alpha, std::size_t beta) const
{
    if (alpha >= n_ || beta >= n_)
        throw ValidationError("correlation table index out of range");
    return entries_[alpha * n_ + beta];
}

bool CorrelationTable::empty() const
{
    for (const auto& e : entries_)
        if (!e.empty())
            return false;
    return true;
}

const ExponentialSeries& CrossCorrelationFn::series() const
{
    if (!is_exponential())
        throw ValidationError("cross-correlation is not in exponential form");
    return std::get<ExponentialSeries>(kind);
}

cplx CrossCorrelationFn::operator()(double x) const
{
    if (is_exponential())
        return eval_series(std::get<ExponentialSeries>(kind), x);
    const auto& f = std::get<Sampled>(kind);
    if (!f)
        throw ValidationError("cross-correlation callable is empty");
    return f(x);
}

double WavePacketSpec::g_in(double p) const
{
    const double u = (p - p_in) / sigma_in;
    return std::exp(-0.5 * u * u) / (std::sqrt(2.0 * std::numbers::pi) * sigma_in);
}

WavePacketSpec make_wave_packet(double x_in, double p_in, double sigma_in, double c, double Gamma)
{
    if (!(sigma_in > 0.0) || !std::isfinite(sigma_in))
        throw ValidationError("wave packet: sigma_in must be positive");
    if (!(c > 0.0) || !std::isfinite(c))
        throw ValidationError("wave packet: c must be positive");
    if (!(Gamma >= 0.0) || !std::isfinite(Gamma))
        throw ValidationError("wave packet: Gamma must be non-negative");
    if (!std::isfinite(x_in) || !std::isfinite(p_in))
        throw ValidationError("wave packet: x_in and p_in must be finite");
    WavePacketSpec w;
    w.x_in = x_in;
    w.p_in = p_in;
    w.sigma_in = sigma_in;
    w.zeta_in = 1.0 / (2.0 * sigma_in);
    w.c = c;
    w.Gamma = Gamma;
    return w;
}

// Power series near the origin, Laplace continued fraction far away, and the
// Gautschi-shifted Taylor/continued-fraction combination in between
// (Poppe and Wijers, ACM TOMS 16, 1990).
cplx faddeeva_w(cplx z)
{
    constexpr double factor = 1.12837916709551257388;  // 2 / sqrt(pi)
    constexpr double rmaxreal = 0.5e154;
    constexpr double rmaxexp = 708.503061461606;
    constexpr double rmaxgoni = 3.53711887601422e15;

    const double xi = z.real();
    const double yi = z.imag();
    const double xabs = std::abs(xi);
    const double yabs = std::abs(yi);
    const double x = xabs / 6.3;
    const double y = yabs / 4.4;
    if (xabs > rmaxreal || yabs > rmaxreal || !std::isfinite(xi) || !std::isfinite(yi))
        throw OverflowError("faddeeva_w: argument out of range");

    double qrho = x * x + y * y;
    double xquad = xabs * xabs - yabs * yabs;
    const double yquad = 2.0 * xabs * yabs;
    const bool a = qrho < 0.085264;

    double u = 0.0, v = 0.0, u2 = 0.0, v2 = 0.0;
    if (a) {
        qrho = (1.0 - 0.85 * y) * std::sqrt(qrho);
        const int n = static_cast<int>(std::lround(6.0 + 72.0 * qrho));
        int j = 2 * n + 1;
        double xsum = 1.0 / j;
        double ysum = 0.0;
        for (int i = n; i >= 1; --i) {
            j -= 2;
            const double xaux = (xsum * xquad - ysum * yquad) / i;
            ysum = (xsum * yquad + ysum * xquad) / i;
            xsum = xaux + 1.0 / j;
        }
        const double u1 = -factor * (xsum * yabs + ysum * xabs) + 1.0;
        const double v1 = factor * (xsum * xabs - ysum * yabs);
        const double daux = std::exp(-xquad);
        u2 = daux * std::cos(yquad);
        v2 = -daux * std::sin(yquad);
        u = u1 * u2 - v1 * v2;
        v = u1 * v2 + v1 * u2;
    } else {
        double h = 0.0, h2 = 0.0;
        int kapn = 0, nu = 0;
        if (qrho > 1.0) {
            qrho = std::sqrt(qrho);
            nu = static_cast<int>(3.0 + 1442.0 / (26.0 * qrho + 77.0));
        } else {
            qrho = (1.0 - y) * std::sqrt(1.0 - qrho);
            h = 1.88 * qrho;
            h2 = 2.0 * h;
            kapn = static_cast<int>(std::lround(7.0 + 34.0 * qrho));
            nu = static_cast<int>(std::lround(16.0 + 26.0 * qrho));
        }
        const bool b = h > 0.0;
        double qlambda = b ? std::pow(h2, kapn) : 0.0;
        double rx = 0.0, ry = 0.0, sx = 0.0, sy = 0.0;
        for (int n = nu; n >= 0; --n) {
            const double np1 = n + 1;
            double tx = yabs + h + np1 * rx;
            double ty = xabs - np1 * ry;
            const double c = 0.5 / (tx * tx + ty * ty);
            rx = c * tx;
            ry = c * ty;
            if (b && n <= kapn) {
                tx = qlambda + sx;
                sx = rx * tx - ry * sy;
                sy = ry * tx + rx * sy;
                qlambda /= h2;
            }
        }
        if (h == 0.0) {
            u = factor * rx;
            v = factor * ry;
        } else {
            u = factor * sx;
            v = factor * sy;
        }
        if (yabs == 0.0)
            u = std::exp(-xabs * xabs);
    }

    if (yi < 0.0) {
        if (a) {
            u2 *= 2.0;
            v2 *= 2.0;
        } else {
            xquad = -xquad;
            if (yquad > rmaxgoni || xquad > rmaxexp)
                throw OverflowError("faddeeva_w: result overflows in the lower half plane");
            const double w1 = 2.0 * std::exp(xquad);
            u2 = w1 * std::cos(yquad);
            v2 = -w1 * std::sin(yquad);
        }
        u = u2 - u;
        v = v2 - v;
        if (xi > 0.0)
            v = -v;
    } else if (xi < 0.0) {
        v = -v;
    }
    return {u, v};
}

namespace {

// erf(zeta) for any zeta, via w in the upper half plane.
cplx erf_complex(cplx zeta)
{
    if (std::abs(zeta) < 1.0) {
        // Maclaurin series: erf = 2/sqrt(pi) sum (-1)^n zeta^{2n+1} / (n! (2n+1)).
        const cplx z2 = zeta * zeta;
        cplx term = zeta;
        cplx sum = zeta;
        for (int n = 1; n < 60; ++n) {
            term *= -z2 / static_cast<double>(n);
            const cplx add = term / static_cast<double>(2 * n + 1);
            sum += add;
            if (std::abs(add) < 1e-17 * std::abs(sum))
                break;
        }
        return sum * (2.0 / std::sqrt(std::numbers::pi));
    }
    if (zeta.real() < 0.0)
        return -erf_complex(-zeta);
    const cplx mz2 = -zeta * zeta;
    if (mz2.real() > 708.0)
        throw OverflowError("faddeeva_erfi: result exceeds the double range");
    return 1.0 - std::exp(mz2) * faddeeva_w(I_UNIT * zeta);
}

// Sum of the two half-line Gaussian transforms that make up the wave-packet
// kernels:
//   e^{-xp^2/4z^2 - s i p xp} [1 - s i Erfi(xp/2z + s i p/2sig)]
// + e^{-xm^2/4z^2 - s i p xm} [1 + s i Erfi(xm/2z + s i p/2sig)].
// With a = x/2z + s i q and q = p/2sig each piece equals e^{-q^2} w(-+s a),
// which stays finite far from the packet.
cplx half_line_pair(const WavePacketSpec& w, int s, double xp, double xm)
{
    const double zeta = w.zeta_in;
    const double q = w.p_in / (2.0 * w.sigma_in);
    const double sd = static_cast<double>(s);
    const double damp = std::exp(-q * q);
    auto piece = [&](double xx, double side) {
        const cplx a{xx / (2.0 * zeta), sd * q};
        const cplx val = damp * faddeeva_w(-side * sd * a);
        if (!std::isfinite(val.real()) || !std::isfinite(val.imag()))
            throw OverflowError("wave-packet kernel overflow");
        return val;
    };
    return piece(xp, 1.0) + piece(xm, -1.0);
}

}  // namespace

cplx faddeeva_erfi(cplx z)
{
    if (!(std::abs(z) < 30.0))
        throw OverflowError("faddeeva_erfi: |z| outside the validity window |z| < 30");
    return -I_UNIT * erf_complex(I_UNIT * z);
}

cplx omega_in(const WavePacketSpec& w, int sign, double t)
{
    if (sign != 1 && sign != -1)
        throw ValidationError("omega_in: sign must be +1 or -1");
    if (!(t >= 0.0))
        throw ValidationError("omega_in: t must be non-negative");
    if (w.Gamma == 0.0)
        return 0.0;
    const double k_in = std::pow(2.0 * std::numbers::pi, -0.25) * std::sqrt(w.Gamma * w.c / w.zeta_in) / 2.0;
    const double xt = w.x_in + w.c * t;
    const double xmt = w.x_in - w.c * t;
    return I_UNIT * k_in * half_line_pair(w, sign, xt, xmt);
}

std::vector<KickTime> omega_out_kick_times(double x_out, double t_out, double c)
{
    if (!(t_out >= 0.0))
        throw ValidationError("omega_out_kick_times: t_out must be non-negative");
    if (!(c > 0.0))
        throw ValidationError("omega_out_kick_times: c must be positive");
    const double t_star = t_out - std::abs(x_out) / c;
    if (t_star < 0.0)
        return {};
    // Two coincident boundary deltas at x_out = 0 each carry half weight; they
    // merge into a single full-weight kick.
    if (t_star == 0.0 && t_out > 0.0)
        return {{0.0, 0.5}};
    return {{t_star, 1.0}};
}

cplx free_field_overlap(const WavePacketSpec& w, const OutputProfile& g_out, double x_out, double t_out)
{
    if (!(g_out.dx > 0.0))
        throw ValidationError("free_field_overlap: dx must be positive");
    if (!(t_out >= 0.0))
        throw ValidationError("free_field_overlap: t_out must be non-negative");
    const double dx_t = x_out - w.x_in + w.c * t_out;
    const double dx_mt = x_out - w.x_in - w.c * t_out;
    const double pref = std::sqrt(g_out.dx / w.zeta_in) / (2.0 * std::pow(2.0 * std::numbers::pi, 0.25));
    return pref * half_line_pair(w, 1, dx_mt, dx_t);
}

}  // namespace iohoem
