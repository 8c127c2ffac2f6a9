#include "iohoem/ode.hpp"

#include "iohoem/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace iohoem {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

double scaled_rms(const StateVector& v, const StateVector& y, const OdeOptions& o)
{
    double s = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double sc = o.atol + o.rtol * std::abs(y[i]);
        const double r = std::abs(v[i]) / sc;
        s += r * r;
    }
    return v.empty() ? 0.0 : std::sqrt(s / static_cast<double>(v.size()));
}

bool all_finite(const StateVector& v)
{
    for (const auto& x : v)
        if (!std::isfinite(x.real()) || !std::isfinite(x.imag()))
            return false;
    return true;
}

class Stepper {
public:
    Stepper(const RhsFn& f, std::size_t n, const OdeOptions& o, OdeStats& st)
        : f_(f), o_(o), st_(st), k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), tmp(n), ynew(n), err(n)
    {
    }

    void eval(double t, const StateVector& y, StateVector& dy)
    {
        f_(t, y.data(), dy.data());
        ++st_.rhs_evals;
    }

    double initial_step(double t, const StateVector& y, double span)
    {
        if (o_.h_init > 0.0)
            return std::min(o_.h_init, span);
        eval(t, y, k1);
        const double d0 = scaled_rms(y, y, o_);
        const double d1 = scaled_rms(k1, y, o_);
        double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
        h0 = std::min(h0, span);
        for (std::size_t i = 0; i < y.size(); ++i)
            tmp[i] = y[i] + h0 * k1[i];
        eval(t + h0, tmp, k2);
        for (std::size_t i = 0; i < y.size(); ++i)
            k2[i] -= k1[i];
        const double d2 = scaled_rms(k2, y, o_) / h0;
        const double dm = std::max(d1, d2);
        const double h1 = dm <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / dm, 0.2);
        return std::min({100.0 * h0, h1, span, o_.h_max});
    }

    // Advances y from t to t_end exactly.
    void advance(double& t, StateVector& y, double t_end, double& h)
    {
        const std::size_t n = y.size();
        bool have_k1 = false;
        while (t < t_end) {
            if (st_.accepted + st_.rejected >= o_.max_steps)
                throw SolverError("integrator exceeded the maximum number of steps");
            bool last = false;
            double hs = std::min(h, o_.h_max);
            if (t + hs >= t_end || t_end - (t + hs) < 1e-12 * std::max(1.0, std::abs(t_end))) {
                hs = t_end - t;
                last = true;
            }
            if (!have_k1) {
                eval(t, y, k1);
                have_k1 = true;
            }
            for (std::size_t i = 0; i < n; ++i)
                tmp[i] = y[i] + hs * a21 * k1[i];
            eval(t + c2 * hs, tmp, k2);
            for (std::size_t i = 0; i < n; ++i)
                tmp[i] = y[i] + hs * (a31 * k1[i] + a32 * k2[i]);
            eval(t + c3 * hs, tmp, k3);
            for (std::size_t i = 0; i < n; ++i)
                tmp[i] = y[i] + hs * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
            eval(t + c4 * hs, tmp, k4);
            for (std::size_t i = 0; i < n; ++i)
                tmp[i] = y[i] + hs * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
            eval(t + c5 * hs, tmp, k5);
            for (std::size_t i = 0; i < n; ++i)
                tmp[i] = y[i] + hs * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
            const double t_new = last ? t_end : t + hs;
            eval(t_new, tmp, k6);
            for (std::size_t i = 0; i < n; ++i)
                ynew[i] = y[i] + hs * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
            eval(t_new, ynew, k7);
            for (std::size_t i = 0; i < n; ++i)
                err[i] = hs * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);

            double en = 0.0;
            {
                double s = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    const double sc = o_.atol + o_.rtol * std::max(std::abs(y[i]), std::abs(ynew[i]));
                    const double r = std::abs(err[i]) / sc;
                    s += r * r;
                }
                en = n ? std::sqrt(s / static_cast<double>(n)) : 0.0;
            }

            if (!std::isfinite(en)) {
                ++st_.rejected;
                h = hs * 0.1;
                if (h < 1e-14 * std::max(1.0, std::abs(t)))
                    throw SolverError("integrator encountered non-finite values");
                continue;
            }
            if (en <= 1.0) {
                ++st_.accepted;
                t = t_new;
                std::swap(y, ynew);
                std::swap(k1, k7);
                if (!all_finite(y))
                    throw SolverError("integrator encountered non-finite values");
                const double fac = en == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(en, -0.2), 0.2, 5.0);
                if (!last || fac < 1.0)
                    h = hs * fac;
            } else {
                ++st_.rejected;
                h = hs * std::max(0.2, 0.9 * std::pow(en, -0.2));
            }
            if (h < 1e-14 * std::max(1.0, std::abs(t)))
                throw SolverError("integrator step size underflow");
        }
    }

private:
    const RhsFn& f_;
    const OdeOptions& o_;
    OdeStats& st_;
    StateVector k1, k2, k3, k4, k5, k6, k7, tmp, ynew, err;
};

}  // namespace

std::vector<StateVector> integrate_ode(const RhsFn& f, StateVector y, double t0, const std::vector<double>& t_grid,
                                       std::vector<OdeEvent> events, const OdeOptions& opts, OdeStats* stats)
{
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        if (!std::isfinite(t_grid[i]) || t_grid[i] < t0 || (i > 0 && t_grid[i] < t_grid[i - 1]))
            throw ValidationError("integrate: output times must be finite, >= t0 and non-decreasing");
    }
    if (!(opts.rtol > 0.0) || !(opts.atol > 0.0))
        throw ValidationError("integrate: tolerances must be positive");
    if (opts.rtol < 100.0 * std::numeric_limits<double>::epsilon())
        throw SolverError("integrator cannot reach a relative tolerance below 100 machine epsilon");
    const double t_last = t_grid.empty() ? t0 : t_grid.back();
    for (const auto& e : events)
        if (!(e.time >= t0) || e.time > t_last)
            throw ValidationError("integrate: event time outside the integration range");
    std::stable_sort(events.begin(), events.end(),
                     [](const OdeEvent& a, const OdeEvent& b) { return a.time < b.time; });
    if (!all_finite(y))
        throw SolverError("integrator encountered non-finite initial values");

    OdeStats local;
    OdeStats& st = stats ? *stats : local;
    Stepper stepper(f, y.size(), opts, st);

    std::vector<StateVector> out;
    out.reserve(t_grid.size());
    double t = t0;
    double h = 0.0;
    std::size_t ei = 0;
    auto apply_events_at = [&](double when) {
        while (ei < events.size() && events[ei].time <= when) {
            if (events[ei].apply)
                events[ei].apply(y);
            ++ei;
        }
    };
    apply_events_at(t);
    for (double tg : t_grid) {
        while (t < tg) {
            const double stop = (ei < events.size() && events[ei].time < tg) ? events[ei].time : tg;
            if (stop > t) {
                if (h <= 0.0)
                    h = stepper.initial_step(t, y, stop - t);
                stepper.advance(t, y, stop, h);
            }
            t = stop;
            apply_events_at(t);
        }
        apply_events_at(t);
        out.push_back(y);
    }
    return out;
}

}  // namespace iohoem
