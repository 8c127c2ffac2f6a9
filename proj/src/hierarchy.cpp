#include "iohoem/hierarchy.hpp"

#include "iohoem/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <omp.h>

namespace iohoem {

// ---------------------------------------------------------------------------
// System model and influence factorizations

SuperOperator SystemModel::interaction_superop(std::size_t alpha) const
{
    if (alpha >= n_alpha())
        throw ValidationError("interaction label out of range");
    const ComplexMatrix& s = couplings[alpha / 2];
    return alpha % 2 == 0 ? left_mul_super(s) : -right_mul_super(s);
}

std::vector<SuperOperator> SystemModel::interaction_superops() const
{
    std::vector<SuperOperator> out;
    for (std::size_t a = 0; a < n_alpha(); ++a)
        out.push_back(interaction_superop(a));
    return out;
}

CorrelationTable single_coupling_table(const ExponentialSeries& c)
{
    CorrelationTable t(2);
    for (std::size_t a = 0; a < 2; ++a) {
        t.at(a, 0) = c;
        t.at(a, 1) = c.conjugate();
    }
    return t;
}

std::vector<InfluenceTerm> direct_form(const SystemModel& system, const CorrelationTable& table)
{
    if (table.n_alpha() != 0 && table.n_alpha() != system.n_alpha())
        throw ValidationError("correlation table size does not match the number of interaction labels");
    std::vector<InfluenceTerm> out;
    if (table.n_alpha() == 0)
        return out;
    const auto s = system.interaction_superops();
    for (std::size_t a = 0; a < s.size(); ++a)
        for (std::size_t b = 0; b < s.size(); ++b) {
            const auto& d = table.at(a, b);
            if (!d.empty())
                out.push_back({-s[a], s[b], d});
        }
    return out;
}

std::vector<InfluenceTerm> causal_form(const ComplexMatrix& s, const ExponentialSeries& c)
{
    const SuperOperator a = -commutator_super(s);
    return {{a, left_mul_super(s), c}, {a, -right_mul_super(s), c.conjugate()}};
}

std::vector<InfluenceTerm> real_form(const ComplexMatrix& s, const ExponentialSeries& c_real,
                                     const ExponentialSeries& c_imag)
{
    const SuperOperator a = -commutator_super(s);
    std::vector<InfluenceTerm> out;
    if (!c_real.empty())
        out.push_back({a, commutator_super(s), c_real});
    if (!c_imag.empty())
        out.push_back({a, anticommutator_super(s) * I_UNIT, c_imag});
    return out;
}

// ---------------------------------------------------------------------------
// Index space

int AdmIndex::tier() const { return std::accumulate(n.begin(), n.end(), 0); }

int AdmIndex::field_tier() const
{
    return std::accumulate(n_phi.begin(), n_phi.end(), 0) + std::accumulate(n_static.begin(), n_static.end(), 0);
}

std::size_t IndexSpace::KeyHash::operator()(const std::vector<int>& v) const
{
    std::uint64_t h = 1469598103934665603ULL;
    for (int x : v) {
        h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(x));
        h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
}

std::vector<int> IndexSpace::key(const AdmIndex& idx)
{
    std::vector<int> k;
    k.reserve(idx.n.size() + idx.n_phi.size() + idx.n_static.size() + 2);
    k.insert(k.end(), idx.n.begin(), idx.n.end());
    k.push_back(-1);
    k.insert(k.end(), idx.n_phi.begin(), idx.n_phi.end());
    k.push_back(-1);
    k.insert(k.end(), idx.n_static.begin(), idx.n_static.end());
    return k;
}

namespace {

void compositions(std::size_t dims, int total, std::vector<int>& cur, std::size_t pos,
                  std::vector<std::vector<int>>& out)
{
    if (pos + 1 == dims) {
        cur[pos] = total;
        out.push_back(cur);
        return;
    }
    for (int v = total; v >= 0; --v) {
        cur[pos] = v;
        compositions(dims, total - v, cur, pos + 1, out);
    }
}

double binomial_d(double n, double k)
{
    double r = 1.0;
    for (int i = 1; i <= static_cast<int>(k); ++i)
        r = r * (n - k + i) / i;
    return r;
}

}  // namespace

IndexSpace::IndexSpace(std::size_t n_sigma, std::vector<std::vector<std::size_t>> eta_by_field, std::size_t n_eta,
                       std::size_t n_static, int max_tier, std::size_t max_adms)
{
    if (max_tier < 0)
        throw ValidationError("max_tier must be non-negative");
    const int nmax = n_sigma == 0 ? 0 : max_tier;
    double patterns = std::ldexp(1.0, static_cast<int>(n_static));
    for (const auto& f : eta_by_field)
        patterns *= static_cast<double>(f.size() + 1);
    const double regular = binomial_d(static_cast<double>(n_sigma + nmax), static_cast<double>(nmax));
    if (regular * patterns > static_cast<double>(max_adms))
        throw ValidationError("hierarchy index budget exceeded: " + std::to_string(regular * patterns) +
                              " ADMs > cap " + std::to_string(max_adms));

    std::vector<std::vector<int>> regs;
    if (n_sigma == 0) {
        regs.emplace_back();
    } else {
        std::vector<int> cur(n_sigma, 0);
        for (int tier = 0; tier <= nmax; ++tier)
            compositions(n_sigma, tier, cur, 0, regs);
    }

    // Field patterns: per dynamic field "none" or one eta; per static field a flag.
    struct Pattern {
        std::vector<int> phi;
        std::vector<int> stat;
        int tier;
    };
    std::vector<Pattern> pats;
    const std::size_t n_dyn = eta_by_field.size();
    std::vector<std::size_t> choice(n_dyn, 0);
    const std::size_t n_static_patterns = std::size_t{1} << n_static;
    while (true) {
        for (std::size_t bits = 0; bits < n_static_patterns; ++bits) {
            Pattern p;
            p.phi.assign(n_eta, 0);
            p.stat.assign(n_static, 0);
            p.tier = 0;
            for (std::size_t f = 0; f < n_dyn; ++f)
                if (choice[f] > 0) {
                    p.phi[eta_by_field[f][choice[f] - 1]] = 1;
                    ++p.tier;
                }
            for (std::size_t j = 0; j < n_static; ++j)
                if (bits & (std::size_t{1} << j)) {
                    p.stat[j] = 1;
                    ++p.tier;
                }
            pats.push_back(std::move(p));
        }
        std::size_t f = 0;
        while (f < n_dyn) {
            if (++choice[f] <= eta_by_field[f].size())
                break;
            choice[f] = 0;
            ++f;
        }
        if (f == n_dyn)
            break;
    }
    std::stable_sort(pats.begin(), pats.end(), [](const Pattern& a, const Pattern& b) { return a.tier < b.tier; });

    indexes_.reserve(pats.size() * regs.size());
    for (const auto& p : pats)
        for (const auto& r : regs)
            indexes_.push_back(AdmIndex{r, p.phi, p.stat});
    lookup_.reserve(indexes_.size());
    for (std::size_t i = 0; i < indexes_.size(); ++i)
        lookup_.emplace(key(indexes_[i]), i);
}

std::size_t IndexSpace::find(const AdmIndex& idx) const
{
    auto it = lookup_.find(key(idx));
    return it == lookup_.end() ? npos : it->second;
}

// ---------------------------------------------------------------------------
// State

ComplexMatrix HierarchyState::adm(std::size_t slot) const
{
    if (!space || slot >= space->size())
        throw ValidationError("ADM slot out of range");
    const std::size_t d2 = dim * dim;
    std::vector<cplx> v(data.begin() + static_cast<std::ptrdiff_t>(slot * d2),
                        data.begin() + static_cast<std::ptrdiff_t>((slot + 1) * d2));
    return unvec(v, dim);
}

ComplexMatrix HierarchyState::adm(const AdmIndex& idx) const
{
    if (!space)
        throw ValidationError("state has no index space");
    const std::size_t slot = space->find(idx);
    if (slot == IndexSpace::npos)
        throw ValidationError("ADM index outside the hierarchy");
    return adm(slot);
}

ComplexMatrix HierarchyState::root() const { return adm(0); }

// ---------------------------------------------------------------------------
// Generator

Hierarchy::Hierarchy(HierarchySpec spec) : spec_(std::move(spec))
{
    const auto& sys = spec_.system;
    if (!sys.hamiltonian.square() || sys.hamiltonian.rows() == 0)
        throw ValidationError("system Hamiltonian must be square and non-empty");
    dim_ = sys.dim();
    for (const auto& s : sys.couplings)
        if (s.rows() != dim_ || s.cols() != dim_)
            throw ValidationError("coupling operator dimension differs from the Hamiltonian");
    if (spec_.alpha0 == cplx{})
        throw ValidationError("alpha0 must be non-zero");
    if (spec_.max_tier < 0)
        throw ValidationError("max_tier must be non-negative");

    s_alpha_ = sys.interaction_superops();
    influence_ = spec_.influence.empty() ? direct_form(sys, spec_.bath) : spec_.influence;
    for (std::size_t t = 0; t < influence_.size(); ++t) {
        const auto& term = influence_[t];
        if (term.A.dim != dim_ || term.B.dim != dim_)
            throw ValidationError("influence superoperator dimension mismatch");
        validate_series(term.D);
        for (std::size_t k = 0; k < term.D.terms.size(); ++k) {
            const auto& e = term.D.terms[k];
            if (e.a == cplx{}) {
                if (spec_.scaled)
                    throw ValidationError("scaled hierarchy requires non-zero amplitudes a (sqrt scaling undefined)");
                continue;
            }
            sigmas_.push_back({t, k, e.a, e.b});
        }
    }

    std::vector<int> labels;
    auto check_field = [&](const FieldSpec& f) {
        if (f.label < 1)
            throw ValidationError("field labels must be positive");
        if (std::find(labels.begin(), labels.end(), f.label) != labels.end())
            throw ValidationError("duplicate field label " + std::to_string(f.label));
        labels.push_back(f.label);
        if (f.kernels.size() != s_alpha_.size())
            throw ValidationError("field " + std::to_string(f.label) + ": missing kernel (one per interaction label)");
    };
    std::vector<std::vector<std::size_t>> eta_by_field;
    for (std::size_t j = 0; j < spec_.dynamic_fields.size(); ++j) {
        const auto& f = spec_.dynamic_fields[j];
        check_field(f);
        if (f.role != FieldRole::Dynamic)
            throw ValidationError("field in dynamic_fields is not marked dynamic");
        std::vector<std::size_t> ids;
        for (std::size_t a = 0; a < f.kernels.size(); ++a) {
            if (!f.kernels[a].is_exponential())
                throw ValidationError("dynamic field " + std::to_string(f.label) + " needs an exponential kernel");
            const auto& ser = f.kernels[a].series();
            validate_series(ser);
            for (std::size_t k = 0; k < ser.terms.size(); ++k) {
                if (ser.terms[k].a == cplx{})
                    continue;
                ids.push_back(etas_.size());
                etas_.push_back({j, a, k, ser.terms[k].a, ser.terms[k].b});
            }
        }
        eta_by_field.push_back(std::move(ids));
    }
    for (const auto& f : spec_.static_fields) {
        check_field(f);
        if (f.role != FieldRole::Static)
            throw ValidationError("field in static_fields is not marked static");
        if (!(f.domain_begin <= f.domain_end))
            throw ValidationError("static field domain is empty");
        if (spec_.static_fields.size() > 30)
            throw ValidationError("too many static fields");
    }

    space_ = std::make_shared<IndexSpace>(sigmas_.size(), eta_by_field, etas_.size(), spec_.static_fields.size(),
                                          spec_.max_tier, spec_.max_adms);
    build_generator();
}

void Hierarchy::build_generator()
{
    // Operator table: [0, n_alpha) interaction superops, then A and B per
    // influence term, then the free Liouvillian.
    ops_.clear();
    for (const auto& s : s_alpha_)
        ops_.push_back(s.matrix);
    const std::int32_t a_base = static_cast<std::int32_t>(ops_.size());
    for (const auto& term : influence_) {
        ops_.push_back(term.A.matrix);
        ops_.push_back(term.B.matrix);
    }
    std::int32_t free_op = -1;
    if (spec_.system.hamiltonian.max_abs() > 0.0) {
        free_op = static_cast<std::int32_t>(ops_.size());
        ops_.push_back((commutator_super(spec_.system.hamiltonian) * (-I_UNIT)).matrix);
    }

    const auto& space = *space_;
    const std::size_t n_alpha = s_alpha_.size();
    row_ptr_.assign(1, 0);
    entries_.clear();
    for (std::size_t slot = 0; slot < space.size(); ++slot) {
        const AdmIndex& idx = space[slot];
        const int tier = idx.tier();

        cplx diag = 0.0;
        for (std::size_t s = 0; s < sigmas_.size(); ++s)
            diag -= static_cast<double>(idx.n[s]) * sigmas_[s].b;
        for (std::size_t e = 0; e < etas_.size(); ++e)
            diag -= static_cast<double>(idx.n_phi[e]) * etas_[e].gamma;
        if (free_op >= 0)
            entries_.push_back({static_cast<std::uint32_t>(slot), free_op, -1, 1.0});
        if (diag != cplx{})
            entries_.push_back({static_cast<std::uint32_t>(slot), -1, -1, diag});

        for (std::size_t s = 0; s < sigmas_.size(); ++s) {
            const Sigma& sg = sigmas_[s];
            const auto term_ops = a_base + 2 * static_cast<std::int32_t>(sg.term);
            const double ns = idx.n[s];
            if (idx.n[s] > 0) {
                AdmIndex lower = idx;
                --lower.n[s];
                const std::size_t col = space.find(lower);
                const cplx coef = spec_.scaled ? spec_.alpha0 * std::sqrt(ns) * std::sqrt(sg.a)
                                               : spec_.alpha0 * ns * sg.a;
                entries_.push_back({static_cast<std::uint32_t>(col), term_ops + 1, -1, coef});
            }
            if (tier < spec_.max_tier) {
                AdmIndex upper = idx;
                ++upper.n[s];
                const std::size_t col = space.find(upper);
                const cplx coef = spec_.scaled ? std::sqrt(ns + 1.0) * std::sqrt(sg.a) / spec_.alpha0
                                               : 1.0 / spec_.alpha0;
                entries_.push_back({static_cast<std::uint32_t>(col), term_ops, -1, coef});
            }
        }

        for (std::size_t e = 0; e < etas_.size(); ++e) {
            if (idx.n_phi[e] == 0)
                continue;
            AdmIndex lower = idx;
            lower.n_phi[e] = 0;
            const std::size_t col = space.find(lower);
            entries_.push_back({static_cast<std::uint32_t>(col), static_cast<std::int32_t>(etas_[e].alpha), -1,
                                etas_[e].c});
        }
        for (std::size_t j = 0; j < idx.n_static.size(); ++j) {
            if (idx.n_static[j] == 0)
                continue;
            AdmIndex lower = idx;
            lower.n_static[j] = 0;
            const std::size_t col = space.find(lower);
            for (std::size_t a = 0; a < n_alpha; ++a)
                entries_.push_back({static_cast<std::uint32_t>(col), static_cast<std::int32_t>(a),
                                    static_cast<std::int32_t>(j * n_alpha + a), 1.0});
        }
        row_ptr_.push_back(entries_.size());
    }
}

void Hierarchy::eval_kernels(double t, std::vector<cplx>& vals) const
{
    const std::size_t n_alpha = s_alpha_.size();
    vals.assign(spec_.static_fields.size() * n_alpha, 0.0);
    for (std::size_t j = 0; j < spec_.static_fields.size(); ++j) {
        const auto& f = spec_.static_fields[j];
        if (t < f.domain_begin || t > f.domain_end)
            throw ValidationError("time " + std::to_string(t) + " outside the kernel domain of static field " +
                                  std::to_string(f.label));
        for (std::size_t a = 0; a < n_alpha; ++a) {
            const auto& k = f.kernels[a];
            vals[j * n_alpha + a] = k.is_exponential() ? eval_series(k.series(), std::abs(t - f.t_field)) : k(t);
        }
    }
}

void Hierarchy::apply_row(std::size_t row, const cplx* x, cplx* y, const std::vector<cplx>& kvals) const
{
    const std::size_t d2 = dim_ * dim_;
    cplx* out = y + row * d2;
    for (std::size_t i = 0; i < d2; ++i)
        out[i] = 0.0;
    for (std::size_t e = row_ptr_[row]; e < row_ptr_[row + 1]; ++e) {
        const GeneratorEntry& en = entries_[e];
        cplx coef = en.coef;
        if (en.kernel >= 0) {
            coef *= kvals[static_cast<std::size_t>(en.kernel)];
            if (coef == cplx{})
                continue;
        }
        const cplx* in = x + static_cast<std::size_t>(en.col) * d2;
        if (en.op < 0) {
            for (std::size_t i = 0; i < d2; ++i)
                out[i] += coef * in[i];
            continue;
        }
        const auto& m = ops_[static_cast<std::size_t>(en.op)].entries();
        for (std::size_t r = 0; r < d2; ++r) {
            cplx acc = 0.0;
            const cplx* mr = m.data() + r * d2;
            for (std::size_t c = 0; c < d2; ++c)
                acc += mr[c] * in[c];
            out[r] += coef * acc;
        }
    }
}

void Hierarchy::rhs(double t, const cplx* x, cplx* y) const
{
    std::vector<cplx> kvals;
    eval_kernels(t, kvals);
    const auto rows = static_cast<std::int64_t>(space_->size());
#pragma omp parallel for schedule(static)
    for (std::int64_t r = 0; r < rows; ++r)
        apply_row(static_cast<std::size_t>(r), x, y, kvals);
}

void Hierarchy::rhs_serial(double t, const cplx* x, cplx* y) const
{
    std::vector<cplx> kvals;
    eval_kernels(t, kvals);
    for (std::size_t r = 0; r < space_->size(); ++r)
        apply_row(r, x, y, kvals);
}

bool Hierarchy::tier_bounded() const
{
    for (std::size_t r = 0; r < space_->size(); ++r) {
        const int row_tier = (*space_)[r].field_tier();
        for (std::size_t e = row_ptr_[r]; e < row_ptr_[r + 1]; ++e) {
            const int col_tier = (*space_)[entries_[e].col].field_tier();
            if (col_tier > row_tier || row_tier - col_tier > 1)
                return false;
        }
    }
    return true;
}

HierarchyState Hierarchy::initial_state(const ComplexMatrix& rho0, double t0) const
{
    if (rho0.rows() != dim_ || rho0.cols() != dim_)
        throw ValidationError("initial state dimension differs from the system");
    HierarchyState s;
    s.time = t0;
    s.dim = dim_;
    s.space = space_;
    s.data.assign(state_size(), 0.0);
    const auto v = vec(rho0);
    std::copy(v.begin(), v.end(), s.data.begin());
    return s;
}

void Hierarchy::check_state(const HierarchyState& s) const
{
    if (s.dim != dim_ || !s.space || s.data.size() != state_size())
        throw ValidationError("state does not belong to this hierarchy (index out of space)");
    if (s.space != space_ && s.space->indexes() != space_->indexes())
        throw ValidationError("state does not belong to this hierarchy (index out of space)");
}

HierarchyState Hierarchy::derivative(const HierarchyState& state, double t) const
{
    check_state(state);
    HierarchyState d = state;
    d.time = t;
    d.space = space_;
    rhs(t, state.data.data(), d.data.data());
    return d;
}

std::vector<HierarchyState> Hierarchy::integrate(const ComplexMatrix& rho0, const std::vector<double>& t_grid,
                                                 const std::vector<Kick>& events, const OdeOptions& opts, double t0,
                                                 OdeStats* stats) const
{
    const HierarchyState init = initial_state(rho0, t0);
    const std::size_t d2 = dim_ * dim_;
    const std::size_t slots = space_->size();
    std::vector<OdeEvent> ode_events;
    for (const auto& k : events) {
        if (k.op.dim != dim_)
            throw ValidationError("kick superoperator dimension mismatch");
        const ComplexMatrix m = k.op.matrix;
        ode_events.push_back({k.time, [m, d2, slots](StateVector& y) {
                                  std::vector<cplx> block(d2);
                                  for (std::size_t s = 0; s < slots; ++s) {
                                      std::copy(y.begin() + static_cast<std::ptrdiff_t>(s * d2),
                                                y.begin() + static_cast<std::ptrdiff_t>((s + 1) * d2), block.begin());
                                      const auto out = m * block;
                                      std::copy(out.begin(), out.end(), y.begin() + static_cast<std::ptrdiff_t>(s * d2));
                                  }
                              }});
    }
    const double t_end = t_grid.empty() ? t0 : t_grid.back();
    for (const auto& f : spec_.static_fields)
        for (double bp : {f.t_field, f.domain_begin, f.domain_end})
            if (std::isfinite(bp) && bp > t0 && bp < t_end)
                ode_events.push_back({bp, {}});

    const RhsFn f = [this](double t, const cplx* x, cplx* y) { rhs(t, x, y); };
    const auto raw = integrate_ode(f, init.data, t0, t_grid, std::move(ode_events), opts, stats);
    std::vector<HierarchyState> out;
    out.reserve(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        HierarchyState s;
        s.time = t_grid[i];
        s.dim = dim_;
        s.space = space_;
        s.data = raw[i];
        out.push_back(std::move(s));
    }
    return out;
}

std::map<Subset, ComplexMatrix> Hierarchy::reconstruct(const HierarchyState& state,
                                                       const std::vector<Subset>& request) const
{
    check_state(state);
    std::map<Subset, ComplexMatrix> out;
    for (const auto& raw_set : request) {
        Subset set = raw_set;
        std::sort(set.begin(), set.end());
        // Per dynamic field the candidate eta list (empty when not requested),
        // per static field the required flag.
        std::vector<std::vector<std::size_t>> dyn_choices(spec_.dynamic_fields.size());
        std::vector<int> stat_flags(spec_.static_fields.size(), 0);
        for (int label : set) {
            bool found = false;
            for (std::size_t j = 0; j < spec_.dynamic_fields.size(); ++j)
                if (spec_.dynamic_fields[j].label == label) {
                    for (std::size_t e = 0; e < etas_.size(); ++e)
                        if (etas_[e].field == j)
                            dyn_choices[j].push_back(e);
                    found = true;
                }
            for (std::size_t j = 0; j < spec_.static_fields.size(); ++j)
                if (spec_.static_fields[j].label == label) {
                    stat_flags[j] = 1;
                    found = true;
                }
            if (!found)
                throw ValidationError("reconstruct: field " + std::to_string(label) + " is not configured");
        }
        ComplexMatrix sum(dim_, dim_);
        std::vector<std::size_t> pick(dyn_choices.size(), 0);
        bool empty_choice = false;
        for (std::size_t j = 0; j < dyn_choices.size(); ++j) {
            const bool requested = std::find(set.begin(), set.end(), spec_.dynamic_fields[j].label) != set.end();
            if (requested && dyn_choices[j].empty())
                empty_choice = true;
        }
        while (!empty_choice) {
            AdmIndex idx;
            idx.n.assign(sigmas_.size(), 0);
            idx.n_phi.assign(etas_.size(), 0);
            idx.n_static = stat_flags;
            for (std::size_t j = 0; j < dyn_choices.size(); ++j)
                if (!dyn_choices[j].empty())
                    idx.n_phi[dyn_choices[j][pick[j]]] = 1;
            sum += state.adm(idx);
            std::size_t j = 0;
            for (; j < dyn_choices.size(); ++j) {
                if (dyn_choices[j].empty())
                    continue;
                if (++pick[j] < dyn_choices[j].size())
                    break;
                pick[j] = 0;
            }
            if (j == dyn_choices.size())
                break;
        }
        out.emplace(set, sum);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Free functions

std::vector<AdmIndex> build_index_space(const HierarchySpec& spec) { return Hierarchy(spec).space().indexes(); }

namespace {

HierarchyState regular_rhs(HierarchySpec spec, const HierarchyState& state)
{
    if (!spec.dynamic_fields.empty() || !spec.static_fields.empty())
        throw ValidationError("regular hierarchy derivative requested for a spec with fields; use extended_rhs");
    const Hierarchy h(std::move(spec));
    return h.derivative(state, state.time);
}

}  // namespace

HierarchyState heom0_rhs(const HierarchySpec& spec, const HierarchyState& state)
{
    HierarchySpec s = spec;
    s.scaled = false;
    return regular_rhs(std::move(s), state);
}

HierarchyState heom0_rhs_scaled(const HierarchySpec& spec, const HierarchyState& state)
{
    HierarchySpec s = spec;
    s.scaled = true;
    return regular_rhs(std::move(s), state);
}

HierarchyState extended_rhs(const HierarchySpec& spec, const HierarchyState& state, double t)
{
    const Hierarchy h(spec);
    return h.derivative(state, t);
}

std::map<Subset, ComplexMatrix> reconstruct(const HierarchySpec& spec, const HierarchyState& state,
                                            const std::vector<Subset>& request)
{
    return Hierarchy(spec).reconstruct(state, request);
}

std::vector<HierarchyState> integrate(const HierarchySpec& spec, const ComplexMatrix& rho0,
                                      const std::vector<double>& t_grid, const std::vector<Hierarchy::Kick>& events,
                                      const OdeOptions& opts)
{
    return Hierarchy(spec).integrate(rho0, t_grid, events, opts);
}

}  // namespace iohoem
