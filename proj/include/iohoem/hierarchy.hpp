#pragma once

// Extended auxiliary-density-matrix hierarchy: index space, sparse block
// generator (regular, dimensionally uniform, and field-extended forms),
// reconstruction of reduced field-weighted matrices, and time propagation.
//
// Frame: the system evolves in the Schroedinger picture (every ADM carries
// -i[H_S, .]); bath and field correlations are the free-bath ones.

#include "iohoem/correlations.hpp"
#include "iohoem/ode.hpp"
#include "iohoem/operators.hpp"
#include "iohoem/wick.hpp"

#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

namespace iohoem {

struct SystemModel {
    ComplexMatrix hamiltonian;
    std::vector<ComplexMatrix> couplings;  // s^q

    std::size_t dim() const { return hamiltonian.rows(); }
    // Labels alpha = 2q + side; side 0: rho -> s^q rho, side 1: rho -> -rho s^q.
    std::size_t n_alpha() const { return 2 * couplings.size(); }
    SuperOperator interaction_superop(std::size_t alpha) const;
    std::vector<SuperOperator> interaction_superops() const;
};

// One factor pair of the influence superoperator: A int D B.
struct InfluenceTerm {
    SuperOperator A;
    SuperOperator B;
    ExponentialSeries D;
};

// Correlation table of a single hermitian coupling with bath correlation
// C(t): entries (alpha, left) = C and (alpha, right) = conj(C).
CorrelationTable single_coupling_table(const ExponentialSeries& c);
// A^alpha = -S^alpha, B^{alpha beta} = S^beta, D^{alpha beta} = table entry.
std::vector<InfluenceTerm> direct_form(const SystemModel& system, const CorrelationTable& table);
// A = -[s, .]; B+ = s . with D+ = C; B- = -. s with D- = conj(C).
std::vector<InfluenceTerm> causal_form(const ComplexMatrix& s, const ExponentialSeries& c);
// A = -[s, .]; B_R = [s, .] with C_R; B_I = i{s, .} with C_I (C = C_R + i C_I).
std::vector<InfluenceTerm> real_form(const ComplexMatrix& s, const ExponentialSeries& c_real,
                                     const ExponentialSeries& c_imag);

enum class FieldRole { Dynamic, Static };
enum class FieldSide { Left, Right };

struct FieldSpec {
    int label = 0;  // label used by the Wick series (1-based)
    FieldRole role = FieldRole::Static;
    FieldSide side = FieldSide::Left;
    // One kernel per interaction label alpha. Dynamic fields: exponential
    // series in the lag t - tau. Static fields: callable of the absolute time
    // tau, or an exponential series evaluated at |tau - t_field|.
    std::vector<CrossCorrelationFn> kernels;
    double t_field = 0.0;
    double domain_begin = 0.0;
    double domain_end = std::numeric_limits<double>::infinity();
};

struct HierarchySpec {
    SystemModel system;
    CorrelationTable bath;
    // Factorized influence; when empty the direct form of `bath` is used.
    std::vector<InfluenceTerm> influence;
    std::vector<FieldSpec> dynamic_fields;
    std::vector<FieldSpec> static_fields;
    int max_tier = 0;
    cplx alpha0{0.0, -1.0};
    bool scaled = false;
    std::size_t max_adms = 4'000'000;
};

struct AdmIndex {
    std::vector<int> n;         // regular counts over sigma
    std::vector<int> n_phi;     // dynamic-field units over eta
    std::vector<int> n_static;  // static-field flags

    int tier() const;        // sum n
    int field_tier() const;  // sum n_phi + sum n_static
    bool operator==(const AdmIndex& o) const = default;
};

struct Sigma {
    std::size_t term;  // influence term
    std::size_t k;     // exponential within the term
    cplx a;
    cplx b;
};

struct Eta {
    std::size_t field;  // position in dynamic_fields
    std::size_t alpha;
    std::size_t k;
    cplx c;
    cplx gamma;
};

class IndexSpace {
public:
    IndexSpace(std::size_t n_sigma, std::vector<std::vector<std::size_t>> eta_by_field, std::size_t n_eta,
               std::size_t n_static, int max_tier, std::size_t max_adms);

    std::size_t size() const { return indexes_.size(); }
    const AdmIndex& operator[](std::size_t slot) const { return indexes_[slot]; }
    const std::vector<AdmIndex>& indexes() const { return indexes_; }
    // Slot of an index, or npos when the index is outside the space.
    std::size_t find(const AdmIndex& idx) const;
    static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

private:
    struct KeyHash {
        std::size_t operator()(const std::vector<int>& v) const;
    };
    static std::vector<int> key(const AdmIndex& idx);
    std::vector<AdmIndex> indexes_;
    std::unordered_map<std::vector<int>, std::size_t, KeyHash> lookup_;
};

struct HierarchyState {
    double time = 0.0;
    std::size_t dim = 0;
    std::shared_ptr<const IndexSpace> space;
    std::vector<cplx> data;  // slot-major, each slot a column-stacked dim x dim block

    ComplexMatrix adm(std::size_t slot) const;
    ComplexMatrix adm(const AdmIndex& idx) const;
    ComplexMatrix root() const;
};

// One block coupling of the sparse generator: row += coef * kernel(t) * op * col.
struct GeneratorEntry {
    std::uint32_t col;
    std::int32_t op;      // -1 for the identity
    std::int32_t kernel;  // -1 for constant coefficients
    cplx coef;
};

class Hierarchy {
public:
    explicit Hierarchy(HierarchySpec spec);

    const HierarchySpec& spec() const { return spec_; }
    const IndexSpace& space() const { return *space_; }
    std::shared_ptr<const IndexSpace> space_ptr() const { return space_; }
    const std::vector<Sigma>& sigmas() const { return sigmas_; }
    const std::vector<Eta>& etas() const { return etas_; }
    std::size_t dim() const { return dim_; }
    std::size_t state_size() const { return space_->size() * dim_ * dim_; }

    // Derivative of the flattened state (OpenMP over ADM rows).
    void rhs(double t, const cplx* x, cplx* y) const;
    // Single-threaded reference implementation of rhs.
    void rhs_serial(double t, const cplx* x, cplx* y) const;

    HierarchyState initial_state(const ComplexMatrix& rho0, double t0 = 0.0) const;
    HierarchyState derivative(const HierarchyState& state, double t) const;

    struct Kick {
        double time;
        SuperOperator op;  // applied to every ADM
    };
    std::vector<HierarchyState> integrate(const ComplexMatrix& rho0, const std::vector<double>& t_grid,
                                          const std::vector<Kick>& events = {}, const OdeOptions& opts = {},
                                          double t0 = 0.0, OdeStats* stats = nullptr) const;

    // Reduced matrices for each requested complement set of field labels.
    std::map<Subset, ComplexMatrix> reconstruct(const HierarchyState& state,
                                                const std::vector<Subset>& request) const;

    // Sparse generator access (row pointers and entries) for structural checks.
    const std::vector<std::size_t>& row_ptr() const { return row_ptr_; }
    const std::vector<GeneratorEntry>& entries() const { return entries_; }
    // True when no entry couples a column of larger field tier into a row.
    bool tier_bounded() const;

private:
    void build_generator();
    void eval_kernels(double t, std::vector<cplx>& vals) const;
    void apply_row(std::size_t row, const cplx* x, cplx* y, const std::vector<cplx>& kvals) const;
    void check_state(const HierarchyState& s) const;

    HierarchySpec spec_;
    std::size_t dim_ = 0;
    std::vector<SuperOperator> s_alpha_;
    std::vector<InfluenceTerm> influence_;
    std::vector<Sigma> sigmas_;
    std::vector<Eta> etas_;
    std::shared_ptr<const IndexSpace> space_;
    std::vector<ComplexMatrix> ops_;
    std::vector<std::size_t> row_ptr_;
    std::vector<GeneratorEntry> entries_;
};

// Free-function interface.
std::vector<AdmIndex> build_index_space(const HierarchySpec& spec);
HierarchyState heom0_rhs(const HierarchySpec& spec, const HierarchyState& state);
HierarchyState heom0_rhs_scaled(const HierarchySpec& spec, const HierarchyState& state);
HierarchyState extended_rhs(const HierarchySpec& spec, const HierarchyState& state, double t);
std::map<Subset, ComplexMatrix> reconstruct(const HierarchySpec& spec, const HierarchyState& state,
                                            const std::vector<Subset>& request);
std::vector<HierarchyState> integrate(const HierarchySpec& spec, const ComplexMatrix& rho0,
                                      const std::vector<double>& t_grid,
                                      const std::vector<Hierarchy::Kick>& events = {},
                                      const OdeOptions& opts = {});

}  // namespace iohoem
