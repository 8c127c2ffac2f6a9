#include "iohoem/wick.hpp"

#include "iohoem/errors.hpp"

#include <algorithm>
#include <string>

namespace iohoem {

namespace {

constexpr int MAX_FIELDS = 16;

using u128 = unsigned __int128;

std::uint64_t checked(u128 v)
{
    if (v > static_cast<u128>(UINT64_MAX))
        throw ValidationError("combinatorial count exceeds 64-bit range");
    return static_cast<std::uint64_t>(v);
}

u128 falling_factorial(int n, int count)
{
    u128 r = 1;
    for (int i = 0; i < count; ++i)
        r *= static_cast<u128>(n - i);
    return r;
}

void matchings_rec(std::vector<int>& rest, Pairing& cur, std::vector<Pairing>& out)
{
    if (rest.empty()) {
        out.push_back(cur);
        return;
    }
    const int first = rest.front();
    for (std::size_t i = 1; i < rest.size(); ++i) {
        const int partner = rest[i];
        std::vector<int> next;
        next.reserve(rest.size() - 2);
        for (std::size_t j = 1; j < rest.size(); ++j)
            if (j != i)
                next.push_back(rest[j]);
        cur.emplace_back(first, partner);
        matchings_rec(next, cur, out);
        cur.pop_back();
    }
}

cplx minus_i_power(int p)
{
    static const cplx cycle[4] = {cplx{1, 0}, cplx{0, -1}, cplx{-1, 0}, cplx{0, 1}};
    return cycle[((p % 4) + 4) % 4];
}

}  // namespace

cplx FieldSet::pair(int i, int j) const
{
    if (i > j)
        std::swap(i, j);
    auto it = pairings.find({i, j});
    return it == pairings.end() ? cplx{} : it->second;
}

void FieldSet::set_pair(int i, int j, cplx value)
{
    if (i == j || i < 1 || j < 1 || i > m || j > m)
        throw ValidationError("field pair labels must be distinct and within 1..m");
    if (i > j)
        std::swap(i, j);
    pairings[{i, j}] = value;
}

std::uint64_t double_factorial(int n)
{
    if (n < -1)
        throw ValidationError("double factorial of an argument below -1");
    u128 r = 1;
    for (int i = n; i > 1; i -= 2)
        r *= static_cast<u128>(i);
    return checked(r);
}

std::vector<Subset> enumerate_subsets(int m, int k)
{
    if (m < 0 || k < 0 || 2 * k > m)
        throw ValidationError("enumerate_subsets requires 0 <= 2k <= m");
    if (m > MAX_FIELDS)
        throw ValidationError("enumerate_subsets supports at most 16 fields");
    const int size = 2 * k;
    std::vector<Subset> out;
    Subset cur(size);
    for (int i = 0; i < size; ++i)
        cur[i] = i + 1;
    if (size == 0) {
        out.push_back({});
        return out;
    }
    while (true) {
        out.push_back(cur);
        int i = size - 1;
        while (i >= 0 && cur[i] == m - size + i + 1)
            --i;
        if (i < 0)
            break;
        ++cur[i];
        for (int j = i + 1; j < size; ++j)
            cur[j] = cur[j - 1] + 1;
    }
    return out;
}

std::vector<Pairing> perfect_matchings(const Subset& labels)
{
    if (labels.size() % 2 != 0)
        throw ValidationError("perfect_matchings requires an even number of labels");
    std::vector<int> rest(labels.begin(), labels.end());
    std::sort(rest.begin(), rest.end());
    std::vector<Pairing> out;
    Pairing cur;
    matchings_rec(rest, cur, out);
    return out;
}

cplx wick_expectation(const FieldSet& fs, const Subset& labels)
{
    if (labels.empty())
        return 1.0;
    cplx total = 0.0;
    for (const auto& pr : perfect_matchings(labels)) {
        cplx prod = 1.0;
        for (const auto& [i, j] : pr)
            prod *= fs.pair(i, j);
        total += prod;
    }
    return total;
}

IdentitySides contraction_count_identity(int m, int n)
{
    if (m < 0 || n < 0 || (m + n) % 2 != 0)
        throw ValidationError("contraction_count_identity requires m, n >= 0 with m + n even");
    if (m > MAX_FIELDS || n > MAX_FIELDS)
        throw ValidationError("contraction_count_identity supports m, n <= 16");
    const std::uint64_t lhs = double_factorial(m + n - 1);
    const int k0 = std::max(0, (m - n) / 2);
    u128 rhs = 0;
    for (int k = k0; k <= m / 2; ++k) {
        const int free_chi = n - m + 2 * k;
        const u128 subsets = enumerate_subsets(m, k).size();
        const u128 pair_phi = double_factorial(2 * k - 1);
        const u128 phi_chi = falling_factorial(n, m - 2 * k);
        const u128 chi_chi = double_factorial(free_chi - 1);
        rhs += subsets * pair_phi * phi_chi * chi_chi;
    }
    return {lhs, checked(rhs)};
}

std::vector<SeriesTerm> series_terms(const FieldSet& fs)
{
    if (fs.m < 0 || fs.m > MAX_FIELDS)
        throw ValidationError("field count must be within 0..16");
    std::vector<SeriesTerm> terms;
    for (int k = 0; 2 * k <= fs.m; ++k) {
        for (auto& subset : enumerate_subsets(fs.m, k)) {
            SeriesTerm t;
            t.k = k;
            t.coefficient = wick_expectation(fs, subset) * minus_i_power(fs.m - 2 * k);
            for (int label = 1; label <= fs.m; ++label)
                if (!std::binary_search(subset.begin(), subset.end(), label))
                    t.complement.push_back(label);
            t.subset = std::move(subset);
            terms.push_back(std::move(t));
        }
    }
    return terms;
}

ComplexMatrix assemble_series(const FieldSet& fs, const std::map<Subset, ComplexMatrix>& complement_matrices)
{
    ComplexMatrix total;
    bool first = true;
    for (const auto& term : series_terms(fs)) {
        auto it = complement_matrices.find(term.complement);
        if (it == complement_matrices.end()) {
            std::string labels;
            for (int l : term.complement)
                labels += (labels.empty() ? "" : ",") + std::to_string(l);
            throw ValidationError("assemble_series: missing reduced matrix for complement {" + labels + "}");
        }
        if (first) {
            total = ComplexMatrix(it->second.rows(), it->second.cols());
            first = false;
        }
        if (term.coefficient != cplx{})
            total += term.coefficient * it->second;
    }
    return total;
}

}  // namespace iohoem
