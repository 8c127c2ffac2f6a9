#pragma once

// Combinatorics of the environmental-correlation series: pair subsets,
// perfect matchings, and the weighted reconstruction of multi-field reduced
// matrices from hierarchy outputs.

#include "iohoem/operators.hpp"

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

namespace iohoem {

using Subset = std::vector<int>;  // sorted labels, 1-based
using Pairing = std::vector<std::pair<int, int>>;

struct FieldSet {
    int m = 0;
    // Free two-point correlations <phi_i phi_j> keyed by (i, j) with i < j.
    // Missing pairs are zero.
    std::map<std::pair<int, int>, cplx> pairings;

    cplx pair(int i, int j) const;
    void set_pair(int i, int j, cplx value);
};

struct SeriesTerm {
    int k = 0;
    Subset subset;
    cplx coefficient;
    Subset complement;
};

// All subsets of {1..m} of size 2k in lexicographic order.
std::vector<Subset> enumerate_subsets(int m, int k);
// All perfect matchings of an even-size label list.
std::vector<Pairing> perfect_matchings(const Subset& labels);
// Gaussian expectation of the product of the fields in `labels`.
cplx wick_expectation(const FieldSet& fs, const Subset& labels);

struct IdentitySides {
    std::uint64_t lhs;
    std::uint64_t rhs;
};

// Both sides of (m+n-1)!! = sum_k C(m,2k) (2k-1)!! n!/(n-m+2k)! (n-m+2k-1)!!.
IdentitySides contraction_count_identity(int m, int n);
std::uint64_t double_factorial(int n);  // (-1)!! = 0!! = 1

// Every term of the series with its coefficient <prod phi>(-i)^{m-2k}.
std::vector<SeriesTerm> series_terms(const FieldSet& fs);

// Weighted sum over all terms; complement_matrices maps each complement
// (sorted labels; the empty subset is the bare reduced matrix) to its matrix.
ComplexMatrix assemble_series(const FieldSet& fs, const std::map<Subset, ComplexMatrix>& complement_matrices);

}  // namespace iohoem
