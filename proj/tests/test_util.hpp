#pragma once

#include "iohoem/operators.hpp"

#include <Eigen/Dense>

#include <random>

namespace testutil {

using iohoem::ComplexMatrix;
using iohoem::cplx;

inline ComplexMatrix random_matrix(std::size_t n, std::mt19937& rng)
{
    std::normal_distribution<double> d(0.0, 1.0);
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m(i, j) = cplx{d(rng), d(rng)};
    return m;
}

inline ComplexMatrix random_hermitian(std::size_t n, std::mt19937& rng)
{
    const ComplexMatrix a = random_matrix(n, rng);
    return cplx{0.5} * (a + a.adjoint());
}

inline ComplexMatrix random_density(std::size_t n, std::mt19937& rng)
{
    const ComplexMatrix a = random_matrix(n, rng);
    ComplexMatrix r = a * a.adjoint();
    return (cplx{1.0} / r.trace()) * r;
}

// Reference product computed with explicit loops.
inline ComplexMatrix naive_product(const ComplexMatrix& a, const ComplexMatrix& b)
{
    ComplexMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) {
            cplx s = 0.0;
            for (std::size_t k = 0; k < a.cols(); ++k)
                s += a(i, k) * b(k, j);
            out(i, j) = s;
        }
    return out;
}

inline Eigen::MatrixXcd to_eigen(const ComplexMatrix& m)
{
    Eigen::MatrixXcd e(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            e(i, j) = m(i, j);
    return e;
}

inline ComplexMatrix from_eigen(const Eigen::MatrixXcd& e)
{
    ComplexMatrix m(e.rows(), e.cols());
    for (Eigen::Index i = 0; i < e.rows(); ++i)
        for (Eigen::Index j = 0; j < e.cols(); ++j)
            m(i, j) = e(i, j);
    return m;
}

}  // namespace testutil
