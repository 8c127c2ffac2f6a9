#pragma once

// Dense complex matrices and Liouville-space superoperators.
//
// Vectorization convention (project wide): column stacking,
//   vec(rho)[i + d*j] = rho(i, j),
// so that vec(A rho B) = (B^T kron A) vec(rho).

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace iohoem {

using cplx = std::complex<double>;
inline constexpr cplx I_UNIT{0.0, 1.0};
inline constexpr double HERMITIAN_TOL = 1e-12;

class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols);
    // Row-major nested initializer: {{a, b}, {c, d}}.
    ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

    static ComplexMatrix zero(std::size_t rows, std::size_t cols);
    static ComplexMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    cplx& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const cplx& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    // Row-major entries.
    const std::vector<cplx>& entries() const { return data_; }
    std::vector<cplx>& entries() { return data_; }

    ComplexMatrix adjoint() const;
    ComplexMatrix transpose() const;
    ComplexMatrix conjugate() const;
    cplx trace() const;

    // Largest entrywise modulus.
    double max_abs() const;
    bool is_hermitian(double tol = HERMITIAN_TOL) const;

    ComplexMatrix& operator+=(const ComplexMatrix& o);
    ComplexMatrix& operator-=(const ComplexMatrix& o);
    ComplexMatrix& operator*=(cplx s);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(cplx s, ComplexMatrix a);
ComplexMatrix operator*(ComplexMatrix a, cplx s);
std::vector<cplx> operator*(const ComplexMatrix& a, const std::vector<cplx>& v);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
// Trace distance 0.5 * ||a - b||_1 for hermitian a, b.
double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b);

std::vector<cplx> vec(const ComplexMatrix& rho);
ComplexMatrix unvec(const std::vector<cplx>& v, std::size_t dim);

// Two-level operators in the basis (|g>, |e>) = (index 0, index 1).
namespace pauli {
ComplexMatrix x();
ComplexMatrix y();
ComplexMatrix z();
ComplexMatrix lower();  // sigma_- = |g><e|
ComplexMatrix raise();  // sigma_+ = |e><g|
ComplexMatrix ground_projector();
ComplexMatrix excited_projector();
}  // namespace pauli

struct SuperOperator {
    std::size_t dim = 0;   // system Hilbert dimension
    ComplexMatrix matrix;  // dim^2 x dim^2

    SuperOperator() = default;
    SuperOperator(std::size_t d, ComplexMatrix m);

    static SuperOperator identity(std::size_t d);
    static SuperOperator zero(std::size_t d);

    ComplexMatrix apply(const ComplexMatrix& rho) const;
    SuperOperator operator*(const SuperOperator& o) const;
    SuperOperator operator+(const SuperOperator& o) const;
    SuperOperator operator-(const SuperOperator& o) const;
    SuperOperator operator-() const;
    SuperOperator operator*(cplx s) const;
};

inline SuperOperator operator*(cplx s, const SuperOperator& op) { return op * s; }

// rho -> A rho
SuperOperator left_mul_super(const ComplexMatrix& a);
// rho -> rho A
SuperOperator right_mul_super(const ComplexMatrix& a);
// rho -> H rho - rho H
SuperOperator commutator_super(const ComplexMatrix& h);
// rho -> H rho + rho H
SuperOperator anticommutator_super(const ComplexMatrix& h);
// rho -> 2 L rho L^dag - L^dag L rho - rho L^dag L
SuperOperator dissipator_super(const ComplexMatrix& l);

// e^{i H0 t} op e^{-i H0 t} through the eigendecomposition of H0.
ComplexMatrix interaction_picture(const ComplexMatrix& op, const ComplexMatrix& h0, double t);

// Eigenvalues of a hermitian matrix in ascending order.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& h);

}  // namespace iohoem
