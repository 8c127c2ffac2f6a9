#include "iohoem/operators.hpp"

#include "iohoem/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace iohoem {

namespace {

using EigenMat = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

EigenMat to_eigen(const ComplexMatrix& m)
{
    EigenMat e(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            e(r, c) = m(r, c);
    return e;
}

ComplexMatrix from_eigen(const EigenMat& e)
{
    ComplexMatrix m(e.rows(), e.cols());
    for (Eigen::Index r = 0; r < e.rows(); ++r)
        for (Eigen::Index c = 0; c < e.cols(); ++c)
            m(r, c) = e(r, c);
    return m;
}

void require_square(const ComplexMatrix& a, const char* who)
{
    if (!a.square() || a.rows() == 0)
        throw ValidationError(std::string(who) + ": operator must be square and non-empty");
}

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b)
{
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw ValidationError("matrix shape mismatch");
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, cplx{0.0, 0.0})
{
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows)
{
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
        if (row.size() != cols_)
            throw ValidationError("ragged matrix initializer");
        data_.insert(data_.end(), row.begin(), row.end());
    }
}

ComplexMatrix ComplexMatrix::zero(std::size_t rows, std::size_t cols) { return ComplexMatrix(rows, cols); }

ComplexMatrix ComplexMatrix::identity(std::size_t n)
{
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const
{
    ComplexMatrix m(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            m(c, r) = std::conj((*this)(r, c));
    return m;
}

ComplexMatrix ComplexMatrix::transpose() const
{
    ComplexMatrix m(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            m(c, r) = (*this)(r, c);
    return m;
}

ComplexMatrix ComplexMatrix::conjugate() const
{
    ComplexMatrix m = *this;
    for (auto& x : m.data_)
        x = std::conj(x);
    return m;
}

cplx ComplexMatrix::trace() const
{
    cplx t = 0.0;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i)
        t += (*this)(i, i);
    return t;
}

double ComplexMatrix::max_abs() const
{
    double m = 0.0;
    for (const auto& x : data_)
        m = std::max(m, std::abs(x));
    return m;
}

bool ComplexMatrix::is_hermitian(double tol) const
{
    if (!square())
        return false;
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = r; c < cols_; ++c)
            if (std::abs((*this)(r, c) - std::conj((*this)(c, r))) > tol)
                return false;
    return true;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o)
{
    require_same_shape(*this, o);
    for (std::size_t i = 0; i < data_.size(); ++i)
        data_[i] += o.data_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o)
{
    require_same_shape(*this, o);
    for (std::size_t i = 0; i < data_.size(); ++i)
        data_[i] -= o.data_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s)
{
    for (auto& x : data_)
        x *= s;
    return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator-(ComplexMatrix a) { return a *= -1.0; }
ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }
ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b)
{
    if (a.cols() != b.rows())
        throw ValidationError("matrix product shape mismatch");
    ComplexMatrix m(a.rows(), b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const cplx ark = a(r, k);
            if (ark == cplx{})
                continue;
            for (std::size_t c = 0; c < b.cols(); ++c)
                m(r, c) += ark * b(k, c);
        }
    return m;
}

std::vector<cplx> operator*(const ComplexMatrix& a, const std::vector<cplx>& v)
{
    if (a.cols() != v.size())
        throw ValidationError("matrix-vector shape mismatch");
    std::vector<cplx> out(a.rows());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        cplx acc = 0.0;
        for (std::size_t c = 0; c < a.cols(); ++c)
            acc += a(r, c) * v[c];
        out[r] = acc;
    }
    return out;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b)
{
    ComplexMatrix m(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t ar = 0; ar < a.rows(); ++ar)
        for (std::size_t ac = 0; ac < a.cols(); ++ac) {
            const cplx x = a(ar, ac);
            if (x == cplx{})
                continue;
            for (std::size_t br = 0; br < b.rows(); ++br)
                for (std::size_t bc = 0; bc < b.cols(); ++bc)
                    m(ar * b.rows() + br, ac * b.cols() + bc) = x * b(br, bc);
        }
    return m;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b)
{
    require_same_shape(a, b);
    double m = 0.0;
    for (std::size_t i = 0; i < a.entries().size(); ++i)
        m = std::max(m, std::abs(a.entries()[i] - b.entries()[i]));
    return m;
}

double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b)
{
    const ComplexMatrix d = a - b;
    ComplexMatrix h = 0.5 * (d + d.adjoint());
    double s = 0.0;
    for (double ev : hermitian_eigenvalues(h))
        s += std::abs(ev);
    return 0.5 * s;
}

std::vector<cplx> vec(const ComplexMatrix& rho)
{
    require_square(rho, "vec");
    const std::size_t d = rho.rows();
    std::vector<cplx> v(d * d);
    for (std::size_t j = 0; j < d; ++j)
        for (std::size_t i = 0; i < d; ++i)
            v[i + d * j] = rho(i, j);
    return v;
}

ComplexMatrix unvec(const std::vector<cplx>& v, std::size_t dim)
{
    if (v.size() != dim * dim)
        throw ValidationError("unvec: length is not dim^2");
    ComplexMatrix rho(dim, dim);
    for (std::size_t j = 0; j < dim; ++j)
        for (std::size_t i = 0; i < dim; ++i)
            rho(i, j) = v[i + dim * j];
    return rho;
}

namespace pauli {
ComplexMatrix x() { return {{0.0, 1.0}, {1.0, 0.0}}; }
// Signs follow from the (g, e) ordering so that [sigma_z, sigma_x] = 2i sigma_y
// and sigma_+- = (sigma_x +- i sigma_y) / 2.
ComplexMatrix y() { return {{0.0, I_UNIT}, {-I_UNIT, 0.0}}; }
// sigma_z = |e><e| - |g><g|
ComplexMatrix z() { return {{-1.0, 0.0}, {0.0, 1.0}}; }
ComplexMatrix lower() { return {{0.0, 1.0}, {0.0, 0.0}}; }
ComplexMatrix raise() { return {{0.0, 0.0}, {1.0, 0.0}}; }
ComplexMatrix ground_projector() { return {{1.0, 0.0}, {0.0, 0.0}}; }
ComplexMatrix excited_projector() { return {{0.0, 0.0}, {0.0, 1.0}}; }
}  // namespace pauli

SuperOperator::SuperOperator(std::size_t d, ComplexMatrix m) : dim(d), matrix(std::move(m))
{
    if (matrix.rows() != d * d || matrix.cols() != d * d)
        throw ValidationError("superoperator matrix must be dim^2 x dim^2");
}

SuperOperator SuperOperator::identity(std::size_t d) { return {d, ComplexMatrix::identity(d * d)}; }
SuperOperator SuperOperator::zero(std::size_t d) { return {d, ComplexMatrix(d * d, d * d)}; }

ComplexMatrix SuperOperator::apply(const ComplexMatrix& rho) const
{
    if (rho.rows() != dim || rho.cols() != dim)
        throw ValidationError("superoperator applied to matrix of wrong dimension");
    return unvec(matrix * vec(rho), dim);
}

SuperOperator SuperOperator::operator*(const SuperOperator& o) const
{
    if (dim != o.dim)
        throw ValidationError("superoperator dimension mismatch");
    return {dim, matrix * o.matrix};
}

SuperOperator SuperOperator::operator+(const SuperOperator& o) const
{
    if (dim != o.dim)
        throw ValidationError("superoperator dimension mismatch");
    return {dim, matrix + o.matrix};
}

SuperOperator SuperOperator::operator-(const SuperOperator& o) const
{
    if (dim != o.dim)
        throw ValidationError("superoperator dimension mismatch");
    return {dim, matrix - o.matrix};
}

SuperOperator SuperOperator::operator-() const { return {dim, -matrix}; }
SuperOperator SuperOperator::operator*(cplx s) const { return {dim, matrix * s}; }

SuperOperator left_mul_super(const ComplexMatrix& a)
{
    require_square(a, "left_mul_super");
    const std::size_t d = a.rows();
    return {d, kron(ComplexMatrix::identity(d), a)};
}

SuperOperator right_mul_super(const ComplexMatrix& a)
{
    require_square(a, "right_mul_super");
    const std::size_t d = a.rows();
    return {d, kron(a.transpose(), ComplexMatrix::identity(d))};
}

SuperOperator commutator_super(const ComplexMatrix& h)
{
    require_square(h, "commutator_super");
    return left_mul_super(h) - right_mul_super(h);
}

SuperOperator anticommutator_super(const ComplexMatrix& h)
{
    require_square(h, "anticommutator_super");
    return left_mul_super(h) + right_mul_super(h);
}

SuperOperator dissipator_super(const ComplexMatrix& l)
{
    require_square(l, "dissipator_super");
    const ComplexMatrix ld = l.adjoint();
    const ComplexMatrix ldl = ld * l;
    return left_mul_super(l) * right_mul_super(ld) * 2.0 - left_mul_super(ldl) - right_mul_super(ldl);
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& h)
{
    require_square(h, "hermitian_eigenvalues");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(to_eigen(h));
    std::vector<double> ev(solver.eigenvalues().data(), solver.eigenvalues().data() + h.rows());
    return ev;
}

ComplexMatrix interaction_picture(const ComplexMatrix& op, const ComplexMatrix& h0, double t)
{
    require_square(h0, "interaction_picture");
    if (op.rows() != h0.rows() || op.cols() != h0.cols())
        throw ValidationError("interaction_picture: operator and H0 dimensions differ");
    if (!h0.is_hermitian(HERMITIAN_TOL * std::max(1.0, h0.max_abs())))
        throw ValidationError("interaction_picture: H0 is not hermitian");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(to_eigen(h0));
    const Eigen::MatrixXcd& v = solver.eigenvectors();
    const Eigen::VectorXd& e = solver.eigenvalues();
    Eigen::MatrixXcd in_eig = v.adjoint() * to_eigen(op) * v;
    for (Eigen::Index r = 0; r < in_eig.rows(); ++r)
        for (Eigen::Index c = 0; c < in_eig.cols(); ++c)
            in_eig(r, c) *= std::exp(I_UNIT * ((e(r) - e(c)) * t));
    return from_eigen(v * in_eig * v.adjoint());
}

}  // namespace iohoem
