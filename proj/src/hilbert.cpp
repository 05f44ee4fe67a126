#include "qent/hilbert.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>

namespace qent {

namespace {

std::size_t product(std::span<const std::size_t> dims)
{
    return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>{});
}

void require_square(const ComplexMatrix& m, const char* what)
{
    if (m.rows() != m.cols())
        throw std::invalid_argument(std::string(what) + ": matrix must be square");
}

// Row-major mixed-radix digits of a joint index.
void split_index(std::size_t index, std::span<const std::size_t> dims, std::vector<std::size_t>& digits)
{
    digits.resize(dims.size());
    for (std::size_t k = dims.size(); k-- > 0;) {
        digits[k] = index % dims[k];
        index /= dims[k];
    }
}

std::size_t join_index(std::span<const std::size_t> digits, std::span<const std::size_t> dims)
{
    std::size_t index = 0;
    for (std::size_t k = 0; k < dims.size(); ++k)
        index = index * dims[k] + digits[k];
    return index;
}

}  // namespace

bool all_finite(const ComplexMatrix& m)
{
    return m.allFinite();
}

double hermiticity_defect(const ComplexMatrix& m)
{
    require_square(m, "hermiticity_defect");
    if (m.size() == 0)
        return 0.0;
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

bool is_hermitian(const ComplexMatrix& m, double tol)
{
    return m.rows() == m.cols() && hermiticity_defect(m) <= tol;
}

Ket make_ket(std::span<const Complex> amplitudes)
{
    if (amplitudes.empty())
        throw std::invalid_argument("make_ket: empty amplitude list");
    Ket psi(static_cast<Eigen::Index>(amplitudes.size()));
    for (std::size_t i = 0; i < amplitudes.size(); ++i)
        psi(static_cast<Eigen::Index>(i)) = amplitudes[i];
    if (!psi.allFinite() || std::abs(psi.norm() - 1.0) > kKetNormTol)
        throw std::invalid_argument("make_ket: amplitudes are not normalized");
    return psi;
}

Ket basis_ket(std::size_t dim, std::size_t index)
{
    if (index >= dim)
        throw std::out_of_range("basis_ket: index out of range");
    Ket psi = Ket::Zero(static_cast<Eigen::Index>(dim));
    psi(static_cast<Eigen::Index>(index)) = 1.0;
    return psi;
}

DensityMatrix::DensityMatrix(std::vector<std::size_t> dims, ComplexMatrix matrix)
    : dims_(std::move(dims)), matrix_(std::move(matrix))
{
    if (dims_.empty() || std::find(dims_.begin(), dims_.end(), std::size_t{0}) != dims_.end())
        throw std::invalid_argument("DensityMatrix: subsystem dimensions must be positive");
    const auto d = static_cast<Eigen::Index>(product(dims_));
    if (matrix_.rows() != d || matrix_.cols() != d)
        throw std::invalid_argument("DensityMatrix: matrix size does not match subsystem dimensions");
    if (!all_finite(matrix_))
        throw std::invalid_argument("DensityMatrix: non-finite entry");
    if (hermiticity_defect(matrix_) > kHermitianTol)
        throw std::invalid_argument("DensityMatrix: matrix is not Hermitian");
    if (std::abs(matrix_.trace() - Complex(1.0)) > kTraceTol)
        throw std::invalid_argument("DensityMatrix: trace differs from 1");
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(matrix_, Eigen::EigenvaluesOnly);
    if (solver.eigenvalues().minCoeff() < -kPsdTol)
        throw std::invalid_argument("DensityMatrix: matrix has a negative eigenvalue");
}

DensityMatrix DensityMatrix::from_ket(const Ket& psi, std::vector<std::size_t> dims)
{
    if (std::abs(psi.norm() - 1.0) > kKetNormTol)
        throw std::invalid_argument("DensityMatrix::from_ket: ket is not normalized");
    return DensityMatrix(std::move(dims), psi * psi.adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(std::vector<std::size_t> dims)
{
    const auto d = static_cast<Eigen::Index>(product(dims));
    return DensityMatrix(std::move(dims), ComplexMatrix::Identity(d, d) / static_cast<double>(d));
}

double DensityMatrix::purity() const
{
    return (matrix_ * matrix_).trace().real();
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b)
{
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

Ket tensor(const Ket& a, const Ket& b)
{
    Ket out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i)
        out.segment(i * b.size(), b.size()) = a(i) * b;
    return out;
}

ComplexMatrix partial_transpose(const ComplexMatrix& m, std::span<const std::size_t> dims,
                                std::span<const std::size_t> subsystems)
{
    require_square(m, "partial_transpose");
    const std::size_t d = product(dims);
    if (static_cast<std::size_t>(m.rows()) != d)
        throw std::invalid_argument("partial_transpose: matrix size does not match subsystem dimensions");
    std::vector<bool> flip(dims.size(), false);
    for (std::size_t s : subsystems) {
        if (s >= dims.size())
            throw std::out_of_range("partial_transpose: subsystem index out of range");
        flip[s] = true;
    }

    ComplexMatrix out(m.rows(), m.cols());
    std::vector<std::size_t> row_digits, col_digits;
    for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t c = 0; c < d; ++c) {
            split_index(r, dims, row_digits);
            split_index(c, dims, col_digits);
            for (std::size_t k = 0; k < dims.size(); ++k)
                if (flip[k])
                    std::swap(row_digits[k], col_digits[k]);
            out(static_cast<Eigen::Index>(join_index(row_digits, dims)),
                static_cast<Eigen::Index>(join_index(col_digits, dims))) =
                m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
        }
    }
    return out;
}

ComplexMatrix partial_transpose(const DensityMatrix& rho, std::size_t subsystem)
{
    const std::size_t subsystems[] = {subsystem};
    return partial_transpose(rho.matrix(), rho.dims(), subsystems);
}

ComplexMatrix partial_transpose(const DensityMatrix& rho, std::span<const std::size_t> subsystems)
{
    return partial_transpose(rho.matrix(), rho.dims(), subsystems);
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> keep)
{
    if (keep.empty())
        throw std::invalid_argument("partial_trace: keep set is empty");
    const auto& dims = rho.dims();
    std::vector<bool> kept(dims.size(), false);
    for (std::size_t s : keep) {
        if (s >= dims.size())
            throw std::out_of_range("partial_trace: subsystem index out of range");
        if (kept[s])
            throw std::invalid_argument("partial_trace: duplicate subsystem in keep set");
        kept[s] = true;
    }

    std::vector<std::size_t> kept_dims, traced_dims;
    for (std::size_t k = 0; k < dims.size(); ++k)
        (kept[k] ? kept_dims : traced_dims).push_back(dims[k]);
    const std::size_t dk = product(kept_dims);
    const std::size_t dt = product(traced_dims);

    // Joint index of (kept digits, traced digits) in the original ordering.
    std::vector<std::size_t> digits(dims.size()), kd, td;
    auto joint = [&](std::size_t ki, std::size_t ti) {
        split_index(ki, kept_dims, kd);
        split_index(ti, traced_dims, td);
        std::size_t a = 0, b = 0;
        for (std::size_t k = 0; k < dims.size(); ++k)
            digits[k] = kept[k] ? kd[a++] : td[b++];
        return static_cast<Eigen::Index>(join_index(digits, dims));
    };

    ComplexMatrix out = ComplexMatrix::Zero(static_cast<Eigen::Index>(dk), static_cast<Eigen::Index>(dk));
    const auto& m = rho.matrix();
    for (std::size_t r = 0; r < dk; ++r)
        for (std::size_t c = 0; c < dk; ++c)
            for (std::size_t t = 0; t < dt; ++t)
                out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) += m(joint(r, t), joint(c, t));
    // Restore exact Hermiticity lost to summation order.
    out = 0.5 * (out + out.adjoint()).eval();
    return DensityMatrix(std::move(kept_dims), std::move(out));
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::initializer_list<std::size_t> keep)
{
    return partial_trace(rho, std::span<const std::size_t>(keep.begin(), keep.size()));
}

EigenDecomposition eigh(const ComplexMatrix& m)
{
    require_square(m, "eigh");
    if (!all_finite(m))
        throw std::invalid_argument("eigh: non-finite entry");
    if (hermiticity_defect(m) > kHermitianTol)
        throw std::invalid_argument("eigh: matrix is not Hermitian");
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("eigh: eigensolver did not converge");
    // Eigen sorts ascending.
    EigenDecomposition out;
    out.values = solver.eigenvalues().reverse();
    out.vectors = solver.eigenvectors().rowwise().reverse();
    return out;
}

double trace_norm(const ComplexMatrix& m)
{
    require_square(m, "trace_norm");
    Eigen::JacobiSVD<ComplexMatrix> svd(m);
    return svd.singularValues().sum();
}

ComplexMatrix matrix_sqrt_psd(const ComplexMatrix& m)
{
    const EigenDecomposition eig = eigh(m);
    if (eig.values.size() > 0 && eig.values.minCoeff() < -kSqrtRejectTol)
        throw std::domain_error("matrix_sqrt_psd: matrix is not positive semi-definite");
    const RealVector roots = eig.values.cwiseMax(0.0).cwiseSqrt();
    ComplexMatrix out = eig.vectors * roots.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
    return 0.5 * (out + out.adjoint());
}

double reconstruction_residual(const EigenDecomposition& eig, const ComplexMatrix& m)
{
    const ComplexMatrix rebuilt = eig.vectors * eig.values.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
    return (rebuilt - m).norm();
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b)
{
    if (a.dim() != b.dim())
        throw std::invalid_argument("trace_distance: dimension mismatch");
    return 0.5 * trace_norm(a.matrix() - b.matrix());
}

namespace pauli {

ComplexMatrix identity()
{
    return ComplexMatrix::Identity(2, 2);
}

ComplexMatrix x()
{
    ComplexMatrix m(2, 2);
    m << 0.0, 1.0, 1.0, 0.0;
    return m;
}

ComplexMatrix y()
{
    ComplexMatrix m(2, 2);
    m << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
    return m;
}

ComplexMatrix z()
{
    ComplexMatrix m(2, 2);
    m << 1.0, 0.0, 0.0, -1.0;
    return m;
}

}  // namespace pauli

}  // namespace qent
