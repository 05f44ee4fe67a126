// hilbert.hpp: dense complex linear algebra shared by every other module.
//
// Multipartite conventions: subsystem 0 is the leftmost (most significant)
// tensor factor, so for dims {dA, dB} the joint index is iA * dB + iB.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace qent {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using Ket = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Tolerances pinned by the data-type invariants.
inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kPsdTol = 1e-10;
inline constexpr double kKetNormTol = 1e-12;
/// Eigenvalues below this are treated as evidence of a non-PSD input.
inline constexpr double kSqrtRejectTol = 1e-8;

/// Finite entries only.
bool all_finite(const ComplexMatrix& m);

/// max |m - m^dagger| over entries; throws for non-square input.
double hermiticity_defect(const ComplexMatrix& m);

bool is_hermitian(const ComplexMatrix& m, double tol = kHermitianTol);

/// Builds a ket and checks its norm is 1 within kKetNormTol.
Ket make_ket(std::span<const Complex> amplitudes);

/// Computational basis vector |index> of dimension dim.
Ket basis_ket(std::size_t dim, std::size_t index);

/// Hermitian, unit-trace, positive semi-definite matrix with subsystem dimensions.
class DensityMatrix {
public:
    /// Validates every invariant; throws std::invalid_argument on failure.
    DensityMatrix(std::vector<std::size_t> dims, ComplexMatrix matrix);

    /// |psi><psi| for a normalized ket.
    static DensityMatrix from_ket(const Ket& psi, std::vector<std::size_t> dims);

    /// identity / d.
    static DensityMatrix maximally_mixed(std::vector<std::size_t> dims);

    const std::vector<std::size_t>& dims() const noexcept { return dims_; }
    const ComplexMatrix& matrix() const noexcept { return matrix_; }
    std::size_t dim() const noexcept { return static_cast<std::size_t>(matrix_.rows()); }
    std::size_t subsystem_count() const noexcept { return dims_.size(); }

    double purity() const;

private:
    std::vector<std::size_t> dims_;
    ComplexMatrix matrix_;
};

/// Kronecker product a (x) b.
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);
Ket tensor(const Ket& a, const Ket& b);

/// Transposes the indices of every subsystem listed in `subsystems`.
ComplexMatrix partial_transpose(const ComplexMatrix& m, std::span<const std::size_t> dims,
                                std::span<const std::size_t> subsystems);

ComplexMatrix partial_transpose(const DensityMatrix& rho, std::size_t subsystem);
ComplexMatrix partial_transpose(const DensityMatrix& rho, std::span<const std::size_t> subsystems);

/// Reduced state on the kept subsystems, in their original relative order.
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> keep);
DensityMatrix partial_trace(const DensityMatrix& rho, std::initializer_list<std::size_t> keep);

struct EigenDecomposition {
    RealVector values;     ///< descending
    ComplexMatrix vectors; ///< column k pairs with values[k]
};

/// Hermitian eigendecomposition. Throws std::invalid_argument if m is not Hermitian.
EigenDecomposition eigh(const ComplexMatrix& m);

/// Sum of singular values.
double trace_norm(const ComplexMatrix& m);

/// Hermitian PSD square root. Eigenvalues in [-kSqrtRejectTol, 0) are clipped.
ComplexMatrix matrix_sqrt_psd(const ComplexMatrix& m);

/// Frobenius-norm reconstruction error || V diag(values) V^dagger - m ||.
double reconstruction_residual(const EigenDecomposition& eig, const ComplexMatrix& m);

/// Half the trace norm of the difference.
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

namespace pauli {
ComplexMatrix identity();
ComplexMatrix x();
ComplexMatrix y();
ComplexMatrix z();
}  // namespace pauli

}  // namespace qent
