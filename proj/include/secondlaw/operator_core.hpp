// operator_core.hpp: small dense Hermitian linear algebra
//
// Eigendecomposition (cyclic Jacobi) and spectral matrix functions. Every
// entropy and Gibbs-state computation in the library goes through here.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <functional>
#include <initializer_list>
#include <limits>
#include <span>
#include <vector>

namespace secondlaw {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kHermiticityTolerance = 1e-12;
// Eigenvalues below this are exact zeros in entropy kernels (0 ln 0 = 0).
inline constexpr double kSupportCutoff = 1e-12;

class HermitianOperator {
public:
    // Throws ValidationError if the matrix is empty, non-square or deviates
    // from hermiticity by more than kHermiticityTolerance elementwise. The
    // stored matrix is the exact Hermitian part of the input.
    explicit HermitianOperator(const Matrix& entries);

    static HermitianOperator diagonal(std::span<const double> values);
    static HermitianOperator diagonal(std::initializer_list<double> values);
    static HermitianOperator identity(int dim);
    static HermitianOperator zero(int dim);

    int dim() const noexcept { return static_cast<int>(m_.rows()); }
    const Matrix& matrix() const noexcept { return m_; }
    Complex operator()(int row, int col) const { return m_(row, col); }

    HermitianOperator operator+(const HermitianOperator& other) const;
    HermitianOperator operator-(const HermitianOperator& other) const;
    HermitianOperator operator*(double scale) const;
    friend HermitianOperator operator*(double scale, const HermitianOperator& op) { return op * scale; }

    double trace() const;
    double max_abs() const;

private:
    struct Trusted {};
    HermitianOperator(Matrix entries, Trusted) : m_(std::move(entries)) {}

    Matrix m_;
};

// Eigenvalues ascending; eigenvectors are the matching orthonormal columns.
struct Spectrum {
    RealVector eigenvalues;
    Matrix eigenvectors;

    int dim() const noexcept { return static_cast<int>(eigenvalues.size()); }
    Matrix reconstruct() const;
};

Spectrum eig_hermitian(const HermitianOperator& op);

// V diag(f(lambda)) V^dagger. Eigenvalues below support_cutoff are outside
// the domain of f and raise DomainError naming the eigenvalue.
HermitianOperator matrix_function(const HermitianOperator& op,
                                  const std::function<double(double)>& f,
                                  double support_cutoff = -std::numeric_limits<double>::infinity());
HermitianOperator matrix_function(const Spectrum& spectrum,
                                  const std::function<double(double)>& f,
                                  double support_cutoff = -std::numeric_limits<double>::infinity());

// Re tr{AB}. Throws ValidationError on dimension mismatch.
double trace_product(const HermitianOperator& a, const HermitianOperator& b);

// Frobenius norm of AB - BA.
double commutator_norm(const HermitianOperator& a, const HermitianOperator& b);

bool is_diagonal(const HermitianOperator& op, double tolerance);

// Orthonormal basis that diagonalises every operator in the family to within
// `tolerance` (max off-diagonal magnitude). Throws UnsupportedCaseError when
// the family does not commute.
Matrix common_eigenbasis(std::span<const HermitianOperator* const> family, double tolerance);

// Real diagonal of U^dagger A U.
RealVector diagonal_in_basis(const HermitianOperator& op, const Matrix& basis);

}  // namespace secondlaw
