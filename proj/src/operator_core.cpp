#include "secondlaw/operator_core.hpp"

#include "secondlaw/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace secondlaw {

namespace {

constexpr double kJacobiRelativeTolerance = 1e-14;
constexpr int kJacobiMaxSweeps = 100;

double off_diagonal_frobenius(const Matrix& a) {
    double sum = 0.0;
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
        for (Eigen::Index i = 0; i < a.rows(); ++i) {
            if (i != j) sum += std::norm(a(i, j));
        }
    }
    return std::sqrt(sum);
}

// One complex Jacobi rotation zeroing a(p, q). With a(p, q) = |a_pq| e, the
// plane rotation is V = [[c, s e], [-s e*, c]]; A <- V^dagger A V.
void rotate(Matrix& a, Matrix& v, Eigen::Index p, Eigen::Index q) {
    const Complex apq = a(p, q);
    const double magnitude = std::abs(apq);
    if (magnitude == 0.0) return;
    const Complex phase = apq / magnitude;

    const double theta = (a(q, q).real() - a(p, p).real()) / (2.0 * magnitude);
    const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    const double c = 1.0 / std::sqrt(t * t + 1.0);
    const double s = t * c;

    const Eigen::Index n = a.rows();
    for (Eigen::Index k = 0; k < n; ++k) {
        const Complex akp = a(k, p);
        const Complex akq = a(k, q);
        a(k, p) = c * akp - s * std::conj(phase) * akq;
        a(k, q) = s * phase * akp + c * akq;
    }
    for (Eigen::Index k = 0; k < n; ++k) {
        const Complex apk = a(p, k);
        const Complex aqk = a(q, k);
        a(p, k) = c * apk - s * phase * aqk;
        a(q, k) = s * std::conj(phase) * apk + c * aqk;
    }
    a(p, q) = 0.0;
    a(q, p) = 0.0;
    a(p, p) = a(p, p).real();
    a(q, q) = a(q, q).real();

    for (Eigen::Index k = 0; k < n; ++k) {
        const Complex vkp = v(k, p);
        const Complex vkq = v(k, q);
        v(k, p) = c * vkp - s * std::conj(phase) * vkq;
        v(k, q) = s * phase * vkp + c * vkq;
    }
}

void require_same_dim(const HermitianOperator& a, const HermitianOperator& b, const char* where) {
    if (a.dim() != b.dim()) {
        std::ostringstream msg;
        msg << where << ": dimension mismatch (" << a.dim() << " vs " << b.dim() << ")";
        throw ValidationError(msg.str());
    }
}

}  // namespace

HermitianOperator::HermitianOperator(const Matrix& entries) {
    if (entries.rows() == 0 || entries.rows() != entries.cols()) {
        throw ValidationError("HermitianOperator: matrix must be square with dim >= 1");
    }
    for (Eigen::Index i = 0; i < entries.rows(); ++i) {
        for (Eigen::Index j = i; j < entries.cols(); ++j) {
            const double dev = std::abs(entries(i, j) - std::conj(entries(j, i)));
            if (!(dev <= kHermiticityTolerance)) {
                std::ostringstream msg;
                msg << "HermitianOperator: entry (" << i << "," << j << ") violates hermiticity by " << dev;
                throw ValidationError(msg.str());
            }
        }
    }
    m_ = 0.5 * (entries + entries.adjoint());
}

HermitianOperator HermitianOperator::diagonal(std::span<const double> values) {
    if (values.empty()) throw ValidationError("HermitianOperator::diagonal: empty diagonal");
    Matrix m = Matrix::Zero(static_cast<Eigen::Index>(values.size()), static_cast<Eigen::Index>(values.size()));
    for (std::size_t i = 0; i < values.size(); ++i) {
        m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = values[i];
    }
    return HermitianOperator(std::move(m), Trusted{});
}

HermitianOperator HermitianOperator::diagonal(std::initializer_list<double> values) {
    return diagonal(std::span<const double>(values.begin(), values.size()));
}

HermitianOperator HermitianOperator::identity(int dim) {
    if (dim < 1) throw ValidationError("HermitianOperator::identity: dim must be >= 1");
    return HermitianOperator(Matrix::Identity(dim, dim), Trusted{});
}

HermitianOperator HermitianOperator::zero(int dim) {
    if (dim < 1) throw ValidationError("HermitianOperator::zero: dim must be >= 1");
    return HermitianOperator(Matrix::Zero(dim, dim), Trusted{});
}

HermitianOperator HermitianOperator::operator+(const HermitianOperator& other) const {
    require_same_dim(*this, other, "HermitianOperator::operator+");
    return HermitianOperator(m_ + other.m_, Trusted{});
}

HermitianOperator HermitianOperator::operator-(const HermitianOperator& other) const {
    require_same_dim(*this, other, "HermitianOperator::operator-");
    return HermitianOperator(m_ - other.m_, Trusted{});
}

HermitianOperator HermitianOperator::operator*(double scale) const {
    return HermitianOperator(m_ * scale, Trusted{});
}

double HermitianOperator::trace() const { return m_.trace().real(); }

double HermitianOperator::max_abs() const { return m_.cwiseAbs().maxCoeff(); }

Matrix Spectrum::reconstruct() const {
    return eigenvectors * eigenvalues.cast<Complex>().asDiagonal() * eigenvectors.adjoint();
}

Spectrum eig_hermitian(const HermitianOperator& op) {
    Matrix a = op.matrix();
    const Eigen::Index n = a.rows();
    Matrix v = Matrix::Identity(n, n);

    const double threshold = kJacobiRelativeTolerance * a.norm();
    int sweep = 0;
    while (off_diagonal_frobenius(a) > threshold) {
        if (++sweep > kJacobiMaxSweeps) {
            throw ConvergenceError("eig_hermitian: Jacobi sweeps did not converge");
        }
        for (Eigen::Index p = 0; p < n - 1; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                rotate(a, v, p, q);
            }
        }
    }

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index x, Eigen::Index y) { return a(x, x).real() < a(y, y).real(); });

    Spectrum out;
    out.eigenvalues.resize(n);
    out.eigenvectors.resize(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const Eigen::Index src = order[static_cast<std::size_t>(k)];
        out.eigenvalues(k) = a(src, src).real();
        out.eigenvectors.col(k) = v.col(src);
    }
    return out;
}

HermitianOperator matrix_function(const Spectrum& spectrum,
                                  const std::function<double(double)>& f,
                                  double support_cutoff) {
    const int n = spectrum.dim();
    RealVector mapped(n);
    for (int k = 0; k < n; ++k) {
        const double lambda = spectrum.eigenvalues(k);
        if (lambda < support_cutoff) {
            std::ostringstream msg;
            msg << "matrix_function: eigenvalue " << lambda << " is below the support cutoff " << support_cutoff;
            throw DomainError(msg.str());
        }
        mapped(k) = f(lambda);
    }
    const Matrix out = spectrum.eigenvectors * mapped.cast<Complex>().asDiagonal() * spectrum.eigenvectors.adjoint();
    return HermitianOperator(0.5 * (out + out.adjoint()));
}

HermitianOperator matrix_function(const HermitianOperator& op,
                                  const std::function<double(double)>& f,
                                  double support_cutoff) {
    return matrix_function(eig_hermitian(op), f, support_cutoff);
}

double trace_product(const HermitianOperator& a, const HermitianOperator& b) {
    require_same_dim(a, b, "trace_product");
    // tr{AB} = sum_ij A_ij B_ji
    Complex sum = 0.0;
    const Matrix& am = a.matrix();
    const Matrix& bm = b.matrix();
    for (Eigen::Index i = 0; i < am.rows(); ++i) {
        for (Eigen::Index j = 0; j < am.cols(); ++j) {
            sum += am(i, j) * bm(j, i);
        }
    }
    return sum.real();
}

double commutator_norm(const HermitianOperator& a, const HermitianOperator& b) {
    require_same_dim(a, b, "commutator_norm");
    return (a.matrix() * b.matrix() - b.matrix() * a.matrix()).norm();
}

bool is_diagonal(const HermitianOperator& op, double tolerance) {
    const Matrix& m = op.matrix();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            if (i != j && std::abs(m(i, j)) > tolerance) return false;
        }
    }
    return true;
}

Matrix common_eigenbasis(std::span<const HermitianOperator* const> family, double tolerance) {
    if (family.empty()) throw ValidationError("common_eigenbasis: empty operator family");
    const int n = family.front()->dim();
    for (const auto* op : family) require_same_dim(*family.front(), *op, "common_eigenbasis");

    // Fast path: everything already diagonal in the computational basis.
    if (std::all_of(family.begin(), family.end(), [&](const HermitianOperator* op) { return is_diagonal(*op, tolerance); })) {
        return Matrix::Identity(n, n);
    }

    // A generic real combination of commuting operators has the joint
    // eigenbasis as its own (irrational weights avoid accidental degeneracy).
    Matrix combo = Matrix::Zero(n, n);
    double weight = 1.0;
    for (const auto* op : family) {
        combo += weight * op->matrix() / std::max(1.0, op->max_abs());
        weight *= 1.0 / std::sqrt(2.0) + 0.1;
    }
    const Spectrum spectrum = eig_hermitian(HermitianOperator(0.5 * (combo + combo.adjoint())));
    const Matrix& basis = spectrum.eigenvectors;
    for (const auto* op : family) {
        const Matrix rotated = basis.adjoint() * op->matrix() * basis;
        for (Eigen::Index j = 0; j < n; ++j) {
            for (Eigen::Index i = 0; i < n; ++i) {
                if (i != j && std::abs(rotated(i, j)) > tolerance) {
                    throw UnsupportedCaseError(
                        "operators are not simultaneously diagonalisable; only the commuting case is implemented");
                }
            }
        }
    }
    return basis;
}

RealVector diagonal_in_basis(const HermitianOperator& op, const Matrix& basis) {
    const Matrix rotated = basis.adjoint() * op.matrix() * basis;
    return rotated.diagonal().real();
}

}  // namespace secondlaw
