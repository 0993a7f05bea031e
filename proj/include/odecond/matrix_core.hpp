#pragma once

#include <Eigen/Dense>

#include <complex>
#include <string>

namespace odecond {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using CRowVector = Eigen::RowVectorXcd;
using cplx = std::complex<double>;

/// Induced norm selector. Vectors use the matching Hoelder norm.
enum class Norm { One, Two, Inf };

[[nodiscard]] const char* to_string(Norm p) noexcept;
/// Accepts "1", "2", "inf" (case-insensitive). Throws UnsupportedNorm.
[[nodiscard]] Norm parse_norm(const std::string& text);
/// The dual norm index q with 1/p + 1/q = 1.
[[nodiscard]] Norm dual(Norm p) noexcept;

/// Throws NonFinite if any entry is NaN or infinite.
void require_finite(const Matrix& m, const char* what);
void require_square(const Matrix& m, const char* what);

struct EigenSystem {
    CVector eigenvalues;
    CMatrix V;        ///< right eigenvectors as unit 2-norm columns
    CMatrix W;        ///< V^{-1}; row i pairs with column i of V
    double cond_V = 0.0;
    double residual = 0.0;  ///< max_i ||A v_i - lambda_i v_i||_2
};

/// Largest acceptable 2-norm condition number of the eigenvector matrix.
inline constexpr double kMaxEigvecCond = 1e12;

/// exp(tA) by scaling and squaring with a degree-13 Pade approximant.
[[nodiscard]] Matrix mat_exp(const Matrix& A, double t);

/// Eigendecomposition with conjugate pairs made exactly conjugate and
/// real eigenvalues carrying real eigenvectors.
[[nodiscard]] EigenSystem eigen_decompose(const Matrix& A);

[[nodiscard]] double induced_matrix_norm(const Matrix& M, Norm p);
[[nodiscard]] double induced_matrix_norm(const CMatrix& M, Norm p);
[[nodiscard]] double vector_norm(const Vector& v, Norm p);
[[nodiscard]] double vector_norm(const CVector& v, Norm p);

struct Svd2xN {
    double sigma = 0.0;
    double mu = 0.0;
    Eigen::Vector2d left_major;   ///< first nonzero component positive
    Eigen::Vector2d left_minor;   ///< left_major rotated by +pi/2
    Vector right_major;
    Vector right_minor;
};

/// Thin SVD of a 2 x n real matrix, n >= 2, with a fixed sign convention.
[[nodiscard]] Svd2xN svd_2xn(const Matrix& R);

}  // namespace odecond
