#include "odecond/matrix_core.hpp"

#include "odecond/error.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <limits>
#include <vector>

namespace odecond {

const char* to_string(Norm p) noexcept {
    switch (p) {
        case Norm::One: return "1";
        case Norm::Two: return "2";
        case Norm::Inf: return "inf";
    }
    return "?";
}

Norm parse_norm(const std::string& text) {
    std::string s;
    for (char c : text) s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    if (s == "1") return Norm::One;
    if (s == "2") return Norm::Two;
    if (s == "inf" || s == "infinity") return Norm::Inf;
    throw Error(ErrorCode::UnsupportedNorm, "norm must be 1, 2 or inf, got '" + text + "'");
}

Norm dual(Norm p) noexcept {
    switch (p) {
        case Norm::One: return Norm::Inf;
        case Norm::Inf: return Norm::One;
        case Norm::Two: break;
    }
    return Norm::Two;
}

void require_finite(const Matrix& m, const char* what) {
    if (!m.allFinite()) throw Error(ErrorCode::NonFinite, std::string(what) + " has non-finite entries");
}

void require_square(const Matrix& m, const char* what) {
    if (m.rows() != m.cols() || m.rows() == 0)
        throw Error(ErrorCode::NonSquare, std::string(what) + " must be square and non-empty, got " +
                                              std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
}

namespace {

constexpr std::array<double, 14> kPade13 = {
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0,
    129060195264000.0,   10559470521600.0,    670442572800.0,     33522128640.0,
    1323241920.0,        40840800.0,          960960.0,           16380.0,
    182.0,               1.0};
constexpr double kTheta13 = 5.371920351148152;

}  // namespace

Matrix mat_exp(const Matrix& A, double t) {
    require_square(A, "matrix");
    require_finite(A, "matrix");
    if (!std::isfinite(t)) throw Error(ErrorCode::NonFinite, "time must be finite");

    const Eigen::Index n = A.rows();
    Matrix M = t * A;
    const double norm1 = M.cwiseAbs().colwise().sum().maxCoeff();
    int s = 0;
    if (norm1 > kTheta13) {
        s = static_cast<int>(std::ceil(std::log2(norm1 / kTheta13)));
        M /= std::ldexp(1.0, s);
    }

    const Matrix I = Matrix::Identity(n, n);
    const Matrix M2 = M * M;
    const Matrix M4 = M2 * M2;
    const Matrix M6 = M4 * M2;
    std::array<double, 14> b{};
    for (size_t k = 0; k < b.size(); ++k) b[k] = kPade13[k] / kPade13[0];
    Matrix U = M * (M6 * (b[13] * M6 + b[11] * M4 + b[9] * M2) + b[7] * M6 + b[5] * M4 + b[3] * M2 + b[1] * I);
    Matrix V = M6 * (b[12] * M6 + b[10] * M4 + b[8] * M2) + b[6] * M6 + b[4] * M4 + b[2] * M2 + b[0] * I;

    Matrix E = (V - U).partialPivLu().solve(V + U);
    for (int k = 0; k < s; ++k) E = E * E;
    if (!E.allFinite()) throw Error(ErrorCode::NonFinite, "matrix exponential overflowed");
    return E;
}

EigenSystem eigen_decompose(const Matrix& A) {
    require_square(A, "matrix");
    require_finite(A, "matrix");

    Eigen::EigenSolver<Matrix> es(A, true);
    if (es.info() != Eigen::Success) throw Error(ErrorCode::EigenFailure, "eigenvalue iteration did not converge");

    const Eigen::Index n = A.rows();
    CVector lambda = es.eigenvalues();
    CMatrix V = es.eigenvectors();

    std::vector<bool> done(static_cast<size_t>(n), false);
    for (Eigen::Index i = 0; i < n; ++i) {
        if (lambda(i).imag() != 0.0) continue;
        CVector v = V.col(i);
        Eigen::Index k = 0;
        v.cwiseAbs().maxCoeff(&k);
        const cplx phase = std::conj(v(k)) / std::abs(v(k));
        Vector re = (v * phase).real();
        V.col(i) = (re / re.norm()).cast<cplx>();
        lambda(i) = cplx(lambda(i).real(), 0.0);
        done[static_cast<size_t>(i)] = true;
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        if (done[static_cast<size_t>(i)] || lambda(i).imag() < 0.0) continue;
        Eigen::Index partner = -1;
        double best = std::numeric_limits<double>::infinity();
        for (Eigen::Index j = 0; j < n; ++j) {
            if (done[static_cast<size_t>(j)] || j == i || lambda(j).imag() >= 0.0) continue;
            const double d = std::abs(lambda(j) - std::conj(lambda(i)));
            if (d < best) {
                best = d;
                partner = j;
            }
        }
        if (partner < 0) throw Error(ErrorCode::EigenFailure, "complex eigenvalue without conjugate partner");
        V.col(i).normalize();
        lambda(partner) = std::conj(lambda(i));
        V.col(partner) = V.col(i).conjugate();
        done[static_cast<size_t>(i)] = true;
        done[static_cast<size_t>(partner)] = true;
    }
    if (std::find(done.begin(), done.end(), false) != done.end())
        throw Error(ErrorCode::EigenFailure, "complex eigenvalue without conjugate partner");

    EigenSystem sys;
    Eigen::JacobiSVD<CMatrix> svd(V);
    const auto& sv = svd.singularValues();
    sys.cond_V = sv(n - 1) > 0.0 ? sv(0) / sv(n - 1) : std::numeric_limits<double>::infinity();
    if (!(sys.cond_V <= kMaxEigvecCond))
        throw Error(ErrorCode::NonDiagonalizable,
                    "eigenvector matrix condition number " + std::to_string(sys.cond_V) + " exceeds 1e12");

    sys.W = V.fullPivLu().inverse();
    const CMatrix Ac = A.cast<cplx>();
    for (Eigen::Index i = 0; i < n; ++i)
        sys.residual = std::max(sys.residual, (Ac * V.col(i) - lambda(i) * V.col(i)).norm());
    sys.eigenvalues = std::move(lambda);
    sys.V = std::move(V);
    return sys;
}

namespace {

template <typename M>
double induced_norm_impl(const M& m, Norm p) {
    if (m.size() == 0) return 0.0;
    switch (p) {
        case Norm::One: return m.cwiseAbs().colwise().sum().maxCoeff();
        case Norm::Inf: return m.cwiseAbs().rowwise().sum().maxCoeff();
        case Norm::Two: break;
    }
    Eigen::JacobiSVD<typename M::PlainObject> svd(m);
    return svd.singularValues()(0);
}

template <typename Vec>
double vector_norm_impl(const Vec& v, Norm p) {
    switch (p) {
        case Norm::One: return v.cwiseAbs().sum();
        case Norm::Inf: return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff();
        case Norm::Two: break;
    }
    return v.norm();
}

}  // namespace

double induced_matrix_norm(const Matrix& M, Norm p) { return induced_norm_impl(M, p); }
double induced_matrix_norm(const CMatrix& M, Norm p) { return induced_norm_impl(M, p); }
double vector_norm(const Vector& v, Norm p) { return vector_norm_impl(v, p); }
double vector_norm(const CVector& v, Norm p) { return vector_norm_impl(v, p); }

Svd2xN svd_2xn(const Matrix& R) {
    if (R.rows() != 2 || R.cols() < 2)
        throw Error(ErrorCode::InvalidArgument, "svd_2xn expects a 2 x n matrix with n >= 2");
    require_finite(R, "svd input");

    Eigen::JacobiSVD<Matrix> svd(R, Eigen::ComputeFullU | Eigen::ComputeThinV);
    Matrix U = svd.matrixU();
    Matrix Vr = svd.matrixV();

    const bool flip = U(0, 0) < 0.0 || (U(0, 0) == 0.0 && U(1, 0) < 0.0);
    if (flip) {
        U.col(0) = -U.col(0);
        Vr.col(0) = -Vr.col(0);
    }
    Svd2xN out;
    out.sigma = svd.singularValues()(0);
    out.mu = svd.singularValues()(1);
    out.left_major = U.col(0);
    out.left_minor = Eigen::Vector2d(-U(1, 0), U(0, 0));
    if (U.col(1).dot(out.left_minor) < 0.0) Vr.col(1) = -Vr.col(1);
    out.right_major = Vr.col(0);
    out.right_minor = Vr.col(1);
    return out;
}

}  // namespace odecond
