#include "odecond/error.hpp"
#include "odecond/spectral.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace odecond;
using std::numbers::pi;

namespace {

Matrix av2() {
    Matrix A(3, 3);
    A << -1, 20, -20, 0, 19, -20, 0, 18.1, -19;
    return A;
}

ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error thrown";
    return ErrorCode::InvalidArgument;
}

// Random matrix whose spectrum has distinct real parts, with at least one complex pair.
Matrix generic_with_pair(oracle::Rng& rng, int n) {
    while (true) {
        Matrix A = rng.matrix(n, n);
        try {
            const auto a = analyze_spectrum(A, Norm::Two);
            bool all_ok = true;
            bool has_pair = false;
            for (const auto& b : a.blocks) {
                all_ok = all_ok && b.is_supported();
                has_pair = has_pair || b.is_complex();
            }
            if (all_ok && has_pair) return A;
        } catch (const Error&) {
        }
    }
}

}  // namespace

TEST(AnalyzeSpectrum, ExampleMatrixBlocks) {
    const SpectrumAnalysis a = analyze_spectrum(av2(), Norm::Two);
    ASSERT_EQ(a.blocks.size(), 2u);
    const EigenBlock& b1 = a.blocks[0];
    EXPECT_EQ(b1.kind, BlockKind::SimpleSingleComplex);
    EXPECT_NEAR(b1.r, 0.0, 1e-12);
    EXPECT_NEAR(b1.omega, 1.0, 1e-12);
    EXPECT_EQ(a.blocks[1].kind, BlockKind::SimpleSingleReal);
    EXPECT_NEAR(a.blocks[1].r, -1.0, 1e-12);
    ASSERT_TRUE(b1.ellipse);
    // Reference rows to four digits; the finer values come from an independent numpy evaluation.
    EXPECT_NEAR(b1.ellipse->V, 0.9988, 1e-4);
    EXPECT_NEAR(b1.ellipse->W, 0.9986, 1e-4);
    EXPECT_NEAR(b1.ellipse->V, 0.998814326, 1e-8);
    EXPECT_NEAR(b1.ellipse->W, 0.998621269, 1e-8);
}

TEST(AnalyzeSpectrum, RotationIsOneComplexBlock) {
    Matrix J(2, 2);
    J << 0, 1, -1, 0;
    const SpectrumAnalysis a = analyze_spectrum(J, Norm::Two);
    ASSERT_EQ(a.blocks.size(), 1u);
    EXPECT_EQ(a.blocks[0].kind, BlockKind::SimpleSingleComplex);
    EXPECT_NEAR(a.blocks[0].ellipse->V, 0.0, 1e-15);
    EXPECT_NEAR(a.blocks[0].ellipse->W, 0.0, 1e-15);
    EXPECT_EQ(a.blocks[0].ellipse->delta, 0.0);
}

TEST(AnalyzeSpectrum, RepeatedRealPartIsUnsupported) {
    Matrix D = Matrix::Zero(3, 3);
    D.diagonal() << 1, 1, -1;
    const SpectrumAnalysis a = analyze_spectrum(D, Norm::Two);
    ASSERT_EQ(a.blocks.size(), 2u);
    EXPECT_EQ(a.blocks[0].kind, BlockKind::Unsupported);
    EXPECT_EQ(a.blocks[0].eigenvalues.size(), 2u);
    EXPECT_EQ(a.blocks[1].kind, BlockKind::SimpleSingleReal);
}

TEST(AnalyzeSpectrum, GapInsideTheGreyZoneIsAmbiguous) {
    Matrix D = Matrix::Zero(2, 2);
    D.diagonal() << 0.5, 0.5 - 5e-8;
    EXPECT_EQ(code_of([&] { (void)analyze_spectrum(D, Norm::Two); }), ErrorCode::AmbiguousGrouping);
    D(1, 1) = 0.5 - 1e-6;
    EXPECT_EQ(analyze_spectrum(D, Norm::Two).blocks.size(), 2u);
    D(1, 1) = 0.5 - 1e-9;
    EXPECT_EQ(analyze_spectrum(D, Norm::Two).blocks.size(), 1u);
}

TEST(AnalyzeSpectrum, RealPartsStrictlyDecrease) {
    oracle::Rng rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        const SpectrumAnalysis a = analyze_spectrum(rng.matrix(6, 6), Norm::Two);
        for (size_t j = 1; j < a.blocks.size(); ++j) EXPECT_GT(a.blocks[j - 1].r, a.blocks[j].r);
    }
}

TEST(AnalyzeSpectrum, DefectiveMatrix) {
    Matrix J(3, 3);
    J << 2, 1, 0, 0, 2, 0, 0, 0, 1;
    EXPECT_EQ(code_of([&] { (void)analyze_spectrum(J, Norm::Two); }), ErrorCode::NonDiagonalizable);
}

TEST(EigenBlockShape, SingularValuesFromW) {
    oracle::Rng rng(6);
    for (int trial = 0; trial < 50; ++trial) {
        const SpectrumAnalysis a = analyze_spectrum(generic_with_pair(rng, 2 + trial % 5), Norm::Two);
        for (const auto& b : a.blocks) {
            if (!b.ellipse) continue;
            EXPECT_NEAR(b.ellipse->sigma * b.ellipse->sigma, 0.5 * (1 + b.ellipse->W), 1e-12);
            EXPECT_NEAR(b.ellipse->mu * b.ellipse->mu, 0.5 * (1 - b.ellipse->W), 1e-12);
            EXPECT_NEAR(b.w_hat.norm(), 1.0, 1e-13);
            EXPECT_NEAR(b.v_hat.norm(), 1.0, 1e-13);
            EXPECT_GE(b.ellipse->V, 0.0);
            EXPECT_LT(b.ellipse->V, 1.0);
            EXPECT_LT(b.ellipse->W, 1.0);
        }
    }
}

TEST(EigenBlockShape, ProjectionModulusFromSingularCoordinates) {
    oracle::Rng rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 2 + trial % 5;
        const SpectrumAnalysis a = analyze_spectrum(generic_with_pair(rng, n), Norm::Two);
        for (const auto& b : a.blocks) {
            if (!b.ellipse) continue;
            const Vector u = rng.unit(n);
            const Projection pr = block_project(b, u);
            const double s2 = b.ellipse->sigma * b.ellipse->sigma;
            const double m2 = b.ellipse->mu * b.ellipse->mu;
            EXPECT_NEAR(pr.modulus, std::sqrt(s2 * pr.c * pr.c + m2 * pr.d * pr.d), 1e-12);
        }
    }
}

TEST(EigenBlockShape, ReferenceLeftVectorRowsGiveW) {
    // Rows of [Re w; Im w] as printed to four digits for the 3x3 example.
    Matrix R(2, 3);
    R << 0, -0.4611, 0.5123, 0, -0.5123, 0.5123;
    const Svd2xN s = svd_2xn(R);
    EXPECT_NEAR(s.sigma * s.sigma, 0.5 * (1 + 0.9986), 2e-4);
    EXPECT_NEAR(s.mu * s.mu, 0.5 * (1 - 0.9986), 2e-4);
    const SpectrumAnalysis a = analyze_spectrum(av2(), Norm::Two);
    EXPECT_NEAR(a.leading().ellipse->sigma, s.sigma, 2e-4);
}

TEST(EigenBlockShape, PhaseGaugeInvariance) {
    oracle::Rng rng(8);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 2 + trial % 5;
        const SpectrumAnalysis a = analyze_spectrum(generic_with_pair(rng, n), Norm::Two);
        const int idx = static_cast<int>(std::find_if(a.blocks.begin(), a.blocks.end(),
                                                      [](const EigenBlock& b) { return b.is_complex(); }) -
                                         a.blocks.begin());
        const EigenBlock& b = a.blocks[static_cast<size_t>(idx)];
        const cplx lam(b.r, b.omega);
        const cplx ph = std::polar(1.0, rng.uniform(-pi, pi));
        const EigenBlock g = make_block(lam, ph * b.v_hat, b.w_hat / ph, Norm::Two);
        EXPECT_NEAR(g.f, 1.0, 1e-12);  // v_hat and w_hat are already unit
        EXPECT_NEAR(g.ellipse->V, b.ellipse->V, 1e-10);
        EXPECT_NEAR(g.ellipse->W, b.ellipse->W, 1e-10);
        EXPECT_NEAR(g.ellipse->sigma, b.ellipse->sigma, 1e-10);
        EXPECT_NEAR(g.ellipse->mu, b.ellipse->mu, 1e-10);
        const double t = rng.uniform(0, 5);
        EXPECT_LE((build_q(g, t) * b.f - build_q(b, t)).norm(), 1e-10 * build_q(b, t).norm());
        const Vector u = rng.unit(n);
        EXPECT_NEAR(std::abs(project(g, u)), std::abs(project(b, u)), 1e-10);
    }
}

TEST(EigenBlockShape, ScaleInvariance) {
    oracle::Rng rng(9);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 2 + trial % 5;
        const EigenSystem sys = eigen_decompose(rng.matrix(n, n));
        for (Eigen::Index i = 0; i < n; ++i) {
            const cplx lam = sys.eigenvalues(i);
            if (lam.imag() < 0) continue;
            const EigenBlock b = make_block(lam, sys.V.col(i), sys.W.row(i), Norm::Two);
            const double s = rng.uniform(0.1, 10.0);
            const EigenBlock c = make_block(lam, s * sys.V.col(i), sys.W.row(i) / s, Norm::Two);
            EXPECT_NEAR(c.f, b.f, 1e-12 * b.f);
            if (b.ellipse) {
                EXPECT_NEAR(c.ellipse->V, b.ellipse->V, 1e-12);
                EXPECT_NEAR(c.ellipse->W, b.ellipse->W, 1e-12);
            }
        }
    }
}

TEST(BuildQ, BlocksSumToTheExponential) {
    oracle::Rng rng(10);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 2 + trial % 5;
        const Matrix A = generic_with_pair(rng, n);
        const SpectrumAnalysis a = analyze_spectrum(A, Norm::Two);
        const double t = rng.uniform(0.0, 2.0);
        Matrix sum = Matrix::Zero(n, n);
        for (const auto& b : a.blocks) sum += std::exp(b.r * t) * build_q(b, t);
        const Matrix E = oracle::taylor_exp(t * A);
        EXPECT_LE((sum - E).norm(), 1e-9 * E.norm() * a.eig.cond_V);
    }
}

TEST(BuildQ, ExampleMatrixNormsAtZero) {
    const SpectrumAnalysis a = analyze_spectrum(av2(), Norm::Two);
    const EigenBlock& b = a.leading();
    oracle::Rng rng(3);
    for (int k = 0; k < 20; ++k) {
        const Vector u = rng.unit(3);
        const Projection pr = block_project(b, u);
        const double lhs = (build_q(b, 0.0) * u).norm();
        const double rhs = b.f * pr.modulus *
                           std::sqrt(2 * (1 + b.ellipse->V * std::cos(b.ellipse->delta + 2 * pr.gamma)));
        EXPECT_NEAR(lhs, rhs, 1e-12 * std::max(1.0, rhs));
    }
}

TEST(BuildQ, Periodic) {
    const SpectrumAnalysis a = analyze_spectrum(av2(), Norm::Two);
    const EigenBlock& b = a.leading();
    for (double t : {0.0, 0.3, 2.5}) {
        const Matrix q0 = build_q(b, t);
        EXPECT_LE((build_q(b, t + 2 * pi / b.omega) - q0).norm(), 1e-12 * q0.norm());
    }
}

TEST(BlockProject, OrthogonalVectorHasZeroProjection) {
    const SpectrumAnalysis a = analyze_spectrum(av2(), Norm::Two);
    const EigenBlock& b = a.leading();
    const Eigen::Vector3d re = b.w_hat.real().transpose();
    const Eigen::Vector3d im = b.w_hat.imag().transpose();
    Vector u = re.cross(im).normalized();
    EXPECT_EQ(code_of([&] { (void)block_project(b, u); }), ErrorCode::ZeroProjection);
}

TEST(BlockProject, OtherNormsUseDualNormalization) {
    const Matrix A = av2();
    for (Norm p : {Norm::One, Norm::Inf}) {
        const SpectrumAnalysis a = analyze_spectrum(A, p);
        const EigenBlock& b = a.leading();
        EXPECT_FALSE(b.ellipse.has_value());
        EXPECT_NEAR(vector_norm(b.v_hat, p), 1.0, 1e-13);
        EXPECT_NEAR(vector_norm(CVector(b.w_hat.transpose()), dual(p)), 1.0, 1e-13);
        // ||Q|| equals f g for the real block (g = 1).
        const EigenBlock& r = a.blocks[1];
        EXPECT_NEAR(induced_matrix_norm(build_q(r, 0.0), p), r.f, 1e-12 * r.f);
    }
}
