#pragma once

#include "odecond/matrix_core.hpp"

#include <optional>
#include <vector>

namespace odecond {

enum class BlockKind { SimpleSingleReal, SimpleSingleComplex, Unsupported };

[[nodiscard]] const char* to_string(BlockKind kind) noexcept;

/// Euclidean shape data of a complex block: the image of the unit circle
/// under (Re w, Im w) is an ellipse with semi-axes sigma >= mu.
struct EllipseGeometry {
    double V = 0.0;      ///< |v^T v|
    double delta = 0.0;  ///< arg(v^T v), 0 when V is negligible
    double W = 0.0;      ///< |w w^T|
    double sigma = 0.0;
    double mu = 0.0;
    double theta = 0.0;  ///< polar angle of the major left singular vector
    Matrix R;            ///< 2 x n, rows Re w and Im w
    Vector right_major;
    Vector right_minor;
};

struct EigenBlock {
    BlockKind kind = BlockKind::Unsupported;
    double r = 0.0;
    double omega = 0.0;
    std::vector<cplx> eigenvalues;
    Norm norm = Norm::Two;
    CVector v_hat;      ///< unit in the p-norm
    CRowVector w_hat;   ///< unit in the dual norm
    double f = 0.0;     ///< ||v|| ||w|| before normalization
    Vector comp_moduli_v, comp_angles_v;
    Vector comp_moduli_w, comp_angles_w;
    std::optional<EllipseGeometry> ellipse;  ///< complex blocks under the 2-norm only

    [[nodiscard]] bool is_complex() const noexcept { return kind == BlockKind::SimpleSingleComplex; }
    [[nodiscard]] bool is_supported() const noexcept { return kind != BlockKind::Unsupported; }
};

inline constexpr double kDefaultGroupTol = 1e-8;
inline constexpr double kDeltaCutoff = 1e-13;

struct SpectrumAnalysis {
    Norm norm = Norm::Two;
    double tol_group = kDefaultGroupTol;
    double scale = 1.0;  ///< max(1, ||A||_2)
    EigenSystem eig;
    std::vector<EigenBlock> blocks;  ///< ordered by decreasing real part

    [[nodiscard]] const EigenBlock& leading() const { return blocks.front(); }
};

/// Builds a block from one eigenpair. For complex lambda pass the member
/// with positive imaginary part.
[[nodiscard]] EigenBlock make_block(cplx lambda, const CVector& v, const CRowVector& w, Norm p);

[[nodiscard]] SpectrumAnalysis analyze_spectrum(const Matrix& A, Norm p, double tol_group = kDefaultGroupTol);

struct Projection {
    cplx value;          ///< w_hat u
    double modulus = 0.0;
    double gamma = 0.0;  ///< arg(w_hat u)
    double c = 0.0;      ///< u . right_major
    double d = 0.0;      ///< u . right_minor
};

/// Projection of a unit 2-norm vector on a complex block with ellipse data.
[[nodiscard]] Projection block_project(const EigenBlock& block, const Vector& u);

/// w_hat u for any supported block.
[[nodiscard]] cplx project(const EigenBlock& block, const Vector& u);

/// The real matrix contributed by the block to exp(tA) e^{-rt}.
[[nodiscard]] Matrix build_q(const EigenBlock& block, double t);

}  // namespace odecond
