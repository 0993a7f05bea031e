#include "odecond/spectral.hpp"

#include "odecond/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace odecond {

const char* to_string(BlockKind kind) noexcept {
    switch (kind) {
        case BlockKind::SimpleSingleReal: return "SimpleSingleReal";
        case BlockKind::SimpleSingleComplex: return "SimpleSingleComplex";
        case BlockKind::Unsupported: return "Unsupported";
    }
    return "?";
}

namespace {

void fill_components(const CVector& v, Vector& moduli, Vector& angles) {
    moduli = v.cwiseAbs();
    angles.resize(v.size());
    for (Eigen::Index k = 0; k < v.size(); ++k) angles(k) = std::arg(v(k));
}

}  // namespace

EigenBlock make_block(cplx lambda, const CVector& v, const CRowVector& w, Norm p) {
    if (v.size() == 0 || v.size() != w.size())
        throw Error(ErrorCode::InvalidArgument, "eigenvector and left eigenvector sizes differ");

    EigenBlock b;
    b.norm = p;
    b.r = lambda.real();
    const bool real = lambda.imag() == 0.0;
    if (!real && lambda.imag() < 0.0)
        throw Error(ErrorCode::InvalidArgument, "complex block must be built from the eigenvalue with Im > 0");
    b.kind = real ? BlockKind::SimpleSingleReal : BlockKind::SimpleSingleComplex;
    b.omega = lambda.imag();
    b.eigenvalues = real ? std::vector<cplx>{lambda} : std::vector<cplx>{lambda, std::conj(lambda)};

    CVector vv = real ? CVector(v.real().cast<cplx>()) : v;
    CRowVector ww = real ? CRowVector(w.real().cast<cplx>()) : w;
    const double nv = vector_norm(vv, p);
    const double nw = vector_norm(CVector(ww.transpose()), dual(p));
    if (!(nv > 0.0) || !(nw > 0.0)) throw Error(ErrorCode::InvalidArgument, "zero eigenvector");
    b.v_hat = vv / nv;
    b.w_hat = ww / nw;
    b.f = nv * nw;
    fill_components(b.v_hat, b.comp_moduli_v, b.comp_angles_v);
    fill_components(b.w_hat.transpose(), b.comp_moduli_w, b.comp_angles_w);

    if (b.is_complex() && p == Norm::Two && v.size() >= 2) {
        EllipseGeometry e;
        const cplx vv2 = (b.v_hat.transpose() * b.v_hat)(0);
        const cplx ww2 = (b.w_hat * b.w_hat.transpose())(0);
        e.V = std::abs(vv2);
        e.delta = e.V <= kDeltaCutoff ? 0.0 : std::arg(vv2);
        e.W = std::abs(ww2);
        e.R.resize(2, v.size());
        e.R.row(0) = b.w_hat.real();
        e.R.row(1) = b.w_hat.imag();
        const Svd2xN s = svd_2xn(e.R);
        e.sigma = s.sigma;
        e.mu = s.mu;
        e.theta = std::atan2(s.left_major(1), s.left_major(0));
        e.right_major = s.right_major;
        e.right_minor = s.right_minor;
        b.ellipse = std::move(e);
    }
    return b;
}

SpectrumAnalysis analyze_spectrum(const Matrix& A, Norm p, double tol_group) {
    if (!(tol_group > 0.0) || !std::isfinite(tol_group))
        throw Error(ErrorCode::InvalidArgument, "grouping tolerance must be positive");

    SpectrumAnalysis out;
    out.norm = p;
    out.tol_group = tol_group;
    out.eig = eigen_decompose(A);
    out.scale = std::max(1.0, induced_matrix_norm(A, Norm::Two));

    const auto& lam = out.eig.eigenvalues;
    const Eigen::Index n = lam.size();
    std::vector<Eigen::Index> order(static_cast<size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
        if (lam(a).real() != lam(b).real()) return lam(a).real() > lam(b).real();
        return lam(a).imag() > lam(b).imag();
    });

    const double band = tol_group * out.scale;
    std::vector<std::vector<Eigen::Index>> groups;
    for (size_t k = 0; k < order.size(); ++k) {
        if (k > 0) {
            const double gap = lam(order[k - 1]).real() - lam(order[k]).real();
            if (gap > band && gap < 10.0 * band) {
                std::ostringstream msg;
                msg << "real parts " << lam(order[k - 1]).real() << " and " << lam(order[k]).real()
                    << " are neither clearly equal nor clearly distinct";
                throw Error(ErrorCode::AmbiguousGrouping, msg.str());
            }
            if (gap <= band) {
                groups.back().push_back(order[k]);
                continue;
            }
        }
        groups.push_back({order[k]});
    }

    for (const auto& g : groups) {
        const bool single_real = g.size() == 1 && lam(g[0]).imag() == 0.0;
        const bool conj_pair = g.size() == 2 && lam(g[0]).imag() > 0.0 && lam(g[1]) == std::conj(lam(g[0]));
        if (single_real || conj_pair) {
            const Eigen::Index i = g[0];
            out.blocks.push_back(make_block(lam(i), out.eig.V.col(i), out.eig.W.row(i), p));
            continue;
        }
        EigenBlock b;
        b.kind = BlockKind::Unsupported;
        b.norm = p;
        double sum = 0.0;
        for (Eigen::Index i : g) {
            b.eigenvalues.push_back(lam(i));
            sum += lam(i).real();
        }
        b.r = sum / static_cast<double>(g.size());
        out.blocks.push_back(std::move(b));
    }
    return out;
}

cplx project(const EigenBlock& block, const Vector& u) {
    if (!block.is_supported()) throw Error(ErrorCode::UnsupportedSpectrum, "projection on an unsupported block");
    if (u.size() != block.w_hat.size()) throw Error(ErrorCode::InvalidArgument, "vector size mismatch");
    return (block.w_hat * u.cast<cplx>())(0);
}

Projection block_project(const EigenBlock& block, const Vector& u) {
    if (!block.is_complex() || !block.ellipse)
        throw Error(ErrorCode::InvalidArgument, "block_project needs a complex block under the 2-norm");
    Projection pr;
    pr.value = project(block, u);
    pr.modulus = std::abs(pr.value);
    if (pr.modulus <= 1e-13) throw Error(ErrorCode::ZeroProjection, "vector has no component along the block");
    pr.gamma = std::arg(pr.value);
    pr.c = u.dot(block.ellipse->right_major);
    pr.d = u.dot(block.ellipse->right_minor);
    return pr;
}

Matrix build_q(const EigenBlock& block, double t) {
    if (!block.is_supported()) throw Error(ErrorCode::UnsupportedSpectrum, "build_q on an unsupported block");
    const CMatrix vw = block.v_hat * block.w_hat;
    if (!block.is_complex()) return block.f * vw.real();
    const cplx phase = std::polar(1.0, block.omega * t);
    return 2.0 * block.f * (phase * vw).real();
}

}  // namespace odecond
