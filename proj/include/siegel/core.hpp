#ifndef SIEGEL_CORE_HPP
#define SIEGEL_CORE_HPP

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <utility>
#include <vector>

#include "siegel/errors.hpp"

namespace siegel {

using Mat = Eigen::MatrixXd;
using CMat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXd;
using complexd = std::complex<double>;

// Tolerances shared across the library.
inline constexpr double kSymmetrizeTol = 1e-8;   // max allowed asymmetry on input
inline constexpr double kPosDefRelTol = 1e-12;   // lambda_min > tol * lambda_max
inline constexpr double kSymplecticTol = 1e-10;  // residual of the defining relations
inline constexpr double kEigImagTol = 1e-9;      // imaginary residue of cross-ratio spectrum

inline bool is_integral_matrix(const Mat& m, double tol = 0.0) {
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            if (std::abs(m(i, j) - std::round(m(i, j))) > tol) return false;
    return true;
}

// Real symmetric matrix, symmetrized on construction. An asymmetry beyond
// kSymmetrizeTol is rejected rather than silently repaired.
class RealSymMatrix {
public:
    explicit RealSymMatrix(const Mat& m) {
        if (m.rows() != m.cols() || m.rows() < 1)
            throw order_mismatch("RealSymMatrix: input must be square and nonempty");
        const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
        if (asym > kSymmetrizeTol)
            throw not_symmetric("RealSymMatrix: asymmetry " + std::to_string(asym) +
                                " exceeds tolerance");
        entries_ = 0.5 * (m + m.transpose());
        correction_ = asym;
    }

    int order() const { return static_cast<int>(entries_.rows()); }
    const Mat& entries() const { return entries_; }
    double applied_correction() const { return correction_; }

private:
    Mat entries_;
    double correction_ = 0.0;
};

inline double smallest_eigenvalue(const Mat& sym) {
    Eigen::SelfAdjointEigenSolver<Mat> es(sym, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

inline bool is_positive_definite(const Mat& sym) {
    Eigen::SelfAdjointEigenSolver<Mat> es(sym, Eigen::EigenvaluesOnly);
    const double lo = es.eigenvalues().minCoeff();
    const double hi = es.eigenvalues().cwiseAbs().maxCoeff();
    return lo > kPosDefRelTol * hi;
}

// A point Z = X + iY of the Siegel upper half space h_g.
class SiegelPoint {
public:
    SiegelPoint(const RealSymMatrix& X, const RealSymMatrix& Y)
        : X_(X.entries()), Y_(Y.entries()) {
        if (X.order() != Y.order())
            throw order_mismatch("SiegelPoint: X and Y orders differ");
        if (!is_positive_definite(Y_))
            throw not_positive_definite("SiegelPoint: imaginary part is not positive definite");
    }

    SiegelPoint(const Mat& X, const Mat& Y)
        : SiegelPoint(RealSymMatrix(X), RealSymMatrix(Y)) {}

    // Genus-1 convenience.
    static SiegelPoint from_tau(complexd tau) {
        Mat x(1, 1), y(1, 1);
        x(0, 0) = tau.real();
        y(0, 0) = tau.imag();
        return SiegelPoint(x, y);
    }

    int genus() const { return static_cast<int>(X_.rows()); }
    const Mat& X() const { return X_; }
    const Mat& Y() const { return Y_; }
    CMat Z() const { return X_.cast<complexd>() + complexd(0, 1) * Y_.cast<complexd>(); }
    complexd tau() const { return complexd(X_(0, 0), Y_(0, 0)); }

private:
    Mat X_, Y_;
};

inline SiegelPoint make_siegel_point(const RealSymMatrix& X, const RealSymMatrix& Y) {
    return SiegelPoint(X, Y);
}

// Element of Sp(2g, R) in block form (A, B; C, D).
class SymplecticElement {
public:
    SymplecticElement(const Mat& A, const Mat& B, const Mat& C, const Mat& D)
        : A_(A), B_(B), C_(C), D_(D) {
        const auto g = A.rows();
        if (A.cols() != g || B.rows() != g || B.cols() != g || C.rows() != g ||
            C.cols() != g || D.rows() != g || D.cols() != g || g < 1)
            throw order_mismatch("SymplecticElement: blocks must be square of equal order");
        const double r1 = (A.transpose() * C - C.transpose() * A).cwiseAbs().maxCoeff();
        const double r2 = (B.transpose() * D - D.transpose() * B).cwiseAbs().maxCoeff();
        const double r3 = (A.transpose() * D - C.transpose() * B -
                           Mat::Identity(g, g)).cwiseAbs().maxCoeff();
        if (r1 > kSymplecticTol || r2 > kSymplecticTol || r3 > kSymplecticTol)
            throw not_symplectic("SymplecticElement: relation residual " +
                                 std::to_string(std::max({r1, r2, r3})));
        integral_ = is_integral_matrix(A_) && is_integral_matrix(B_) &&
                    is_integral_matrix(C_) && is_integral_matrix(D_);
    }

    static SymplecticElement identity(int g) {
        Mat I = Mat::Identity(g, g), Z = Mat::Zero(g, g);
        return SymplecticElement(I, Z, Z, I);
    }

    // The standard form J = (0, I; -I, 0).
    static SymplecticElement inversion(int g) {
        Mat I = Mat::Identity(g, g), Z = Mat::Zero(g, g);
        return SymplecticElement(Z, I, -I, Z);
    }

    // Translation Z -> Z + S, S symmetric.
    static SymplecticElement translation(const Mat& S) {
        const auto g = S.rows();
        Mat I = Mat::Identity(g, g), Z = Mat::Zero(g, g);
        return SymplecticElement(I, 0.5 * (S + S.transpose()), Z, I);
    }

    // Basis change Z -> U Z U^T for U in GL(g, Z) (or GL(g, R)).
    static SymplecticElement basis_change(const Mat& U) {
        const auto g = U.rows();
        Mat Z = Mat::Zero(g, g);
        return SymplecticElement(U, Z, Z, U.inverse().transpose());
    }

    int genus() const { return static_cast<int>(A_.rows()); }
    const Mat& A() const { return A_; }
    const Mat& B() const { return B_; }
    const Mat& C() const { return C_; }
    const Mat& D() const { return D_; }
    bool integral() const { return integral_; }

    SymplecticElement operator*(const SymplecticElement& o) const {
        if (genus() != o.genus())
            throw genus_mismatch("SymplecticElement: product of different genera");
        return SymplecticElement(A_ * o.A_ + B_ * o.C_, A_ * o.B_ + B_ * o.D_,
                                 C_ * o.A_ + D_ * o.C_, C_ * o.B_ + D_ * o.D_);
    }

    SymplecticElement inverse() const {
        // M^-1 = (D^T, -B^T; -C^T, A^T) for symplectic M.
        return SymplecticElement(D_.transpose(), -B_.transpose(),
                                 -C_.transpose(), A_.transpose());
    }

private:
    Mat A_, B_, C_, D_;
    bool integral_ = false;
};

inline SymplecticElement make_symplectic(const Mat& A, const Mat& B, const Mat& C,
                                         const Mat& D) {
    return SymplecticElement(A, B, C, D);
}

// Moebius action Z -> (AZ + B)(CZ + D)^-1.
inline SiegelPoint sp_action(const SymplecticElement& M, const SiegelPoint& Z) {
    if (M.genus() != Z.genus())
        throw genus_mismatch("sp_action: genus mismatch");
    const CMat Zc = Z.Z();
    const CMat num = M.A().cast<complexd>() * Zc + M.B().cast<complexd>();
    const CMat den = M.C().cast<complexd>() * Zc + M.D().cast<complexd>();
    Eigen::FullPivLU<CMat> lu(den);
    if (!lu.isInvertible())
        throw singular_denominator("sp_action: CZ + D is numerically singular");
    CMat W = num * lu.inverse();
    W = 0.5 * (W + W.transpose().eval());
    return SiegelPoint(W.real(), W.imag());
}

// Eigenvalues of the cross-ratio matrix R(Z1, Z2), returned sorted ascending.
//
// Z2 is moved to iI by an exact isometry (the affine symplectic map with
// A = Y2^{-1/2}, B = -Y2^{-1/2} X2). With W the image of Z1, the Cayley
// transform T = (W - iI)(W + iI)^{-1} is complex symmetric, so T T^H is
// Hermitian positive semidefinite and similar to R; its spectrum is real
// in [0, 1) by construction.
inline Vec cross_ratio_eigenvalues(const SiegelPoint& Z1, const SiegelPoint& Z2) {
    if (Z1.genus() != Z2.genus())
        throw genus_mismatch("cross_ratio_eigenvalues: genus mismatch");
    const int g = Z1.genus();
    Eigen::SelfAdjointEigenSolver<Mat> es(Z2.Y());
    const Mat Yr = es.operatorInverseSqrt();
    const CMat W = (Yr * (Z1.X() - Z2.X()) * Yr).cast<complexd>() +
                   complexd(0, 1) * (Yr * Z1.Y() * Yr).cast<complexd>();
    const CMat I = CMat::Identity(g, g);
    CMat T = (W - complexd(0, 1) * I) *
             (W + complexd(0, 1) * I).fullPivLu().inverse();
    T = 0.5 * (T + T.transpose().eval());  // exact in theory, kills roundoff
    const CMat H = T * T.adjoint();
    const double asym = (H - H.adjoint()).cwiseAbs().maxCoeff();
    if (asym > kEigImagTol)
        throw internal_consistency("cross_ratio_eigenvalues: Hermitian residual " +
                                   std::to_string(asym));
    Eigen::SelfAdjointEigenSolver<CMat> hs(H, Eigen::EigenvaluesOnly);
    Vec rho = hs.eigenvalues();
    for (int k = 0; k < g; ++k) {
        if (rho(k) < -kEigImagTol || rho(k) >= 1.0)
            throw internal_consistency("cross_ratio_eigenvalues: eigenvalue out of [0,1)");
        if (rho(k) < 0) rho(k) = 0;
    }
    return rho;
}

// Invariant distance for the metric tr(Y^-1 dZ Y^-1 dZbar), normalized so the
// restriction to h_1 is the Poincare hyperbolic metric:
//   d^2 = sum_k log^2((1 + sqrt(rho_k)) / (1 - sqrt(rho_k))).
inline double siegel_distance(const SiegelPoint& Z1, const SiegelPoint& Z2) {
    const Vec rho = cross_ratio_eigenvalues(Z1, Z2);
    double d2 = 0;
    for (int k = 0; k < rho.size(); ++k) {
        const double s = std::sqrt(rho(k));
        const double t = std::log((1 + s) / (1 - s));
        d2 += t * t;
    }
    return std::sqrt(d2);
}

// Stabilizing embedding Sp(2g) -> Sp(2g'), padding A, D by identity and
// B, C by zero blocks.
inline SymplecticElement sp_embed(const SymplecticElement& M, int target_genus) {
    const int g = M.genus();
    if (target_genus < g)
        throw genus_mismatch("sp_embed: target genus smaller than source");
    if (target_genus == g) return M;
    const int G = target_genus;
    Mat A = Mat::Identity(G, G), B = Mat::Zero(G, G), C = Mat::Zero(G, G),
        D = Mat::Identity(G, G);
    A.topLeftCorner(g, g) = M.A();
    B.topLeftCorner(g, g) = M.B();
    C.topLeftCorner(g, g) = M.C();
    D.topLeftCorner(g, g) = M.D();
    return SymplecticElement(A, B, C, D);
}

} // namespace siegel

#endif
