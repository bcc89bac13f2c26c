#ifndef LTWO_FACTORIZE_HPP
#define LTWO_FACTORIZE_HPP

// Polar decomposition, factorization of partial isometries through l2,
// essential fullness, partial-isometry chains for small-norm maps, and the
// positive / partial-isometry diagonal fill-in.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <sstream>
#include <string>
#include <vector>

#include "ltwo/error.hpp"
#include "ltwo/functor.hpp"
#include "ltwo/hilb.hpp"
#include "ltwo/numerics.hpp"
#include "ltwo/pinj.hpp"

namespace ltwo {

enum class PolarSide { left, right };
enum class PolarFlavor { kernel_matched, strong };

/// right: input = isometry_part * positive_part
/// left:  input = positive_part * isometry_part
struct PolarResult {
    Matrix isometry_part;
    Matrix positive_part;
    PolarSide side = PolarSide::right;
    PolarFlavor flavor = PolarFlavor::kernel_matched;

    Matrix reconstruct() const {
        return side == PolarSide::right ? isometry_part * positive_part : positive_part * isometry_part;
    }
};

namespace detail {
// q diag(s) q^dagger, plus the identity on span(q)^perp when `fill` is set.
inline Matrix spectral_positive(const Matrix& q, const std::vector<double>& s, bool fill) {
    Matrix qs = q;
    for (std::size_t i = 0; i < qs.rows(); ++i) {
        for (std::size_t j = 0; j < s.size(); ++j) {
            qs(i, j) *= s[j];
        }
    }
    Matrix p = qs * q.adjoint();
    if (fill) {
        p = p + (Matrix::identity(q.rows()) - projector(q));
    }
    return p;
}
} // namespace detail

/// Polar decomposition from a = U_r S V_r^dagger. The partial isometry is
/// U_r V_r^dagger; the positive part is V_r S V_r^dagger (right) or
/// U_r S U_r^dagger (left). The strong flavor gives the positive part
/// eigenvalue 1 on the truncated directions, making it positive definite.
inline PolarResult polar(const Matrix& a, PolarSide side = PolarSide::right,
                         PolarFlavor flavor = PolarFlavor::kernel_matched, double rank_tol = 0.0) {
    const auto s = svd(a, rank_tol);
    const bool strong = flavor == PolarFlavor::strong;
    PolarResult out;
    out.side = side;
    out.flavor = flavor;
    out.isometry_part = s.u * s.v.adjoint();
    out.positive_part = detail::spectral_positive(side == PolarSide::right ? s.v : s.u, s.sigma, strong);
    return out;
}

enum class FactorizationMode { isometric, general };

/// input = v * l2(f) * u
struct LtwoFactorization {
    Matrix u;
    PartialInjection f;
    Matrix v;
    FactorizationMode mode = FactorizationMode::isometric;

    Matrix reconstruct() const { return v * ltwo_matrix(f) * u; }
};

/// Factors a partial isometry i: C^n -> C^m as v * l2(f) * u with u, v
/// unitary and f: {0..n-1} -> {0..m-1} sending k to k for k < rank.
inline LtwoFactorization isometry_factor(const Matrix& i, double tol = kLawTolerance) {
    const auto c = classify(i, tol);
    if (!c.is_partial_isometry) {
        std::ostringstream msg;
        msg << "not a partial isometry: ||i i^dagger i - i|| = " << c.partial_isometry_residual;
        throw Error(ErrorCode::precondition, msg.str());
    }
    // Singular values of a partial isometry cluster at 0 and 1.
    const auto s = svd(i);
    const std::size_t n = i.cols();
    const std::size_t m = i.rows();
    const auto r = static_cast<std::size_t>(
        std::count_if(s.sigma.begin(), s.sigma.end(), [](double x) { return x > 0.5; }));

    PartialInjection::IndexMap map(n);
    for (std::size_t k = 0; k < r; ++k) {
        map[k] = k;
    }
    LtwoFactorization out;
    out.u = complete_orthonormal(s.v.columns(0, r)).adjoint();
    out.v = complete_orthonormal(s.u.columns(0, r));
    out.f = PartialInjection::from_indices(FiniteSet::range(n), FiniteSet::range(m), std::move(map));
    out.mode = FactorizationMode::isometric;
    return out;
}

/// Any g = v * l2(f) * u with u unitary and v invertible: left strong polar
/// g = p i, factor i = v' l2(f) u, then v = p v'.
inline LtwoFactorization essential_full_factor(const Matrix& g, double tol = kLawTolerance) {
    const auto pol = polar(g, PolarSide::left, PolarFlavor::strong);
    auto out = isometry_factor(pol.isometry_part, tol);
    out.v = pol.positive_part * out.v;
    out.mode = FactorizationMode::general;
    return out;
}

/// [a, b] with a = (c, sqrt(1-|c|^2))^T and b = (1, 0); b * a = c.
inline std::vector<Matrix> scalar_chain(Complex c, double tol = kLawTolerance) {
    const double mag = std::abs(c);
    if (mag > 1.0 + tol) {
        throw Error(ErrorCode::precondition, "|c| = " + std::to_string(mag) + " exceeds 1");
    }
    const double rest = std::sqrt(std::max(0.0, 1.0 - mag * mag));
    Matrix a(2, 1);
    a(0, 0) = c;
    a(1, 0) = rest;
    Matrix b(1, 2);
    b(0, 0) = 1.0;
    return {std::move(a), std::move(b)};
}

/// Writes f: C^m -> C^n with ||f|| <= 1/sqrt(mn) as a chain of four partial
/// isometries [diag, A, B, codiag], applied left to right:
///   diag:   C^m -> C^{mn}, x_i / sqrt(n) copied to every slot (i, j)
///   A, B:   direct sums over slots of scalar_chain(sqrt(mn) f_{ji})
///   codiag: C^{mn} -> C^n, sums slot (i, j) into output j, over sqrt(m)
/// Slot (i, j) has index i * n + j.
inline std::vector<Matrix> finite_rank_chain(const Matrix& f, double tol = kLawTolerance) {
    const std::size_t n = f.rows();
    const std::size_t m = f.cols();
    if (n == 0 || m == 0) {
        throw Error(ErrorCode::precondition, "finite_rank_chain needs nonzero dimensions");
    }
    const double mn = static_cast<double>(m * n);
    const double norm = operator_norm(f);
    const double bound = 1.0 / std::sqrt(mn);
    if (norm > bound + tol) {
        std::ostringstream msg;
        msg << "operator norm " << norm << " exceeds 1/sqrt(mn) = " << bound;
        throw Error(ErrorCode::precondition, msg.str());
    }
    const std::size_t slots = m * n;
    Matrix diag(slots, m);
    Matrix codiag(n, slots);
    const double wn = 1.0 / std::sqrt(static_cast<double>(n));
    const double wm = 1.0 / std::sqrt(static_cast<double>(m));
    std::vector<Matrix> firsts;
    std::vector<Matrix> seconds;
    firsts.reserve(slots);
    seconds.reserve(slots);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const std::size_t slot = i * n + j;
            diag(slot, i) = wn;
            codiag(j, slot) = wm;
            Complex c = std::sqrt(mn) * f(j, i);
            if (std::abs(c) > 1.0) {
                c /= std::abs(c); // rounding within tol of the unit circle
            }
            auto pair = scalar_chain(c, tol);
            firsts.push_back(std::move(pair[0]));
            seconds.push_back(std::move(pair[1]));
        }
    }
    return {std::move(diag), dirsum(firsts), dirsum(seconds), std::move(codiag)};
}

/// Composite of a chain applied left to right.
inline Matrix compose_chain(const std::vector<Matrix>& chain) {
    if (chain.empty()) {
        throw Error(ErrorCode::domain, "empty chain");
    }
    Matrix out = chain.front();
    for (std::size_t k = 1; k < chain.size(); ++k) {
        out = chain[k] * out;
    }
    return out;
}

/// Fill-in d for the commuting square  r * top = bottom * l  with l positive
/// definite and r a partial isometry: d = top * l^{-1}, so that d l = top
/// and r d = bottom.
inline Matrix diagonal_fill_in(const Matrix& l, const Matrix& r, const Matrix& top, const Matrix& bottom,
                               double tol = kLawTolerance) {
    if (!classify(l, tol).is_positive_definite) {
        throw Error(ErrorCode::precondition, "left map l is not positive definite");
    }
    if (!classify(r, tol).is_partial_isometry) {
        throw Error(ErrorCode::precondition, "right map r is not a partial isometry");
    }
    if (top.cols() != l.cols() || bottom.cols() != l.rows() || r.cols() != top.rows() ||
        bottom.rows() != r.rows()) {
        throw Error(ErrorCode::domain, "square shapes do not fit together");
    }
    const Matrix lhs = r * top;
    const Matrix rhs = bottom * l;
    const double scale = std::max({1.0, operator_norm(lhs), operator_norm(rhs)});
    if (operator_norm(lhs - rhs) > tol * scale) {
        throw Error(ErrorCode::precondition, "square does not commute: ||r top - bottom l|| = " +
                                                 std::to_string(operator_norm(lhs - rhs)));
    }
    return top * positive_inverse(l, tol);
}

} // namespace ltwo

#endif // LTWO_FACTORIZE_HPP
