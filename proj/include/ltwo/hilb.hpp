#ifndef LTWO_HILB_HPP
#define LTWO_HILB_HPP

// Finite-dimensional Hilbert spaces: dagger, tensor, biproducts, equalizers,
// the kernel order, and operator classification.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "ltwo/error.hpp"
#include "ltwo/numerics.hpp"

namespace ltwo {

inline Matrix adjoint(const Matrix& a) { return a.adjoint(); }

/// Kronecker product; basis pair (x, y) sits at index x * dim_y + y.
inline Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const Complex aij = a(i, j);
            for (std::size_t k = 0; k < b.rows(); ++k) {
                for (std::size_t l = 0; l < b.cols(); ++l) {
                    out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
                }
            }
        }
    }
    return out;
}

/// Block-diagonal direct sum.
inline Matrix dirsum(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() + b.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            out(i, j) = a(i, j);
        }
    }
    for (std::size_t i = 0; i < b.rows(); ++i) {
        for (std::size_t j = 0; j < b.cols(); ++j) {
            out(a.rows() + i, a.cols() + j) = b(i, j);
        }
    }
    return out;
}

inline Matrix dirsum(std::span<const Matrix> blocks) {
    Matrix out(0, 0);
    for (const auto& b : blocks) {
        out = dirsum(out, b);
    }
    return out;
}

/// Canonical projection from the direct sum of C^dims[k] onto block i.
inline Matrix projection(std::span<const std::size_t> dims, std::size_t i) {
    if (i >= dims.size()) {
        throw Error(ErrorCode::domain, "projection index " + std::to_string(i) + " out of range for " +
                                           std::to_string(dims.size()) + " blocks");
    }
    std::size_t total = 0;
    std::size_t offset = 0;
    for (std::size_t k = 0; k < dims.size(); ++k) {
        if (k == i) {
            offset = total;
        }
        total += dims[k];
    }
    Matrix out(dims[i], total);
    for (std::size_t r = 0; r < dims[i]; ++r) {
        out(r, offset + r) = 1.0;
    }
    return out;
}

/// Coprojection kappa_i = pi_i^dagger.
inline Matrix injection(std::span<const std::size_t> dims, std::size_t i) {
    return projection(dims, i).adjoint();
}

/// Cotuple [f_0, ..., f_{k-1}] out of the direct sum of the sources.
inline Matrix cotuple(std::span<const Matrix> parts) {
    if (parts.empty()) {
        throw Error(ErrorCode::domain, "cotuple of an empty family has no codomain");
    }
    const std::size_t rows = parts.front().rows();
    std::size_t cols = 0;
    for (const auto& p : parts) {
        if (p.rows() != rows) {
            throw Error(ErrorCode::domain, "cotuple components have different codomains");
        }
        cols += p.cols();
    }
    Matrix out(rows, cols);
    std::size_t offset = 0;
    for (const auto& p : parts) {
        for (std::size_t i = 0; i < rows; ++i) {
            for (std::size_t j = 0; j < p.cols(); ++j) {
                out(i, offset + j) = p(i, j);
            }
        }
        offset += p.cols();
    }
    return out;
}

namespace detail {
inline void require_parallel(const Matrix& a, const Matrix& b, const char* op) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw Error(ErrorCode::domain,
                    std::string(op) + " needs parallel morphisms, got " + a.shape() + " and " + b.shape());
    }
}
} // namespace detail

/// Orthonormal basis (columns) of ker(a - b); the equalizer inclusion.
inline Matrix equalizer(const Matrix& a, const Matrix& b, double rank_tol = 0.0) {
    detail::require_parallel(a, b, "equalizer");
    return null_space(a - b, rank_tol);
}

/// Projector onto ker(a)^perp, the support of a.
inline Matrix support_projector(const Matrix& a, double rank_tol = 0.0) {
    return projector(svd(a, rank_tol).v);
}

/// Smallest eigenvalue of a self-adjoint matrix, from the singular values of
/// a + s*I with s chosen so the shifted matrix is positive definite.
inline double min_eigenvalue_hermitian(const Matrix& a) {
    if (a.rows() != a.cols()) {
        throw Error(ErrorCode::domain, "eigenvalues need a square matrix");
    }
    if (a.rows() == 0) {
        return 0.0;
    }
    const double shift = operator_norm(a) + 1.0;
    const Matrix shifted = a + shift * Matrix::identity(a.rows());
    return singular_values(shifted).back() - shift;
}

struct OperatorClass {
    bool is_partial_isometry = false;
    bool is_isometry = false;
    bool is_unitary = false;
    bool is_self_adjoint = false;
    bool is_nonnegative = false;
    bool is_positive_definite = false;
    bool is_projection = false;
    double tolerance = 0.0;

    // Residuals backing the flags (operator norm).
    double partial_isometry_residual = 0.0; // ||a a^dagger a - a||
    double isometry_residual = 0.0;         // ||a^dagger a - I||
    double coisometry_residual = 0.0;       // ||a a^dagger - I||
    double self_adjoint_residual = 0.0;     // ||a - a^dagger||, square only
    double idempotent_residual = 0.0;       // ||a a - a||, square only
    double min_eigenvalue = 0.0;            // of (a + a^dagger)/2, square only
};

/// Each flag is decided within tol, scaled by max(1, ||a||). Flags are
/// computed as conjunctions so that unitary => isometry => partial isometry
/// and positive definite => nonnegative => self-adjoint always hold.
inline OperatorClass classify(const Matrix& a, double tol = kLawTolerance) {
    OperatorClass c;
    c.tolerance = tol;
    const double scale = std::max(1.0, operator_norm(a));
    const double bound = tol * scale;
    const Matrix ad = a.adjoint();

    c.partial_isometry_residual = operator_norm(a * ad * a - a);
    c.isometry_residual = operator_norm(ad * a - Matrix::identity(a.cols()));
    c.coisometry_residual = operator_norm(a * ad - Matrix::identity(a.rows()));
    c.is_partial_isometry = c.partial_isometry_residual <= bound;
    c.is_isometry = c.is_partial_isometry && c.isometry_residual <= bound;
    c.is_unitary = c.is_isometry && a.rows() == a.cols() && c.coisometry_residual <= bound;

    if (a.rows() == a.cols()) {
        c.self_adjoint_residual = operator_norm(a - ad);
        c.idempotent_residual = operator_norm(a * a - a);
        c.min_eigenvalue = min_eigenvalue_hermitian(0.5 * (a + ad));
        c.is_self_adjoint = c.self_adjoint_residual <= bound;
        c.is_nonnegative = c.is_self_adjoint && c.min_eigenvalue >= -bound;
        c.is_positive_definite = c.is_nonnegative && c.min_eigenvalue >= bound;
        c.is_projection = c.is_self_adjoint && c.idempotent_residual <= bound;
    }
    return c;
}

inline bool is_partial_isometry(const Matrix& a, double tol = kLawTolerance) {
    return classify(a, tol).is_partial_isometry;
}

/// a <= b when ker(a)^perp is inside ker(b)^perp and a, b agree there.
inline bool leq(const Matrix& a, const Matrix& b, double tol = kLawTolerance) {
    detail::require_parallel(a, b, "leq");
    const Matrix pa = support_projector(a);
    const Matrix pb = support_projector(b);
    const double scale = std::max({1.0, operator_norm(a), operator_norm(b)});
    return operator_norm(pa - pb * pa) <= tol && operator_norm((a - b) * pa) <= tol * scale;
}

/// The maximum of a finite directed family.
inline Matrix max_of_directed(std::span<const Matrix> family, double tol = kLawTolerance) {
    if (family.empty()) {
        throw Error(ErrorCode::directedness, "maximum of an empty family");
    }
    for (const auto& m : family) {
        detail::require_parallel(family.front(), m, "max_of_directed");
    }
    for (const auto& candidate : family) {
        const bool is_max = std::all_of(family.begin(), family.end(),
                                        [&](const Matrix& m) { return leq(m, candidate, tol); });
        if (is_max) {
            return candidate;
        }
    }
    throw Error(ErrorCode::directedness, "family has no maximum; it is not directed");
}

/// Inverse of a positive definite matrix via reciprocated singular values.
inline Matrix positive_inverse(const Matrix& p, double tol = kLawTolerance) {
    const auto c = classify(p, tol);
    if (!c.is_positive_definite) {
        throw Error(ErrorCode::precondition,
                    "matrix is not positive definite (min eigenvalue " + std::to_string(c.min_eigenvalue) + ")");
    }
    const auto s = svd(p);
    if (s.rank() != p.rows()) {
        throw Error(ErrorCode::precondition, "positive matrix is numerically singular");
    }
    Matrix vs = s.v;
    for (std::size_t i = 0; i < vs.rows(); ++i) {
        for (std::size_t j = 0; j < s.rank(); ++j) {
            vs(i, j) /= s.sigma[j];
        }
    }
    return vs * s.u.adjoint();
}

} // namespace ltwo

#endif // LTWO_HILB_HPP
