#ifndef LTWO_NUMERICS_HPP
#define LTWO_NUMERICS_HPP

// Dense complex matrices and the one-sided (Hestenes) Jacobi SVD that every
// numerical judgement in the library is built on.
//
// The SVD orthogonalises the columns of A (or of A^dagger when A is wide) by
// complex plane rotations applied in a fixed cyclic order, so results are
// bit-for-bit reproducible. Singular values below `tol * sigma_max` are
// treated as zero and truncated into the null space.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ltwo/error.hpp"

namespace ltwo {

using Complex = std::complex<double>;

/// Default tolerance for law checks (partial isometry, equality, order).
inline constexpr double kLawTolerance = 1e-9;

/// Relative rank cutoff used when no explicit tolerance is given.
inline double default_rank_tolerance(std::size_t rows, std::size_t cols) {
    return 1e-12 * static_cast<double>(std::max<std::size_t>({rows, cols, 1}));
}

/// Dense row-major complex matrix; a linear map from C^cols to C^rows.
class Matrix {
public:
    Matrix() = default;

    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    Matrix(std::size_t rows, std::size_t cols, std::vector<Complex> data)
        : rows_(rows), cols_(cols), data_(std::move(data)) {
        if (data_.size() != rows_ * cols_) {
            throw Error(ErrorCode::domain, "matrix data has " + std::to_string(data_.size()) +
                                               " entries, expected " +
                                               std::to_string(rows_ * cols_));
        }
        for (const auto& z : data_) {
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
                throw Error(ErrorCode::domain, "matrix entries must be finite");
            }
        }
    }

    static Matrix from_rows(std::initializer_list<std::initializer_list<Complex>> rows) {
        const std::size_t m = rows.size();
        const std::size_t n = m == 0 ? 0 : rows.begin()->size();
        std::vector<Complex> data;
        data.reserve(m * n);
        for (const auto& row : rows) {
            if (row.size() != n) {
                throw Error(ErrorCode::domain, "ragged matrix literal");
            }
            data.insert(data.end(), row.begin(), row.end());
        }
        return Matrix(m, n, std::move(data));
    }

    static Matrix identity(std::size_t n) {
        Matrix out(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            out(i, i) = 1.0;
        }
        return out;
    }

    static Matrix diagonal(std::span<const double> values) {
        Matrix out(values.size(), values.size());
        for (std::size_t i = 0; i < values.size(); ++i) {
            out(i, i) = values[i];
        }
        return out;
    }

    static Matrix diagonal(std::initializer_list<double> values) {
        return diagonal(std::span<const double>(values.begin(), values.size()));
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return data_.empty(); }

    Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<const Complex> data() const noexcept { return data_; }

    /// Conjugate transpose.
    Matrix adjoint() const {
        Matrix out(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) {
                out(j, i) = std::conj((*this)(i, j));
            }
        }
        return out;
    }

    /// Columns [first, last).
    Matrix columns(std::size_t first, std::size_t last) const {
        Matrix out(rows_, last - first);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = first; j < last; ++j) {
                out(i, j - first) = (*this)(i, j);
            }
        }
        return out;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (const auto& z : data_) {
            s += std::norm(z);
        }
        return std::sqrt(s);
    }

    double max_abs() const {
        double m = 0.0;
        for (const auto& z : data_) {
            m = std::max(m, std::abs(z));
        }
        return m;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    friend Matrix operator+(const Matrix& a, const Matrix& b) {
        require_same_shape(a, b, "+");
        Matrix out = a;
        for (std::size_t k = 0; k < out.data_.size(); ++k) {
            out.data_[k] += b.data_[k];
        }
        return out;
    }

    friend Matrix operator-(const Matrix& a, const Matrix& b) {
        require_same_shape(a, b, "-");
        Matrix out = a;
        for (std::size_t k = 0; k < out.data_.size(); ++k) {
            out.data_[k] -= b.data_[k];
        }
        return out;
    }

    friend Matrix operator*(Complex s, const Matrix& a) {
        Matrix out = a;
        for (auto& z : out.data_) {
            z *= s;
        }
        return out;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) {
            throw Error(ErrorCode::domain, "cannot compose " + a.shape() + " after " + b.shape());
        }
        Matrix out(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i) {
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Complex aik = a(i, k);
                if (aik == Complex{}) {
                    continue;
                }
                for (std::size_t j = 0; j < b.cols_; ++j) {
                    out(i, j) += aik * b(k, j);
                }
            }
        }
        return out;
    }

    std::string shape() const {
        return std::to_string(rows_) + "x" + std::to_string(cols_);
    }

private:
    static void require_same_shape(const Matrix& a, const Matrix& b, const char* op) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) {
            throw Error(ErrorCode::domain,
                        std::string("shape mismatch in ") + op + ": " + a.shape() + " vs " + b.shape());
        }
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

/// Numerical-rank-truncated SVD: a = u * diag(sigma) * v^dagger.
struct SvdResult {
    Matrix u;                  // rows x r, orthonormal columns
    std::vector<double> sigma; // r strictly positive values, descending
    Matrix v;                  // cols x r, orthonormal columns
    double rank_tolerance = 0.0;

    std::size_t rank() const noexcept { return sigma.size(); }

    Matrix reconstruct() const {
        Matrix us = u;
        for (std::size_t i = 0; i < us.rows(); ++i) {
            for (std::size_t j = 0; j < sigma.size(); ++j) {
                us(i, j) *= sigma[j];
            }
        }
        return us * v.adjoint();
    }
};

namespace detail {

inline constexpr int kMaxJacobiSweeps = 80;

struct JacobiColumns {
    Matrix w; // a * v, columns mutually orthogonal
    Matrix v; // unitary
    std::vector<double> norms;
};

// One-sided Jacobi on a tall (rows >= cols) matrix.
inline JacobiColumns jacobi_orthogonalize(const Matrix& a) {
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    Matrix w = a;
    Matrix v = Matrix::identity(n);
    const double eps = std::numeric_limits<double>::epsilon();
    const double threshold = eps * static_cast<double>(std::max<std::size_t>(m, 1));

    auto col_dot = [&](std::size_t p, std::size_t q) {
        Complex s{};
        for (std::size_t i = 0; i < m; ++i) {
            s += std::conj(w(i, p)) * w(i, q);
        }
        return s;
    };
    auto col_norm2 = [&](std::size_t p) {
        double s = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            s += std::norm(w(i, p));
        }
        return s;
    };
    // Replace columns (p, q) of x by (c x_p - s e^{-i phi} x_q, s x_p + c e^{-i phi} x_q).
    auto rotate = [](Matrix& x, std::size_t p, std::size_t q, double c, double s, Complex phase) {
        for (std::size_t i = 0; i < x.rows(); ++i) {
            const Complex xp = x(i, p);
            const Complex xq = phase * x(i, q);
            x(i, p) = c * xp - s * xq;
            x(i, q) = s * xp + c * xq;
        }
    };

    for (std::size_t j = 0; j < n; ++j) {
        if (!std::isfinite(col_norm2(j))) {
            throw Error(ErrorCode::numerical_failure,
                        "squared norm of column " + std::to_string(j) + " of a " + a.shape() + " matrix overflows");
        }
    }

    int sweep = 0;
    double worst = 0.0;
    for (; sweep < kMaxJacobiSweeps; ++sweep) {
        bool rotated = false;
        worst = 0.0;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double alpha = col_norm2(p);
                const double beta = col_norm2(q);
                if (alpha == 0.0 || beta == 0.0) {
                    continue;
                }
                const Complex gamma = col_dot(p, q);
                const double g = std::abs(gamma);
                const double scale = std::sqrt(alpha) * std::sqrt(beta);
                worst = std::max(worst, g / scale);
                if (g <= threshold * scale) {
                    continue;
                }
                rotated = true;
                const Complex phase = std::conj(gamma) / g;
                const double zeta = (beta - alpha) / (2.0 * g);
                const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                rotate(w, p, q, c, s, phase);
                rotate(v, p, q, c, s, phase);
            }
        }
        if (!rotated) {
            break;
        }
    }
    if (sweep == kMaxJacobiSweeps) {
        std::ostringstream msg;
        msg << "Jacobi SVD did not converge after " << kMaxJacobiSweeps << " sweeps on a " << a.shape()
            << " matrix; worst relative off-diagonal " << worst;
        throw Error(ErrorCode::numerical_failure, msg.str());
    }

    std::vector<double> norms(n);
    for (std::size_t j = 0; j < n; ++j) {
        norms[j] = std::sqrt(col_norm2(j));
    }
    return {std::move(w), std::move(v), std::move(norms)};
}

// Untruncated SVD pieces for a tall matrix, sorted by descending singular value.
struct FullTallSvd {
    Matrix w;
    Matrix v;
    std::vector<double> sigma;
    std::vector<std::size_t> order;
};

inline FullTallSvd tall_svd(const Matrix& a) {
    auto jc = jacobi_orthogonalize(a);
    std::vector<std::size_t> order(a.cols());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return jc.norms[x] > jc.norms[y]; });
    std::vector<double> sigma;
    sigma.reserve(order.size());
    for (auto j : order) {
        sigma.push_back(jc.norms[j]);
    }
    return {std::move(jc.w), std::move(jc.v), std::move(sigma), std::move(order)};
}

} // namespace detail

/// All min(rows, cols) singular values, descending, with no truncation.
inline std::vector<double> singular_values(const Matrix& a) {
    if (a.rows() == 0 || a.cols() == 0) {
        return {};
    }
    const bool tall = a.rows() >= a.cols();
    return detail::tall_svd(tall ? a : a.adjoint()).sigma;
}

/// Rank-truncated SVD. `tol` is relative to the largest singular value; a
/// non-positive value selects default_rank_tolerance.
inline SvdResult svd(const Matrix& a, double tol = 0.0) {
    const double rank_tol = tol > 0.0 ? tol : default_rank_tolerance(a.rows(), a.cols());
    if (a.rows() == 0 || a.cols() == 0) {
        return {Matrix(a.rows(), 0), {}, Matrix(a.cols(), 0), rank_tol};
    }
    const bool tall = a.rows() >= a.cols();
    const Matrix work = tall ? a : a.adjoint();
    auto full = detail::tall_svd(work);

    const double cutoff = rank_tol * full.sigma.front();
    std::size_t r = 0;
    while (r < full.sigma.size() && full.sigma[r] > cutoff && full.sigma[r] > 0.0) {
        ++r;
    }

    // work = left * diag(sigma) * right^dagger with left = w / sigma.
    Matrix left(work.rows(), r);
    Matrix right(work.cols(), r);
    for (std::size_t k = 0; k < r; ++k) {
        const std::size_t j = full.order[k];
        for (std::size_t i = 0; i < work.rows(); ++i) {
            left(i, k) = full.w(i, j) / full.sigma[k];
        }
        for (std::size_t i = 0; i < work.cols(); ++i) {
            right(i, k) = full.v(i, j);
        }
    }
    std::vector<double> sigma(full.sigma.begin(), full.sigma.begin() + static_cast<std::ptrdiff_t>(r));
    if (tall) {
        return {std::move(left), std::move(sigma), std::move(right), rank_tol};
    }
    return {std::move(right), std::move(sigma), std::move(left), rank_tol};
}

inline std::size_t rank(const Matrix& a, double tol = 0.0) { return svd(a, tol).rank(); }

/// Largest singular value; 0 for empty matrices.
inline double operator_norm(const Matrix& a) {
    const auto s = singular_values(a);
    return s.empty() ? 0.0 : s.front();
}

/// Extends the orthonormal columns of q (n x r) to a unitary n x n matrix.
/// The new columns come from Gram-Schmidt (applied twice) against the
/// standard basis vectors e_0, e_1, ... in index order; e_k is accepted when
/// its residual exceeds 1/(2n) in squared norm, which always yields n columns.
inline Matrix complete_orthonormal(const Matrix& q) {
    const std::size_t n = q.rows();
    std::vector<std::vector<Complex>> basis;
    basis.reserve(n);
    for (std::size_t j = 0; j < q.cols(); ++j) {
        std::vector<Complex> col(n);
        for (std::size_t i = 0; i < n; ++i) {
            col[i] = q(i, j);
        }
        basis.push_back(std::move(col));
    }
    const double accept = 1.0 / (2.0 * static_cast<double>(std::max<std::size_t>(n, 1)));
    for (std::size_t k = 0; k < n && basis.size() < n; ++k) {
        std::vector<Complex> x(n);
        x[k] = 1.0;
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& b : basis) {
                Complex dot{};
                for (std::size_t i = 0; i < n; ++i) {
                    dot += std::conj(b[i]) * x[i];
                }
                for (std::size_t i = 0; i < n; ++i) {
                    x[i] -= dot * b[i];
                }
            }
        }
        double norm2 = 0.0;
        for (const auto& z : x) {
            norm2 += std::norm(z);
        }
        if (norm2 > accept) {
            const double inv = 1.0 / std::sqrt(norm2);
            for (auto& z : x) {
                z *= inv;
            }
            basis.push_back(std::move(x));
        }
    }
    if (basis.size() != n) {
        throw Error(ErrorCode::numerical_failure,
                    "basis completion produced " + std::to_string(basis.size()) + " of " +
                        std::to_string(n) + " vectors; input columns are not orthonormal");
    }
    Matrix out(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            out(i, j) = basis[j][i];
        }
    }
    return out;
}

/// Orthonormal basis (as columns) of the numerical kernel of a.
inline Matrix null_space(const Matrix& a, double tol = 0.0) {
    const auto s = svd(a, tol);
    return complete_orthonormal(s.v).columns(s.rank(), a.cols());
}

/// Orthogonal projector q q^dagger onto the span of orthonormal columns q.
inline Matrix projector(const Matrix& q) { return q * q.adjoint(); }

/// ||a - b|| <= tol * max(1, ||a||, ||b||) in operator norm.
inline bool approx_equal(const Matrix& a, const Matrix& b, double tol = kLawTolerance) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        return false;
    }
    const double scale = std::max({1.0, operator_norm(a), operator_norm(b)});
    return operator_norm(a - b) <= tol * scale;
}

} // namespace ltwo

#endif // LTWO_NUMERICS_HPP
