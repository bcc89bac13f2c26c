#ifndef LTWO_FUNCTOR_HPP
#define LTWO_FUNCTOR_HPP

// The l2 functor from finite partial injections to finite-dimensional
// Hilbert spaces. Label order is basis order, so images are exact 0/1
// partial permutation matrices and the functor laws hold with residual 0.

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>

#include "ltwo/error.hpp"
#include "ltwo/hilb.hpp"
#include "ltwo/numerics.hpp"
#include "ltwo/pinj.hpp"

namespace ltwo {

struct LtwoImage {
    PartialInjection source;
    Matrix matrix; // |cod| x |dom|, entry (y, x) = 1 iff (x, y) in the graph
};

inline std::size_t ltwo_object(const FiniteSet& x) { return x.size(); }

inline LtwoImage ltwo_morphism(const PartialInjection& f) {
    Matrix m(f.cod().size(), f.dom().size());
    for (std::size_t x = 0; x < f.dom().size(); ++x) {
        if (auto y = f.apply(x)) {
            m(*y, x) = 1.0;
        }
    }
    return {f, std::move(m)};
}

inline Matrix ltwo_matrix(const PartialInjection& f) { return ltwo_morphism(f).matrix; }

enum class MonoidalKind { tensor, oplus };

/// The comparison map l2(X) (x) l2(Y) -> l2(X (x) Y), or its (+) analogue,
/// built by sending each product basis vector to the basis vector of the
/// corresponding label of the combined set.
inline Matrix structure_map(MonoidalKind kind, const FiniteSet& x, const FiniteSet& y) {
    if (kind == MonoidalKind::tensor) {
        const FiniteSet xy = tensor_object(x, y);
        Matrix m(xy.size(), x.size() * y.size());
        for (std::size_t i = 0; i < x.size(); ++i) {
            for (std::size_t j = 0; j < y.size(); ++j) {
                m(*xy.index_of(pair_label(x[i], y[j])), i * y.size() + j) = 1.0;
            }
        }
        return m;
    }
    const FiniteSet xy = oplus_object(x, y);
    Matrix m(xy.size(), x.size() + y.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        m(*xy.index_of(left_label(x[i])), i) = 1.0;
    }
    for (std::size_t j = 0; j < y.size(); ++j) {
        m(*xy.index_of(right_label(y[j])), x.size() + j) = 1.0;
    }
    return m;
}

enum class PreservationLaw { functoriality, dagger, tensor, oplus, order };

inline std::string to_string(PreservationLaw law) {
    switch (law) {
    case PreservationLaw::functoriality: return "functoriality";
    case PreservationLaw::dagger: return "dagger";
    case PreservationLaw::tensor: return "tensor";
    case PreservationLaw::oplus: return "oplus";
    case PreservationLaw::order: return "order";
    }
    return "unknown";
}

inline std::optional<PreservationLaw> parse_preservation_law(const std::string& name) {
    for (auto law : {PreservationLaw::functoriality, PreservationLaw::dagger, PreservationLaw::tensor,
                     PreservationLaw::oplus, PreservationLaw::order}) {
        if (to_string(law) == name) {
            return law;
        }
    }
    return std::nullopt;
}

struct PreservationReport {
    PreservationLaw law;
    bool holds = false;
    double residual = 0.0; // max-abs difference of the two sides; 0 for order
};

/// Checks one preservation statement. Functoriality reads the pair as the
/// composite g after f; tensor and oplus check naturality of the structure
/// map; order checks f <= g in PInj implies l2 f <= l2 g in Hilb.
inline PreservationReport verify_preservation(PreservationLaw law, const PartialInjection& f,
                                              const std::optional<PartialInjection>& g = std::nullopt) {
    auto need_g = [&]() -> const PartialInjection& {
        if (!g) {
            throw Error(ErrorCode::domain, "law '" + to_string(law) + "' needs a second morphism");
        }
        return *g;
    };
    PreservationReport report{law};
    switch (law) {
    case PreservationLaw::functoriality: {
        const auto& gg = need_g();
        const Matrix lhs = ltwo_matrix(compose(gg, f));
        const Matrix rhs = ltwo_matrix(gg) * ltwo_matrix(f);
        report.residual = (lhs - rhs).max_abs();
        break;
    }
    case PreservationLaw::dagger: {
        report.residual = (ltwo_matrix(dagger(f)) - ltwo_matrix(f).adjoint()).max_abs();
        break;
    }
    case PreservationLaw::tensor: {
        const auto& gg = need_g();
        const Matrix lhs = ltwo_matrix(tensor(f, gg)) * structure_map(MonoidalKind::tensor, f.dom(), gg.dom());
        const Matrix rhs = structure_map(MonoidalKind::tensor, f.cod(), gg.cod()) *
                           kron(ltwo_matrix(f), ltwo_matrix(gg));
        report.residual = (lhs - rhs).max_abs();
        break;
    }
    case PreservationLaw::oplus: {
        const auto& gg = need_g();
        const Matrix lhs = ltwo_matrix(oplus(f, gg)) * structure_map(MonoidalKind::oplus, f.dom(), gg.dom());
        const Matrix rhs = structure_map(MonoidalKind::oplus, f.cod(), gg.cod()) *
                           dirsum(ltwo_matrix(f), ltwo_matrix(gg));
        report.residual = (lhs - rhs).max_abs();
        break;
    }
    case PreservationLaw::order: {
        const auto& gg = need_g();
        report.holds = !leq(f, gg) || leq(ltwo_matrix(f), ltwo_matrix(gg));
        return report;
    }
    }
    report.holds = report.residual == 0.0;
    return report;
}

/// Whether l2 f is invertible; agrees with f being a total bijection.
inline bool reflect_iso(const PartialInjection& f) {
    const Matrix m = ltwo_matrix(f);
    const bool invertible = m.rows() == m.cols() && rank(m) == m.rows();
    if (invertible != f.is_bijection()) {
        throw Error(ErrorCode::consistency, "l2 image invertibility disagrees with bijectivity of " + f.to_string());
    }
    return invertible;
}

/// Reads a basis-preserving partial isometry back as a partial injection:
/// every column must be zero or a standard basis vector (within tol), and
/// a a^dagger a = a. Returns nullopt when a is not in the direct image.
inline std::optional<PartialInjection> to_partial_injection(const Matrix& a, const FiniteSet& x, const FiniteSet& y,
                                                            double tol = kLawTolerance) {
    if (a.rows() != y.size() || a.cols() != x.size()) {
        throw Error(ErrorCode::domain, "matrix shape " + a.shape() + " does not match " +
                                           std::to_string(y.size()) + "x" + std::to_string(x.size()));
    }
    PartialInjection::IndexMap map(x.size());
    std::vector<bool> hit(y.size(), false);
    for (std::size_t j = 0; j < a.cols(); ++j) {
        std::optional<std::size_t> one;
        for (std::size_t i = 0; i < a.rows(); ++i) {
            const Complex z = a(i, j);
            if (std::abs(z - 1.0) <= tol) {
                if (one) {
                    return std::nullopt;
                }
                one = i;
            } else if (std::abs(z) > tol) {
                return std::nullopt;
            }
        }
        if (one) {
            if (hit[*one]) {
                return std::nullopt;
            }
            hit[*one] = true;
            map[j] = one;
        }
    }
    if (!is_partial_isometry(a, tol)) {
        return std::nullopt;
    }
    return PartialInjection::from_indices(x, y, std::move(map));
}

inline bool is_basis_preserving(const Matrix& a, const FiniteSet& x, const FiniteSet& y,
                                double tol = kLawTolerance) {
    return to_partial_injection(a, x, y, tol).has_value();
}

} // namespace ltwo

#endif // LTWO_FUNCTOR_HPP
