#ifndef LTWO_LAWLAB_HPP
#define LTWO_LAWLAB_HPP

// Executable witnesses for the negative results (finite counterexamples and
// growth demos) and the seeded property-suite driver.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ltwo/error.hpp"
#include "ltwo/factorize.hpp"
#include "ltwo/functor.hpp"
#include "ltwo/hilb.hpp"
#include "ltwo/inversecat.hpp"
#include "ltwo/io.hpp"
#include "ltwo/numerics.hpp"
#include "ltwo/pinj.hpp"
#include "ltwo/random.hpp"

namespace ltwo {

// --- equalizers are not preserved -------------------------------------------

struct EqualizerDemo {
    std::size_t hilb_dim = 0;  // dim eq(l2 f, l2 g)
    std::size_t pinj_size = 0; // |eq(f, g)| = dim l2(eq(f, g))
};

inline EqualizerDemo demo_equalizer_nonpreservation(const PartialInjection& f, const PartialInjection& g) {
    return {equalizer(ltwo_matrix(f), ltwo_matrix(g)).cols(), equalizer(f, g).object.size()};
}

/// f = {(0,a)}, g = {(1,a)} : {0,1} -> {a}.
inline EqualizerDemo demo_equalizer_nonpreservation() {
    const FiniteSet x{"0", "1"};
    const FiniteSet y{"a"};
    return demo_equalizer_nonpreservation(PartialInjection(x, y, {{"0", "a"}}), PartialInjection(x, y, {{"1", "a"}}));
}

inline Json to_json(const EqualizerDemo& d) {
    return Json{{"demo", "equalizer"}, {"hilb_dim", d.hilb_dim}, {"pinj_size", d.pinj_size},
                {"preserved", d.hilb_dim == d.pinj_size}};
}

// --- partial isometries do not compose --------------------------------------

struct IsometryCompositionDemo {
    double theta = 0.0;
    double composite = 0.0;
    bool is_partial_isometry = false;
    double residual = 0.0; // ||c c^dagger c - c|| for the 1x1 composite
};

/// (sin t  cos t) after (1, 0)^T.
inline IsometryCompositionDemo demo_isometry_composition(double theta, double tol = kLawTolerance) {
    Matrix first(2, 1);
    first(0, 0) = 1.0;
    Matrix second(1, 2);
    second(0, 0) = std::sin(theta);
    second(0, 1) = std::cos(theta);
    const Matrix composite = second * first;
    const auto c = classify(composite, tol);
    return {theta, composite(0, 0).real(), c.is_partial_isometry, c.partial_isometry_residual};
}

inline Json to_json(const IsometryCompositionDemo& d) {
    return Json{{"demo", "isometry-composition"},
                {"theta", d.theta},
                {"composite", d.composite},
                {"is_partial_isometry", d.is_partial_isometry},
                {"residual", d.residual}};
}

// --- PInj has no binary coproducts ------------------------------------------

struct CoproductCandidate {
    PartialInjection left;  // x -> Z
    PartialInjection right; // y -> Z
    bool survives = true;
    // First refuting test cospan (f: x -> W, g: y -> W), when refuted.
    std::optional<PartialInjection> test_left{};
    std::optional<PartialInjection> test_right{};
    std::size_t mediators = 0; // 0: existence fails, >= 2: uniqueness fails
};

struct CoproductSearch {
    FiniteSet x;
    FiniteSet y;
    std::size_t size_bound = 0;
    std::size_t test_bound = 0;
    std::vector<CoproductCandidate> candidates;

    std::size_t survivors() const {
        return static_cast<std::size_t>(
            std::count_if(candidates.begin(), candidates.end(), [](const auto& c) { return c.survives; }));
    }
};

/// Every candidate Z = {0..k-1} (k <= size_bound) with every pair of
/// coprojections is tested against all cospans into W = {0..w-1}
/// (w <= test_bound) by counting mediating maps m with m kx = f, m ky = g.
inline CoproductSearch search_binary_coproduct(const FiniteSet& x, const FiniteSet& y, std::size_t size_bound,
                                               std::size_t test_bound = 2) {
    if (x.size() > 2 || y.size() > 2 || size_bound > 4 || test_bound > 3) {
        throw Error(ErrorCode::resource, "coproduct search bounds too large (|x|,|y| <= 2, size bound <= 4)");
    }
    CoproductSearch out{x, y, size_bound, test_bound, {}};
    for (std::size_t k = 0; k <= size_bound; ++k) {
        const auto z = FiniteSet::range(k);
        const auto lefts = enumerate_partial_injections(x, z);
        const auto rights = enumerate_partial_injections(y, z);
        for (const auto& kx : lefts) {
            for (const auto& ky : rights) {
                CoproductCandidate cand{kx, ky};
                for (std::size_t w = 0; w <= test_bound && cand.survives; ++w) {
                    const auto target = FiniteSet::range(w);
                    const auto mediator_space = enumerate_partial_injections(z, target);
                    for (const auto& f : enumerate_partial_injections(x, target)) {
                        for (const auto& g : enumerate_partial_injections(y, target)) {
                            std::size_t count = 0;
                            for (const auto& m : mediator_space) {
                                if (compose(m, kx) == f && compose(m, ky) == g) {
                                    ++count;
                                }
                            }
                            if (count != 1) {
                                cand.survives = false;
                                cand.test_left = f;
                                cand.test_right = g;
                                cand.mediators = count;
                                break;
                            }
                        }
                        if (!cand.survives) {
                            break;
                        }
                    }
                }
                out.candidates.push_back(std::move(cand));
            }
        }
    }
    return out;
}

inline Json to_json(const CoproductSearch& s) {
    Json cands = Json::array();
    for (const auto& c : s.candidates) {
        Json entry{{"object", to_json(c.left.cod())},
                   {"left", to_json(c.left)},
                   {"right", to_json(c.right)},
                   {"survives", c.survives}};
        if (!c.survives) {
            entry["violation"] = c.mediators == 0 ? "existence" : "uniqueness";
            entry["mediators"] = c.mediators;
            entry["test_left"] = to_json(*c.test_left);
            entry["test_right"] = to_json(*c.test_right);
        }
        cands.push_back(std::move(entry));
    }
    return Json{{"demo", "coproduct"},
                {"x", to_json(s.x)},
                {"y", to_json(s.y)},
                {"size_bound", s.size_bound},
                {"test_bound", s.test_bound},
                {"candidates_checked", s.candidates.size()},
                {"survivors", s.survivors()},
                {"candidates", std::move(cands)}};
}

// --- unbounded cotuples -----------------------------------------------------

struct NormGrowthDemo {
    std::size_t n = 0;
    double norm = 0.0;        // ||[f_1, ..., f_n]||, f_k(z) = k z
    double lower_bound = 0.0; // n
};

inline NormGrowthDemo demo_unbounded_cotuple(std::size_t n) {
    std::vector<Matrix> parts;
    for (std::size_t k = 1; k <= n; ++k) {
        parts.push_back(Matrix::from_rows({{static_cast<double>(k)}}));
    }
    const double norm = n == 0 ? 0.0 : operator_norm(cotuple(parts));
    return {n, norm, static_cast<double>(n)};
}

inline Json to_json(const NormGrowthDemo& d) {
    return Json{{"demo", "norm-growth"}, {"n", d.n}, {"norm", d.norm}, {"lower_bound", d.lower_bound}};
}

// --- monic, dense range, not invertible (finite shadow) ---------------------

struct DenseRangeDemo {
    std::size_t n = 0;
    std::size_t rank = 0;
    bool self_adjoint = false;
    double min_singular_value = 0.0;
    double inverse_norm = 0.0;
};

/// diag(1, 1/2, ..., 1/n)
inline DenseRangeDemo demo_dense_range_noniso(std::size_t n) {
    std::vector<double> d;
    for (std::size_t k = 1; k <= n; ++k) {
        d.push_back(1.0 / static_cast<double>(k));
    }
    const Matrix a = Matrix::diagonal(d);
    const auto s = singular_values(a);
    const double min_sigma = s.empty() ? 0.0 : s.back();
    return {n, rank(a), classify(a).is_self_adjoint, min_sigma, min_sigma > 0.0 ? 1.0 / min_sigma : 0.0};
}

inline Json to_json(const DenseRangeDemo& d) {
    return Json{{"demo", "dense-range"},
                {"n", d.n},
                {"rank", d.rank},
                {"injective", d.rank == d.n},
                {"self_adjoint", d.self_adjoint},
                {"min_singular_value", d.min_singular_value},
                {"inverse_norm", d.inverse_norm}};
}

// --- support projectors do not commute --------------------------------------

struct RestrictionDemo {
    Matrix support_a;
    Matrix support_b;
    double commutator_norm = 0.0;
};

/// ||P_a P_b - P_b P_a|| for the projectors onto ker(a)^perp and ker(b)^perp.
inline RestrictionDemo demo_restriction_failure(const Matrix& a, const Matrix& b) {
    RestrictionDemo d{support_projector(a), support_projector(b), 0.0};
    d.commutator_norm = operator_norm(d.support_a * d.support_b - d.support_b * d.support_a);
    return d;
}

/// Supports span(e1) and span(e1 + e2).
inline RestrictionDemo demo_restriction_failure() {
    const double h = 0.5;
    return demo_restriction_failure(Matrix::from_rows({{1.0, 0.0}, {0.0, 0.0}}), Matrix::from_rows({{h, h}, {h, h}}));
}

inline Json to_json(const RestrictionDemo& d) {
    return Json{{"demo", "restriction"},
                {"support_a", to_json(d.support_a)},
                {"support_b", to_json(d.support_b)},
                {"commutator_norm", d.commutator_norm}};
}

// --- property suites --------------------------------------------------------

struct CaseOutcome {
    bool passed = true;
    double residual = 0.0;
    Json detail = Json::object();

    void check(bool ok, const std::string& what) {
        if (!ok && passed) {
            passed = false;
            detail["violated"] = what;
        }
    }
    void measure(double r) { residual = std::max(residual, r); }
};

struct SuiteReport {
    std::string suite;
    std::uint64_t seed = 0;
    std::size_t cases = 0;
    std::size_t failed_cases = 0;
    std::vector<Json> failures{}; // first few, in case order
    double max_residual = 0.0;

    bool passed() const { return failed_cases == 0; }
};

inline Json to_json(const SuiteReport& r) {
    return Json{{"suite", r.suite},       {"seed", r.seed},
                {"cases", r.cases},       {"passed", r.passed()},
                {"failed_cases", r.failed_cases}, {"failures", r.failures},
                {"max_residual", r.max_residual}};
}

namespace suites {

inline CaseOutcome functor(Rng& rng, std::size_t max_size) {
    CaseOutcome out;
    const auto x = random_finite_set(rng, max_size, "x");
    const auto y = random_finite_set(rng, max_size, "y");
    const auto z = random_finite_set(rng, max_size, "z");
    const auto f = random_partial_injection(rng, x, y);
    const auto g = random_partial_injection(rng, y, z);
    const auto h = random_partial_injection(rng, z, x);
    out.detail = Json{{"f", to_json(f)}, {"g", to_json(g)}, {"h", to_json(h)}};
    for (const auto& r : {verify_preservation(PreservationLaw::functoriality, f, g),
                          verify_preservation(PreservationLaw::dagger, f),
                          verify_preservation(PreservationLaw::tensor, f, h),
                          verify_preservation(PreservationLaw::oplus, f, h)}) {
        out.measure(r.residual);
        out.check(r.holds, to_string(r.law));
    }
    return out;
}

inline CaseOutcome pinj(Rng& rng, std::size_t max_size) {
    CaseOutcome out;
    const std::size_t small = std::min<std::size_t>(max_size, 4);
    const auto x = random_finite_set(rng, max_size, "x");
    const auto y = random_finite_set(rng, max_size, "y");
    const auto z = random_finite_set(rng, max_size, "z");
    const auto w = random_finite_set(rng, max_size, "w");
    const auto f = random_partial_injection(rng, x, y);
    const auto g = random_partial_injection(rng, y, z);
    const auto h = random_partial_injection(rng, z, w);
    out.detail = Json{{"f", to_json(f)}, {"g", to_json(g)}, {"h", to_json(h)}};
    out.check(compose(h, compose(g, f)) == compose(compose(h, g), f), "associativity");
    out.check(compose(f, PartialInjection::identity(x)) == f && compose(PartialInjection::identity(y), f) == f,
              "unit");
    out.check(dagger(compose(g, f)) == compose(dagger(f), dagger(g)), "dagger contravariance");
    out.check(dagger(dagger(f)) == f, "dagger involution");
    out.check(compose(f, compose(dagger(f), f)) == f, "f = f f^dagger f");

    const auto p = random_partial_injection(rng, x, x);
    const auto q = random_partial_injection(rng, x, x);
    const auto e1 = compose(dagger(p), p);
    const auto e2 = compose(dagger(q), q);
    out.check(compose(e1, e2) == compose(e2, e1), "idempotents commute");

    const auto a = random_finite_set(rng, small, "a");
    const auto b = random_finite_set(rng, small, "b");
    const auto c = random_finite_set(rng, small, "c");
    const auto k1 = random_partial_injection(rng, a, b);
    const auto k2 = random_partial_injection(rng, b, c);
    const auto s = random_finite_set(rng, small, "s");
    const auto t = random_finite_set(rng, small, "t");
    const auto u = random_finite_set(rng, small, "u");
    const auto l1 = random_partial_injection(rng, s, t);
    const auto l2 = random_partial_injection(rng, t, u);
    out.check(tensor(compose(k2, k1), compose(l2, l1)) == compose(tensor(k2, l2), tensor(k1, l1)), "tensor bifunctor");
    out.check(oplus(compose(k2, k1), compose(l2, l1)) == compose(oplus(k2, l2), oplus(k1, l1)), "oplus bifunctor");
    out.check(tensor(PartialInjection::identity(a), PartialInjection::identity(s)) ==
                  PartialInjection::identity(tensor_object(a, s)),
              "tensor identity");
    out.check(dagger(tensor(k1, l1)) == tensor(dagger(k1), dagger(l1)), "tensor dagger");
    out.check(dagger(oplus(k1, l1)) == oplus(dagger(k1), dagger(l1)), "oplus dagger");

    const auto f2 = random_partial_injection(rng, x, y);
    const auto eq = equalizer(f, f2);
    out.check(compose(f, eq.inclusion) == compose(f2, eq.inclusion), "equalizer equalizes");
    // A total injection k equalizes f, f2 exactly when it lands in the
    // equalizer, and then factors through the inclusion.
    const auto kk = random_partial_injection(rng, random_finite_set(rng, x.size(), "k"), x);
    if (kk.is_total()) {
        const bool equalizes = compose(f, kk) == compose(f2, kk);
        const auto through = compose(dagger(eq.inclusion), kk);
        const bool factors = through.is_total() && compose(eq.inclusion, through) == kk;
        out.check(equalizes == factors, "equalizer universality");
    }
    return out;
}

inline CaseOutcome order(Rng& rng, std::size_t max_size) {
    CaseOutcome out;
    const std::size_t small = std::min<std::size_t>(max_size, 3);
    const auto x = random_finite_set(rng, small, "x");
    const auto y = random_finite_set(rng, small, "y");
    const auto chain = random_ascending_chain(rng, x, y);
    const auto top = sup(chain);
    out.detail = Json{{"chain_top", to_json(top)}};
    const auto all = enumerate_partial_injections(x, y);
    for (const auto& u : all) {
        const bool upper = std::all_of(chain.begin(), chain.end(), [&](const auto& f) { return leq(f, u); });
        out.check(!upper || leq(top, u), "sup is least");
    }
    out.check(std::all_of(chain.begin(), chain.end(), [&](const auto& f) { return leq(f, top); }), "sup is upper");
    const auto& p = all[uniform_size(rng, 0, all.size() - 1)];
    const auto& q = all[uniform_size(rng, 0, all.size() - 1)];
    const auto& r = all[uniform_size(rng, 0, all.size() - 1)];
    out.check(leq(p, p), "reflexive");
    out.check(!(leq(p, q) && leq(q, p)) || p == q, "antisymmetric");
    out.check(!(leq(p, q) && leq(q, r)) || leq(p, r), "transitive");

    // Monotone composition in PInj: restrictions of f and g.
    const auto z = random_finite_set(rng, small, "z");
    const auto fs = random_ascending_chain(rng, x, y);
    const auto gs = random_ascending_chain(rng, y, z);
    const auto& f_lo = fs[uniform_size(rng, 0, fs.size() - 1)];
    const auto& g_lo = gs[uniform_size(rng, 0, gs.size() - 1)];
    out.check(leq(compose(g_lo, f_lo), compose(gs.back(), fs.back())), "pinj composition monotone");

    // l2 preserves order and directed sups.
    std::vector<Matrix> images;
    for (const auto& f : chain) {
        images.push_back(ltwo_matrix(f));
    }
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
        out.check(verify_preservation(PreservationLaw::order, chain[i], chain[i + 1]).holds, "l2 preserves order");
    }
    const Matrix hilb_max = max_of_directed(images);
    out.measure((hilb_max - ltwo_matrix(top)).max_abs());
    out.check(hilb_max == ltwo_matrix(top), "l2 preserves sup");
    return out;
}

/// a restricted to a random subspace S of its support: a P_S.
inline Matrix random_restriction(Rng& rng, const Matrix& a) {
    const Matrix support = svd(a).v;
    const std::size_t k = uniform_size(rng, 0, support.cols());
    if (support.cols() == 0) {
        return a;
    }
    const Matrix mix = random_unitary(rng, support.cols());
    const Matrix basis = (support * mix).columns(0, k);
    return a * projector(basis);
}

inline CaseOutcome hilb_order(Rng& rng, std::size_t max_size) {
    CaseOutcome out;
    const std::size_t n = uniform_size(rng, 1, std::min<std::size_t>(max_size, 4));
    const Matrix a = random_matrix(rng, n, n);
    const Matrix a1 = random_restriction(rng, a);
    const Matrix a2 = random_restriction(rng, a1);
    const Matrix b = random_matrix(rng, n, n);
    const Matrix b1 = random_restriction(rng, b);
    out.detail = Json{{"a", to_json(a)}, {"a_restricted", to_json(a1)}, {"b", to_json(b)}, {"b_restricted", to_json(b1)}};
    out.check(leq(a, a), "reflexive");
    out.check(leq(a1, a) && leq(a2, a1), "restriction is below");
    out.check(leq(a2, a), "transitive");
    out.check(!(leq(a1, a) && leq(a, a1)) || approx_equal(a1, a), "antisymmetric");
    out.check(leq(b1 * a1, b * a), "hilb composition monotone");
    return out;
}

inline CaseOutcome colimit(Rng& rng, std::size_t max_size) {
    CaseOutcome out;
    const auto d = random_chain(rng, 5, std::min<std::size_t>(max_size, 5));
    const auto col = chain_colimit(d);
    out.detail = Json{{"chain", to_json(d)}};
    out.check(is_cocone(d, col.cocone), "cocone");
    const std::size_t last = d.length() - 1;
    for (std::size_t i = 0; i <= last; ++i) {
        // Dom(c_i) is exactly the set of elements surviving to the last stage.
        out.check(col.cocone[i].defined_on() == d.transition(i, last).defined_on(), "cocone domain");
    }
    const auto target = random_finite_set(rng, 4, "y");
    const auto leg = random_partial_injection(rng, d.stage(last), target);
    std::vector<PartialInjection> test;
    for (std::size_t i = 0; i <= last; ++i) {
        test.push_back(compose(leg, d.transition(i, last)));
    }
    const auto m = mediate(d, col, test);
    std::size_t found = 0;
    for (const auto& cand : enumerate_partial_injections(col.object, target)) {
        bool ok = true;
        for (std::size_t i = 0; i <= last && ok; ++i) {
            ok = compose(cand, col.cocone[i]) == test[i];
        }
        if (ok) {
            ++found;
            out.check(cand == m, "mediator matches brute force");
        }
    }
    out.check(found == 1, "unique mediator");

    const auto source = random_finite_set(rng, 3, "q");
    const auto f = random_partial_injection(rng, source, col.object);
    const auto fac = factor_through_stage(d, col.cocone, f);
    out.check(compose(col.cocone[fac.stage], fac.morphism) == f, "factorization");
    out.check(fac.morphism.defined_on() == f.defined_on(), "factor domain");
    if (fac.stage > 0) {
        const auto im = f.image();
        const auto reach = col.cocone[fac.stage - 1].image();
        out.check(!std::includes(reach.begin(), reach.end(), im.begin(), im.end()), "factor stage minimal");
    }
    return out;
}

inline CaseOutcome svd(Rng& rng, std::size_t max_size) {
    CaseOutcome out;
    const std::size_t m = uniform_size(rng, 1, max_size);
    const std::size_t n = uniform_size(rng, 1, max_size);
    const bool low = uniform_size(rng, 0, 3) == 0;
    const Matrix a = low ? random_low_rank_matrix(rng, m, n, uniform_size(rng, 0, std::min(m, n)))
                         : random_matrix(rng, m, n);
    out.detail = Json{{"a", to_json(a)}};
    const auto s = ltwo::svd(a);
    const double scale = std::max(1.0, operator_norm(a));
    const double recon = operator_norm(a - s.reconstruct());
    const double ortho_u = operator_norm(s.u.adjoint() * s.u - Matrix::identity(s.rank()));
    const double ortho_v = operator_norm(s.v.adjoint() * s.v - Matrix::identity(s.rank()));
    out.measure(recon / scale);
    out.measure(ortho_u);
    out.measure(ortho_v);
    out.check(recon <= 1e-9 * scale, "reconstruction");
    out.check(ortho_u <= 1e-9 && ortho_v <= 1e-9, "orthonormality");
    out.check(std::is_sorted(s.sigma.rbegin(), s.sigma.rend()), "descending");
    out.check(rank(a) == rank(a.adjoint()) && rank(a) == rank(a.adjoint() * a), "rank stability");
    return out;
}

inline double kernel_gap(const Matrix& x, const Matrix& y) {
    return operator_norm(projector(null_space(x)) - projector(null_space(y)));
}

inline CaseOutcome polar(Rng& rng, std::size_t max_size) {
    CaseOutcome out;
    const std::size_t m = uniform_size(rng, 1, max_size);
    const std::size_t n = uniform_size(rng, 1, max_size);
    const bool low = uniform_size(rng, 0, 1) == 0;
    const Matrix a = low ? random_low_rank_matrix(rng, m, n, uniform_size(rng, 0, std::min(m, n)))
                         : random_matrix(rng, m, n);
    out.detail = Json{{"a", to_json(a)}};
    const double scale = std::max(1.0, operator_norm(a));
    const auto s = ltwo::svd(a);
    const double smallest = s.sigma.empty() ? 1.0 : s.sigma.back();
    for (auto side : {PolarSide::right, PolarSide::left}) {
        for (auto flavor : {PolarFlavor::kernel_matched, PolarFlavor::strong}) {
            const auto p = ltwo::polar(a, side, flavor);
            const double recon = operator_norm(a - p.reconstruct());
            out.measure(recon / scale);
            out.check(recon <= 1e-8 * scale, "reconstruction");
            out.check(is_partial_isometry(p.isometry_part, 1e-8), "isometry part");
            const auto cls = classify(p.positive_part, 1e-8);
            out.check(cls.is_nonnegative, "positive part nonnegative");
            if (flavor == PolarFlavor::kernel_matched) {
                const Matrix& iso = p.isometry_part;
                const double gap = side == PolarSide::right
                                       ? std::max(kernel_gap(p.positive_part, iso), kernel_gap(iso, a))
                                       : std::max(kernel_gap(p.positive_part, iso.adjoint()),
                                                  kernel_gap(iso.adjoint(), a.adjoint()));
                out.measure(gap);
                out.check(gap <= 1e-8, "kernels agree");
            } else {
                out.check(cls.min_eigenvalue >= std::min(1.0, smallest) - 1e-8, "strong part positive definite");
            }
        }
    }
    return out;
}

inline CaseOutcome isometry(Rng& rng, std::size_t max_size) {
    CaseOutcome out;
    const std::size_t n = uniform_size(rng, 1, max_size);
    const std::size_t m = uniform_size(rng, 1, max_size);
    const auto f = random_partial_injection(rng, FiniteSet::range(n), FiniteSet::range(m));
    const Matrix i = random_unitary(rng, m) * ltwo_matrix(f) * random_unitary(rng, n);
    out.detail = Json{{"i", to_json(i)}, {"f", to_json(f)}};
    const auto cls = classify(i, 1e-8);
    out.measure(cls.partial_isometry_residual);
    out.check(cls.is_partial_isometry, "classified as partial isometry");
    const auto fac = isometry_factor(i, 1e-8);
    const double recon = operator_norm(i - fac.reconstruct());
    out.measure(recon);
    out.check(recon <= 1e-8, "reconstruction");
    out.check(classify(fac.u, 1e-8).is_unitary && classify(fac.v, 1e-8).is_unitary, "unitary factors");
    out.check(fac.f.size() == f.size(), "rank preserved");
    return out;
}

inline CaseOutcome factorize(Rng& rng, std::size_t max_size) {
    CaseOutcome out;
    const std::size_t m = uniform_size(rng, 1, max_size);
    const std::size_t n = uniform_size(rng, 1, max_size);
    const bool low = uniform_size(rng, 0, 3) == 0;
    const Matrix g = low ? random_low_rank_matrix(rng, m, n, uniform_size(rng, 0, std::min(m, n)))
                         : random_matrix(rng, m, n);
    out.detail = Json{{"g", to_json(g)}};
    const auto fac = essential_full_factor(g);
    const double scale = std::max(1.0, operator_norm(g));
    const double recon = operator_norm(g - fac.reconstruct());
    out.measure(recon / scale);
    out.check(recon <= 1e-8 * scale, "reconstruction");
    const auto sv = singular_values(fac.v);
    out.check(!sv.empty() && sv.back() > 1e-10, "v invertible");
    out.check(operator_norm(fac.u.adjoint() * fac.u - Matrix::identity(fac.u.cols())) <= 1e-8 &&
                  operator_norm(fac.u * fac.u.adjoint() - Matrix::identity(fac.u.rows())) <= 1e-8,
              "u unitary");
    return out;
}

inline CaseOutcome chain(Rng& rng, std::size_t max_size) {
    CaseOutcome out;
    const std::size_t m = uniform_size(rng, 1, max_size);
    const std::size_t n = uniform_size(rng, 1, max_size);
    Matrix f = random_matrix(rng, n, m);
    const double norm = operator_norm(f);
    const double target = uniform_real(rng, 0.0, 1.0) / std::sqrt(static_cast<double>(m * n));
    f = Complex(norm > 0.0 ? target / norm : 0.0) * f;
    out.detail = Json{{"f", to_json(f)}};
    const auto links = finite_rank_chain(f);
    out.check(links.size() == 4, "length 4");
    for (const auto& link : links) {
        const auto cls = classify(link, 1e-8);
        out.measure(cls.partial_isometry_residual);
        out.check(cls.is_partial_isometry, "factor is a partial isometry");
    }
    const double recon = operator_norm(f - compose_chain(links));
    out.measure(recon);
    out.check(recon <= 1e-8, "composite");
    return out;
}

inline CaseOutcome inverse(Rng& rng, std::size_t /*max_size*/) {
    CaseOutcome out;
    const auto x = FiniteSet::range(uniform_size(rng, 2, 3));
    std::vector<PartialInjection> gens;
    const std::size_t k = uniform_size(rng, 1, 3);
    for (std::size_t t = 0; t < k; ++t) {
        gens.push_back(random_partial_injection(rng, x, x));
    }
    const auto p = inverse_submonoid(x, gens);
    out.detail = Json{{"elements", p.morphisms.size()}, {"generators", Json::array()}};
    for (const auto& g : gens) {
        out.detail["generators"].push_back(to_json(g));
    }
    const auto v = validate(p);
    out.check(v.passed(), "validate");
    if (v.passed()) {
        const auto F = wagner_preston(p);
        out.check(check_embedding(p, F).passed(), "embedding");
    }
    return out;
}

/// Negative control: "dagger" that returns its argument unchanged.
inline CaseOutcome canary(Rng& rng, std::size_t max_size) {
    CaseOutcome out;
    const auto x = random_finite_set(rng, std::max<std::size_t>(max_size, 2), "x");
    const auto f = random_partial_injection(rng, x, x);
    out.detail = Json{{"f", to_json(f)}};
    const auto wrong_dagger = f;
    const double r = (ltwo_matrix(wrong_dagger) - ltwo_matrix(f).adjoint()).max_abs();
    out.measure(r);
    out.check(r == 0.0, "dagger");
    return out;
}

using SuiteFn = CaseOutcome (*)(Rng&, std::size_t);

inline const std::map<std::string, SuiteFn>& registry() {
    static const std::map<std::string, SuiteFn> table{
        {"functor", &functor},   {"pinj", &pinj},          {"order", &order},   {"hilb-order", &hilb_order},
        {"colimit", &colimit},   {"svd", &svd},            {"polar", &polar},   {"isometry", &isometry},
        {"factorize", &factorize}, {"chain", &chain},      {"inverse", &inverse}, {"canary", &canary},
    };
    return table;
}

} // namespace suites

inline std::vector<std::string> suite_names() {
    std::vector<std::string> out;
    for (const auto& [name, fn] : suites::registry()) {
        out.push_back(name);
    }
    return out;
}

/// Runs `cases` seeded cases of the named suite; case i draws from an
/// engine seeded with case_seed(seed, i).
inline SuiteReport run_suite(const std::string& name, std::uint64_t seed, std::size_t cases, std::size_t max_size,
                             std::size_t max_failures = 5) {
    const auto& reg = suites::registry();
    auto it = reg.find(name);
    if (it == reg.end()) {
        throw Error(ErrorCode::unknown_suite, "no suite named '" + name + "'");
    }
    SuiteReport report{name, seed, cases};
    for (std::size_t i = 0; i < cases; ++i) {
        const auto sub = case_seed(seed, i);
        Rng rng(sub);
        CaseOutcome outcome;
        try {
            outcome = it->second(rng, max_size);
        } catch (const Error& e) {
            outcome.passed = false;
            outcome.detail = Json{{"violated", "exception"}, {"error", e.what()}};
        }
        report.max_residual = std::max(report.max_residual, outcome.residual);
        if (!outcome.passed) {
            ++report.failed_cases;
            if (report.failures.size() < max_failures) {
                report.failures.push_back(Json{{"case", i}, {"case_seed", sub}, {"counterexample", outcome.detail}});
            }
        }
    }
    return report;
}

} // namespace ltwo

#endif // LTWO_LAWLAB_HPP
