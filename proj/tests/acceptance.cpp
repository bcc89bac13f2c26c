// Acceptance suite: one PASS/FAIL line per criterion on stdout, counterexamples
// for failing criteria on stderr. Exit status is 0 only if every criterion passes.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "ltwo/ltwo.hpp"

using namespace ltwo;

namespace {

struct Verdict {
    bool passed = true;
    std::string summary;
    std::vector<Json> evidence;
};

std::string describe(const SuiteReport& r) {
    std::ostringstream s;
    s << r.suite << " " << r.cases - r.failed_cases << "/" << r.cases << " max_residual=" << r.max_residual;
    return s.str();
}

void absorb(Verdict& v, const SuiteReport& r) {
    v.passed = v.passed && r.passed();
    v.summary += (v.summary.empty() ? "" : "; ") + describe(r);
    if (!r.passed()) {
        v.evidence.push_back(to_json(r));
    }
}

void require(Verdict& v, bool ok, const std::string& what) {
    v.summary += (v.summary.empty() ? "" : "; ") + what + (ok ? "" : " [violated]");
    v.passed = v.passed && ok;
}

Verdict functor_laws() {
    Verdict v;
    const auto r = run_suite("functor", 42, 1000, 8);
    absorb(v, r);
    require(v, r.max_residual == 0.0, "residual exactly 0");
    return v;
}

Verdict direct_image() {
    Verdict v;
    absorb(v, run_suite("isometry", 5, 500, 8));
    return v;
}

Verdict essential_fullness() {
    Verdict v;
    absorb(v, run_suite("factorize", 3, 1000, 8));
    return v;
}

Verdict polar_decomposition() {
    Verdict v;
    absorb(v, run_suite("polar", 7, 500, 8));
    return v;
}

Verdict counterexamples() {
    Verdict v;
    const auto eq = demo_equalizer_nonpreservation();
    require(v, eq.hilb_dim == 1 && eq.pinj_size == 0,
            "equalizer dims " + std::to_string(eq.hilb_dim) + " vs " + std::to_string(eq.pinj_size));

    const auto quarter = demo_isometry_composition(std::numbers::pi / 4.0);
    // sin of the double nearest pi/4 may differ from sqrt(1/2) in the last place.
    const double expected = 0.7071067811865476;
    const double ulp = std::nextafter(expected, 1.0) - expected;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", quarter.composite);
    require(v, std::abs(quarter.composite - expected) <= ulp && !quarter.is_partial_isometry,
            std::string("sin(pi/4) composite ") + buf + " not a partial isometry");

    const auto half = demo_isometry_composition(std::numbers::pi / 2.0);
    require(v, half.is_partial_isometry, "pi/2 composite is a partial isometry");

    const auto search = search_binary_coproduct(FiniteSet{"x"}, FiniteSet{"y"}, 3);
    require(v, search.survivors() == 0,
            "coproduct candidates refuted " + std::to_string(search.candidates.size() - search.survivors()) + "/" +
                std::to_string(search.candidates.size()));

    const auto growth = demo_unbounded_cotuple(3);
    require(v, std::abs(growth.norm - std::sqrt(14.0)) <= 1e-12, "cotuple norm at n=3 is sqrt 14");
    return v;
}

Verdict inverse_categories() {
    Verdict v;
    const auto z2 = cyclic_group(2);
    const auto i2 = symmetric_inverse_monoid(FiniteSet::range(2));
    require(v, i2.morphisms.size() == 7, "I2 has " + std::to_string(i2.morphisms.size()) + " morphisms");
    for (const auto& [name, p] : {std::pair{std::string("Z/2"), z2}, std::pair{std::string("I2"), i2}}) {
        const auto laws = validate(p);
        require(v, laws.passed(), name + " validates");
        if (!laws.passed()) {
            v.evidence.push_back(to_json(laws));
            continue;
        }
        const auto F = wagner_preston(p);
        const auto emb = check_embedding(p, F);
        require(v, emb.passed(), name + " embeds faithfully");
        if (!emb.passed()) {
            v.evidence.push_back(to_json(emb));
        }
    }
    absorb(v, run_suite("inverse", 11, 100, 3));
    return v;
}

Verdict colimits() {
    Verdict v;
    absorb(v, run_suite("colimit", 13, 200, 5));
    return v;
}

Verdict order_enrichment() {
    Verdict v;
    absorb(v, run_suite("order", 17, 500, 3));
    absorb(v, run_suite("hilb-order", 17, 500, 4));
    return v;
}

Verdict chains() {
    Verdict v;
    absorb(v, run_suite("chain", 19, 200, 6));
    return v;
}

Verdict svd_kernel() {
    Verdict v;
    absorb(v, run_suite("svd", 23, 2000, 16));
    return v;
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
        {"functor laws", functor_laws},
        {"direct-image characterization", direct_image},
        {"essential fullness", essential_fullness},
        {"polar decomposition", polar_decomposition},
        {"counterexample battery", counterexamples},
        {"inverse categories", inverse_categories},
        {"chain colimits", colimits},
        {"order enrichment", order_enrichment},
        {"finite-rank chains", chains},
        {"svd kernel", svd_kernel},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = criteria[i].second();
        } catch (const std::exception& e) {
            v.passed = false;
            v.summary = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s  %2zu  %-30s  %s  (%.2fs)\n", v.passed ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                    v.summary.c_str(), secs);
        std::fflush(stdout);
        for (const auto& e : v.evidence) {
            std::cerr << "criterion " << i + 1 << " evidence: " << e.dump() << "\n";
        }
        failed += v.passed ? 0 : 1;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
