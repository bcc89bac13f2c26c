#ifndef LTWO_RANDOM_HPP
#define LTWO_RANDOM_HPP

// Seeded generators for property suites. Every case draws from its own
// engine seeded by case_seed(seed, index), so results do not depend on the
// order in which cases run.
//
//   partial injections: uniform matching size k, then a uniformly random
//                       k-subset of the domain sent injectively into cod
//   matrices:           i.i.d. entries uniform on the closed unit disc
//   unitaries:          Gram-Schmidt (twice) on a random matrix

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <random>
#include <vector>

#include "ltwo/numerics.hpp"
#include "ltwo/pinj.hpp"

namespace ltwo {

using Rng = std::mt19937_64;

/// splitmix64 of (seed, index).
inline std::uint64_t case_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline std::size_t uniform_size(Rng& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline double uniform_real(Rng& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline PartialInjection random_partial_injection(Rng& rng, const FiniteSet& dom, const FiniteSet& cod) {
    const std::size_t k = uniform_size(rng, 0, std::min(dom.size(), cod.size()));
    std::vector<std::size_t> xs(dom.size());
    std::vector<std::size_t> ys(cod.size());
    std::iota(xs.begin(), xs.end(), std::size_t{0});
    std::iota(ys.begin(), ys.end(), std::size_t{0});
    std::shuffle(xs.begin(), xs.end(), rng);
    std::shuffle(ys.begin(), ys.end(), rng);
    PartialInjection::IndexMap map(dom.size());
    for (std::size_t t = 0; t < k; ++t) {
        map[xs[t]] = ys[t];
    }
    return PartialInjection::from_indices(dom, cod, std::move(map));
}

/// A random set of size in [0, max_size] with labels prefix0, prefix1, ...
inline FiniteSet random_finite_set(Rng& rng, std::size_t max_size, const std::string& prefix = "") {
    const std::size_t n = uniform_size(rng, 0, max_size);
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) {
        labels.push_back(prefix + std::to_string(i));
    }
    return FiniteSet(std::move(labels));
}

inline Complex random_disc_point(Rng& rng) {
    const double r = std::sqrt(uniform_real(rng, 0.0, 1.0));
    const double theta = uniform_real(rng, 0.0, 2.0 * std::numbers::pi);
    return std::polar(r, theta);
}

inline Matrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols) {
    Matrix a(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            a(i, j) = random_disc_point(rng);
        }
    }
    return a;
}

/// Random matrix of rank at most `r`, as a product of random factors.
inline Matrix random_low_rank_matrix(Rng& rng, std::size_t rows, std::size_t cols, std::size_t r) {
    return random_matrix(rng, rows, r) * random_matrix(rng, r, cols);
}

inline Matrix random_unitary(Rng& rng, std::size_t n) {
    for (;;) {
        Matrix a = random_matrix(rng, n, n);
        bool ok = true;
        for (std::size_t j = 0; j < n && ok; ++j) {
            for (int pass = 0; pass < 2; ++pass) {
                for (std::size_t k = 0; k < j; ++k) {
                    Complex dot{};
                    for (std::size_t i = 0; i < n; ++i) {
                        dot += std::conj(a(i, k)) * a(i, j);
                    }
                    for (std::size_t i = 0; i < n; ++i) {
                        a(i, j) -= dot * a(i, k);
                    }
                }
            }
            double norm2 = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                norm2 += std::norm(a(i, j));
            }
            if (norm2 < 1e-6) {
                ok = false;
                break;
            }
            const double inv = 1.0 / std::sqrt(norm2);
            for (std::size_t i = 0; i < n; ++i) {
                a(i, j) *= inv;
            }
        }
        if (ok) {
            return a;
        }
    }
}

/// Random chain with 1..max_length stages of size 0..max_stage.
inline ChainDiagram random_chain(Rng& rng, std::size_t max_length, std::size_t max_stage) {
    const std::size_t length = uniform_size(rng, 1, max_length);
    std::vector<FiniteSet> stages;
    for (std::size_t i = 0; i < length; ++i) {
        stages.push_back(random_finite_set(rng, max_stage, "s"));
    }
    std::vector<PartialInjection> links;
    for (std::size_t i = 0; i + 1 < length; ++i) {
        links.push_back(random_partial_injection(rng, stages[i], stages[i + 1]));
    }
    return ChainDiagram(std::move(stages), std::move(links));
}

/// An ascending chain f_0 <= f_1 <= ... in the hom-set dom -> cod, built by
/// restricting a random partial injection to growing prefixes of a random
/// ordering of its domain of definition.
inline std::vector<PartialInjection> random_ascending_chain(Rng& rng, const FiniteSet& dom, const FiniteSet& cod) {
    const auto top = random_partial_injection(rng, dom, cod);
    auto support = top.defined_on();
    std::shuffle(support.begin(), support.end(), rng);
    std::vector<PartialInjection> chain;
    PartialInjection::IndexMap map(dom.size());
    chain.push_back(PartialInjection::from_indices(dom, cod, map));
    for (auto x : support) {
        map[x] = top.apply(x);
        if (uniform_size(rng, 0, 1) == 1) {
            chain.push_back(PartialInjection::from_indices(dom, cod, map));
        }
    }
    if (!(chain.back() == top)) {
        chain.push_back(top);
    }
    return chain;
}

} // namespace ltwo

#endif // LTWO_RANDOM_HPP
