#ifndef LTWO_PINJ_HPP
#define LTWO_PINJ_HPP

// The category of finite sets and partial injections, computed exactly.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ltwo/error.hpp"

namespace ltwo {

/// Ordered alphabet of distinct labels. The order fixes the basis order of
/// the Hilbert space the set is sent to.
class FiniteSet {
public:
    FiniteSet() = default;

    explicit FiniteSet(std::vector<std::string> labels) : labels_(std::move(labels)) {
        for (std::size_t i = 0; i < labels_.size(); ++i) {
            if (!index_.emplace(labels_[i], i).second) {
                throw Error(ErrorCode::duplicate_label, "label '" + labels_[i] + "' appears twice");
            }
        }
    }

    FiniteSet(std::initializer_list<std::string> labels) : FiniteSet(std::vector<std::string>(labels)) {}

    /// {"0", "1", ..., "n-1"}
    static FiniteSet range(std::size_t n) {
        std::vector<std::string> labels;
        labels.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            labels.push_back(std::to_string(i));
        }
        return FiniteSet(std::move(labels));
    }

    std::size_t size() const noexcept { return labels_.size(); }
    bool empty() const noexcept { return labels_.empty(); }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    const std::string& operator[](std::size_t i) const { return labels_[i]; }

    std::optional<std::size_t> index_of(const std::string& label) const {
        auto it = index_.find(label);
        if (it == index_.end()) {
            return std::nullopt;
        }
        return it->second;
    }

    bool contains(const std::string& label) const { return index_.count(label) != 0; }

    std::string to_string() const {
        std::string out = "{";
        for (std::size_t i = 0; i < labels_.size(); ++i) {
            out += (i ? "," : "") + labels_[i];
        }
        return out + "}";
    }

    friend bool operator==(const FiniteSet& a, const FiniteSet& b) { return a.labels_ == b.labels_; }

private:
    std::vector<std::string> labels_;
    std::map<std::string, std::size_t> index_;
};

/// A partial injection dom -> cod, stored as an optional target index for
/// every element of dom.
class PartialInjection {
public:
    using IndexMap = std::vector<std::optional<std::size_t>>;

    PartialInjection() = default;

    PartialInjection(FiniteSet dom, FiniteSet cod,
                     const std::vector<std::pair<std::string, std::string>>& pairs)
        : dom_(std::move(dom)), cod_(std::move(cod)), map_(dom_.size()) {
        std::vector<bool> hit(cod_.size(), false);
        for (const auto& [x, y] : pairs) {
            auto xi = dom_.index_of(x);
            auto yi = cod_.index_of(y);
            if (!xi) {
                throw Error(ErrorCode::unknown_label, "'" + x + "' is not in " + dom_.to_string());
            }
            if (!yi) {
                throw Error(ErrorCode::unknown_label, "'" + y + "' is not in " + cod_.to_string());
            }
            if (map_[*xi]) {
                throw Error(ErrorCode::non_injective, "'" + x + "' has two images");
            }
            if (hit[*yi]) {
                throw Error(ErrorCode::non_injective, "'" + y + "' has two preimages");
            }
            map_[*xi] = *yi;
            hit[*yi] = true;
        }
    }

    static PartialInjection from_indices(FiniteSet dom, FiniteSet cod, IndexMap map) {
        if (map.size() != dom.size()) {
            throw Error(ErrorCode::domain, "index map length does not match domain size");
        }
        std::vector<bool> hit(cod.size(), false);
        for (const auto& y : map) {
            if (!y) {
                continue;
            }
            if (*y >= cod.size()) {
                throw Error(ErrorCode::unknown_label, "target index out of range");
            }
            if (hit[*y]) {
                throw Error(ErrorCode::non_injective, "'" + cod[*y] + "' has two preimages");
            }
            hit[*y] = true;
        }
        PartialInjection f;
        f.dom_ = std::move(dom);
        f.cod_ = std::move(cod);
        f.map_ = std::move(map);
        return f;
    }

    static PartialInjection identity(const FiniteSet& x) {
        IndexMap map(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) {
            map[i] = i;
        }
        return from_indices(x, x, std::move(map));
    }

    static PartialInjection empty(const FiniteSet& dom, const FiniteSet& cod) {
        return from_indices(dom, cod, IndexMap(dom.size()));
    }

    const FiniteSet& dom() const noexcept { return dom_; }
    const FiniteSet& cod() const noexcept { return cod_; }
    const IndexMap& index_map() const noexcept { return map_; }

    std::optional<std::size_t> apply(std::size_t x) const { return map_.at(x); }

    std::optional<std::string> apply(const std::string& x) const {
        auto xi = dom_.index_of(x);
        if (!xi || !map_[*xi]) {
            return std::nullopt;
        }
        return cod_[*map_[*xi]];
    }

    /// Graph as label pairs, in domain order.
    std::vector<std::pair<std::string, std::string>> pairs() const {
        std::vector<std::pair<std::string, std::string>> out;
        for (std::size_t i = 0; i < map_.size(); ++i) {
            if (map_[i]) {
                out.emplace_back(dom_[i], cod_[*map_[i]]);
            }
        }
        return out;
    }

    /// Dom(f) as ascending domain indices.
    std::vector<std::size_t> defined_on() const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < map_.size(); ++i) {
            if (map_[i]) {
                out.push_back(i);
            }
        }
        return out;
    }

    /// Im(f) as ascending codomain indices.
    std::vector<std::size_t> image() const {
        std::vector<std::size_t> out;
        for (const auto& y : map_) {
            if (y) {
                out.push_back(*y);
            }
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    std::size_t size() const { return defined_on().size(); }

    bool is_total() const {
        return std::all_of(map_.begin(), map_.end(), [](const auto& y) { return y.has_value(); });
    }

    bool is_bijection() const { return is_total() && dom_.size() == cod_.size(); }

    std::string to_string() const {
        std::string out = "{";
        bool first = true;
        for (const auto& [x, y] : pairs()) {
            out += (first ? "(" : ",(") + x + "," + y + ")";
            first = false;
        }
        return out + "}: " + dom_.to_string() + " -> " + cod_.to_string();
    }

    friend bool operator==(const PartialInjection& a, const PartialInjection& b) {
        return a.dom_ == b.dom_ && a.cod_ == b.cod_ && a.map_ == b.map_;
    }

private:
    FiniteSet dom_;
    FiniteSet cod_;
    IndexMap map_;
};

/// g after f.
inline PartialInjection compose(const PartialInjection& g, const PartialInjection& f) {
    if (!(f.cod() == g.dom())) {
        throw Error(ErrorCode::domain, "cannot compose: codomain " + f.cod().to_string() +
                                           " differs from domain " + g.dom().to_string());
    }
    PartialInjection::IndexMap map(f.dom().size());
    for (std::size_t x = 0; x < map.size(); ++x) {
        if (auto y = f.apply(x)) {
            map[x] = g.apply(*y);
        }
    }
    return PartialInjection::from_indices(f.dom(), g.cod(), std::move(map));
}

inline PartialInjection dagger(const PartialInjection& f) {
    PartialInjection::IndexMap map(f.cod().size());
    for (std::size_t x = 0; x < f.dom().size(); ++x) {
        if (auto y = f.apply(x)) {
            map[*y] = x;
        }
    }
    return PartialInjection::from_indices(f.cod(), f.dom(), std::move(map));
}

inline bool is_parallel(const PartialInjection& f, const PartialInjection& g) {
    return f.dom() == g.dom() && f.cod() == g.cod();
}

namespace detail {
inline void require_parallel(const PartialInjection& f, const PartialInjection& g, const char* op) {
    if (!is_parallel(f, g)) {
        throw Error(ErrorCode::domain, std::string(op) + " needs parallel morphisms, got " +
                                           f.dom().to_string() + " -> " + f.cod().to_string() +
                                           " and " + g.dom().to_string() + " -> " + g.cod().to_string());
    }
}
} // namespace detail

inline std::string pair_label(const std::string& x, const std::string& y) { return "(" + x + "," + y + ")"; }
inline std::string left_label(const std::string& x) { return "L" + x; }
inline std::string right_label(const std::string& y) { return "R" + y; }

/// Cartesian product, lexicographic in the operand orders.
inline FiniteSet tensor_object(const FiniteSet& x, const FiniteSet& y) {
    std::vector<std::string> labels;
    labels.reserve(x.size() * y.size());
    for (const auto& a : x.labels()) {
        for (const auto& b : y.labels()) {
            labels.push_back(pair_label(a, b));
        }
    }
    return FiniteSet(std::move(labels));
}

/// Tagged disjoint union: left labels then right labels.
inline FiniteSet oplus_object(const FiniteSet& x, const FiniteSet& y) {
    std::vector<std::string> labels;
    labels.reserve(x.size() + y.size());
    for (const auto& a : x.labels()) {
        labels.push_back(left_label(a));
    }
    for (const auto& b : y.labels()) {
        labels.push_back(right_label(b));
    }
    return FiniteSet(std::move(labels));
}

inline PartialInjection tensor(const PartialInjection& f, const PartialInjection& g) {
    const std::size_t gd = g.dom().size();
    const std::size_t gc = g.cod().size();
    PartialInjection::IndexMap map(f.dom().size() * gd);
    for (std::size_t x = 0; x < f.dom().size(); ++x) {
        for (std::size_t x2 = 0; x2 < gd; ++x2) {
            auto y = f.apply(x);
            auto y2 = g.apply(x2);
            if (y && y2) {
                map[x * gd + x2] = *y * gc + *y2;
            }
        }
    }
    return PartialInjection::from_indices(tensor_object(f.dom(), g.dom()), tensor_object(f.cod(), g.cod()),
                                          std::move(map));
}

inline PartialInjection oplus(const PartialInjection& f, const PartialInjection& g) {
    const std::size_t fd = f.dom().size();
    const std::size_t fc = f.cod().size();
    PartialInjection::IndexMap map(fd + g.dom().size());
    for (std::size_t x = 0; x < fd; ++x) {
        map[x] = f.apply(x);
    }
    for (std::size_t x = 0; x < g.dom().size(); ++x) {
        if (auto y = g.apply(x)) {
            map[fd + x] = fc + *y;
        }
    }
    return PartialInjection::from_indices(oplus_object(f.dom(), g.dom()), oplus_object(f.cod(), g.cod()),
                                          std::move(map));
}

/// Inclusion of the subset of `whole` given by ascending indices.
inline PartialInjection subset_inclusion(const FiniteSet& whole, const std::vector<std::size_t>& members) {
    std::vector<std::string> labels;
    PartialInjection::IndexMap map;
    for (auto i : members) {
        labels.push_back(whole[i]);
        map.emplace_back(i);
    }
    return PartialInjection::from_indices(FiniteSet(std::move(labels)), whole, std::move(map));
}

struct PinjEqualizer {
    FiniteSet object;
    PartialInjection inclusion; // object -> dom
};

/// Points where both are undefined, plus points where both are defined and agree.
inline PinjEqualizer equalizer(const PartialInjection& f, const PartialInjection& g) {
    detail::require_parallel(f, g, "equalizer");
    std::vector<std::size_t> members;
    for (std::size_t x = 0; x < f.dom().size(); ++x) {
        if (f.apply(x) == g.apply(x)) {
            members.push_back(x);
        }
    }
    auto inclusion = subset_inclusion(f.dom(), members);
    return {inclusion.dom(), std::move(inclusion)};
}

/// f <= g iff f = g f^dagger f, i.e. graph(f) is contained in graph(g).
inline bool leq(const PartialInjection& f, const PartialInjection& g) {
    detail::require_parallel(f, g, "leq");
    for (std::size_t x = 0; x < f.dom().size(); ++x) {
        if (auto y = f.apply(x); y && g.apply(x) != y) {
            return false;
        }
    }
    return true;
}

/// Least upper bound of a directed family: the union of the graphs.
inline PartialInjection sup(std::span<const PartialInjection> family) {
    if (family.empty()) {
        throw Error(ErrorCode::directedness, "sup of an empty family");
    }
    for (const auto& f : family) {
        detail::require_parallel(family.front(), f, "sup");
    }
    for (std::size_t a = 0; a < family.size(); ++a) {
        for (std::size_t b = a + 1; b < family.size(); ++b) {
            const bool bounded = std::any_of(family.begin(), family.end(), [&](const PartialInjection& u) {
                return leq(family[a], u) && leq(family[b], u);
            });
            if (!bounded) {
                throw Error(ErrorCode::directedness, "no upper bound in the family for " +
                                                         family[a].to_string() + " and " + family[b].to_string());
            }
        }
    }
    PartialInjection::IndexMap map(family.front().dom().size());
    for (const auto& f : family) {
        for (std::size_t x = 0; x < map.size(); ++x) {
            if (auto y = f.apply(x)) {
                map[x] = y;
            }
        }
    }
    return PartialInjection::from_indices(family.front().dom(), family.front().cod(), std::move(map));
}

/// Every partial injection x -> y, in a fixed order (by domain element,
/// "undefined" first, then targets ascending).
inline std::vector<PartialInjection> enumerate_partial_injections(const FiniteSet& x, const FiniteSet& y) {
    std::vector<PartialInjection> out;
    PartialInjection::IndexMap map(x.size());
    std::vector<bool> used(y.size(), false);
    auto recurse = [&](auto&& self, std::size_t i) -> void {
        if (i == x.size()) {
            out.push_back(PartialInjection::from_indices(x, y, map));
            return;
        }
        map[i].reset();
        self(self, i + 1);
        for (std::size_t t = 0; t < y.size(); ++t) {
            if (!used[t]) {
                used[t] = true;
                map[i] = t;
                self(self, i + 1);
                used[t] = false;
            }
        }
        map[i].reset();
    };
    recurse(recurse, 0);
    return out;
}

/// A finite chain D(0) -> D(1) -> ... -> D(n-1).
class ChainDiagram {
public:
    ChainDiagram(std::vector<FiniteSet> stages, std::vector<PartialInjection> links)
        : stages_(std::move(stages)), links_(std::move(links)) {
        if (stages_.empty()) {
            throw Error(ErrorCode::domain, "a chain needs at least one stage");
        }
        if (links_.size() + 1 != stages_.size()) {
            throw Error(ErrorCode::domain, "a chain with " + std::to_string(stages_.size()) + " stages needs " +
                                               std::to_string(stages_.size() - 1) + " links");
        }
        for (std::size_t i = 0; i < links_.size(); ++i) {
            if (!(links_[i].dom() == stages_[i]) || !(links_[i].cod() == stages_[i + 1])) {
                throw Error(ErrorCode::domain, "link " + std::to_string(i) + " does not connect stage " +
                                                   std::to_string(i) + " to stage " + std::to_string(i + 1));
            }
        }
    }

    std::size_t length() const noexcept { return stages_.size(); }
    const std::vector<FiniteSet>& stages() const noexcept { return stages_; }
    const std::vector<PartialInjection>& links() const noexcept { return links_; }
    const FiniteSet& stage(std::size_t i) const { return stages_.at(i); }

    /// D(i <= j), the composite of links i .. j-1.
    PartialInjection transition(std::size_t i, std::size_t j) const {
        if (i > j || j >= stages_.size()) {
            throw Error(ErrorCode::domain, "transition needs i <= j < length");
        }
        auto out = PartialInjection::identity(stages_[i]);
        for (std::size_t k = i; k < j; ++k) {
            out = compose(links_[k], out);
        }
        return out;
    }

private:
    std::vector<FiniteSet> stages_;
    std::vector<PartialInjection> links_;
};

struct ChainColimit {
    FiniteSet object;
    std::vector<PartialInjection> cocone; // cocone[i]: stage i -> object
};

/// Label of the class whose earliest representative is element `x` of stage `i`.
inline std::string class_label(const std::string& x, std::size_t stage) {
    return x + "@" + std::to_string(stage);
}

/// c_i = c_j after D(i <= j) for all i <= j.
inline bool is_cocone(const ChainDiagram& d, std::span<const PartialInjection> cocone) {
    if (cocone.size() != d.length()) {
        return false;
    }
    for (std::size_t i = 0; i < d.length(); ++i) {
        if (!(cocone[i].dom() == d.stage(i)) || !(cocone[i].cod() == cocone.back().cod())) {
            return false;
        }
        for (std::size_t j = i; j < d.length(); ++j) {
            if (!(cocone[i] == compose(cocone[j], d.transition(i, j)))) {
                return false;
            }
        }
    }
    return true;
}

/// Colimit of a finite chain: elements that are never dropped, modulo
/// x ~ D(i <= j)(x). Each class is labelled by its earliest representative.
inline ChainColimit chain_colimit(const ChainDiagram& d) {
    const std::size_t last = d.length() - 1;
    // Classes are in bijection with their representative in the last stage.
    std::vector<std::optional<std::size_t>> class_of_final(d.stage(last).size());
    std::vector<std::string> labels;
    std::vector<PartialInjection::IndexMap> maps;
    for (std::size_t i = 0; i <= last; ++i) {
        const auto to_last = d.transition(i, last);
        PartialInjection::IndexMap map(d.stage(i).size());
        for (std::size_t x = 0; x < d.stage(i).size(); ++x) {
            const auto y = to_last.apply(x);
            if (!y) {
                continue;
            }
            if (!class_of_final[*y]) {
                class_of_final[*y] = labels.size();
                labels.push_back(class_label(d.stage(i)[x], i));
            }
            map[x] = class_of_final[*y];
        }
        maps.push_back(std::move(map));
    }
    ChainColimit out{FiniteSet(std::move(labels)), {}};
    for (std::size_t i = 0; i <= last; ++i) {
        out.cocone.push_back(PartialInjection::from_indices(d.stage(i), out.object, std::move(maps[i])));
    }
    if (!is_cocone(d, out.cocone)) {
        throw Error(ErrorCode::consistency, "colimit construction did not produce a cocone");
    }
    return out;
}

/// The unique m: colimit -> Y with m after c_i = d_i, defined on
/// {[x] | x in Dom(d_i)} by m([x]) = d_i(x).
inline PartialInjection mediate(const ChainDiagram& d, const ChainColimit& colimit,
                                std::span<const PartialInjection> test_cocone) {
    if (!is_cocone(d, test_cocone)) {
        throw Error(ErrorCode::precondition, "test family is not a cocone on the chain");
    }
    const FiniteSet& target = test_cocone.front().cod();
    PartialInjection::IndexMap map(colimit.object.size());
    for (std::size_t i = 0; i < d.length(); ++i) {
        for (std::size_t x = 0; x < d.stage(i).size(); ++x) {
            auto y = test_cocone[i].apply(x);
            if (!y) {
                continue;
            }
            auto cls = colimit.cocone[i].apply(x);
            if (!cls) {
                throw Error(ErrorCode::consistency, "test cocone is defined on a dropped element");
            }
            if (map[*cls] && map[*cls] != y) {
                throw Error(ErrorCode::consistency, "test cocone disagrees on a class");
            }
            map[*cls] = y;
        }
    }
    return PartialInjection::from_indices(colimit.object, target, std::move(map));
}

struct StageFactorization {
    std::size_t stage;
    PartialInjection morphism; // X -> D(stage), with Dom equal to Dom(f)
};

/// Factors f: X -> colimit through the earliest stage j whose cocone leg
/// reaches every element f hits: g = c_j^dagger after f.
inline StageFactorization factor_through_stage(const ChainDiagram& d, std::span<const PartialInjection> cocone,
                                               const PartialInjection& f) {
    if (cocone.size() != d.length()) {
        throw Error(ErrorCode::domain, "cocone length does not match the chain");
    }
    const auto needed = f.image();
    for (std::size_t j = 0; j < d.length(); ++j) {
        if (!(f.cod() == cocone[j].cod())) {
            throw Error(ErrorCode::domain, "f does not target the colimit object");
        }
        const auto reached = cocone[j].image();
        if (std::includes(reached.begin(), reached.end(), needed.begin(), needed.end())) {
            auto g = compose(dagger(cocone[j]), f);
            if (!(compose(cocone[j], g) == f) || g.defined_on() != f.defined_on()) {
                throw Error(ErrorCode::consistency, "factorization failed to reproduce f");
            }
            return {j, std::move(g)};
        }
    }
    throw Error(ErrorCode::consistency, "f hits an element outside every cocone leg");
}

} // namespace ltwo

#endif // LTWO_PINJ_HPP
