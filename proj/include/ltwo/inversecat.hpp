#ifndef LTWO_INVERSECAT_HPP
#define LTWO_INVERSECAT_HPP

// Finite inverse categories given by explicit tables, and the Wagner-Preston
// embedding into partial injections: F(X) is the set of all morphisms out of
// X, and F(f) acts by precomposition with f^dagger on {g | g = g f^dagger f}.

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ltwo/error.hpp"
#include "ltwo/pinj.hpp"

namespace ltwo {

struct MorphismRecord {
    std::string id;
    std::string src;
    std::string dst;
};

struct InverseCategoryPresentation {
    std::vector<std::string> objects;
    std::vector<MorphismRecord> morphisms;
    std::vector<std::array<std::string, 3>> composition; // (g, f, g after f)
    std::vector<std::pair<std::string, std::string>> dagger;
    std::map<std::string, std::string> identities;
};

struct LawResult {
    std::string law;
    bool passed = true;
    std::vector<std::string> witness{}; // morphism ids of the first violation

    void fail(std::vector<std::string> w) {
        if (passed) {
            passed = false;
            witness = std::move(w);
        }
    }
};

struct LawReport {
    std::vector<LawResult> laws;

    bool passed() const {
        for (const auto& l : laws) {
            if (!l.passed) {
                return false;
            }
        }
        return true;
    }

    const LawResult* find(const std::string& law) const {
        for (const auto& l : laws) {
            if (l.law == law) {
                return &l;
            }
        }
        return nullptr;
    }
};

/// Index-based view of a presentation; construction performs the structural
/// checks (every id referenced by a table exists, each morphism has a
/// dagger, each object has an identity).
class IndexedCategory {
public:
    explicit IndexedCategory(const InverseCategoryPresentation& p) {
        for (std::size_t i = 0; i < p.objects.size(); ++i) {
            if (!object_index_.emplace(p.objects[i], i).second) {
                throw Error(ErrorCode::structural, "object '" + p.objects[i] + "' declared twice");
            }
        }
        for (std::size_t i = 0; i < p.morphisms.size(); ++i) {
            const auto& m = p.morphisms[i];
            if (!morphism_index_.emplace(m.id, i).second) {
                throw Error(ErrorCode::structural, "morphism '" + m.id + "' declared twice");
            }
            ids_.push_back(m.id);
            src_.push_back(object(m.src, "source of " + m.id));
            dst_.push_back(object(m.dst, "target of " + m.id));
        }
        for (const auto& [g, f, gf] : p.composition) {
            const auto key = std::make_pair(morphism(g, "composition table"), morphism(f, "composition table"));
            const auto value = morphism(gf, "composition table");
            auto [it, inserted] = compose_.emplace(key, value);
            if (!inserted && it->second != value) {
                throw Error(ErrorCode::structural, "composite " + g + " . " + f + " listed twice with different results");
            }
        }
        dagger_.assign(ids_.size(), std::nullopt);
        for (const auto& [f, fd] : p.dagger) {
            const auto fi = morphism(f, "dagger table");
            const auto di = morphism(fd, "dagger table");
            if (dagger_[fi] && *dagger_[fi] != di) {
                throw Error(ErrorCode::structural, "dagger of '" + f + "' listed twice");
            }
            dagger_[fi] = di;
        }
        for (std::size_t i = 0; i < ids_.size(); ++i) {
            if (!dagger_[i]) {
                throw Error(ErrorCode::structural, "morphism '" + ids_[i] + "' has no dagger");
            }
        }
        identity_.assign(p.objects.size(), 0);
        for (std::size_t x = 0; x < p.objects.size(); ++x) {
            auto it = p.identities.find(p.objects[x]);
            if (it == p.identities.end()) {
                throw Error(ErrorCode::structural, "object '" + p.objects[x] + "' has no identity");
            }
            identity_[x] = morphism(it->second, "identity table");
        }
        for (const auto& [obj, id] : p.identities) {
            object(obj, "identity table");
        }
        objects_ = p.objects;
    }

    std::size_t object_count() const noexcept { return objects_.size(); }
    std::size_t morphism_count() const noexcept { return ids_.size(); }
    const std::string& object_name(std::size_t x) const { return objects_[x]; }
    const std::string& id(std::size_t f) const { return ids_[f]; }
    std::size_t src(std::size_t f) const { return src_[f]; }
    std::size_t dst(std::size_t f) const { return dst_[f]; }
    std::size_t dagger(std::size_t f) const { return *dagger_[f]; }
    std::size_t identity(std::size_t x) const { return identity_[x]; }

    std::optional<std::size_t> compose(std::size_t g, std::size_t f) const {
        auto it = compose_.find({g, f});
        if (it == compose_.end()) {
            return std::nullopt;
        }
        return it->second;
    }

    const std::map<std::pair<std::size_t, std::size_t>, std::size_t>& table() const noexcept { return compose_; }

    /// Morphisms with source x, in declaration order.
    std::vector<std::size_t> out_of(std::size_t x) const {
        std::vector<std::size_t> out;
        for (std::size_t f = 0; f < ids_.size(); ++f) {
            if (src_[f] == x) {
                out.push_back(f);
            }
        }
        return out;
    }

private:
    std::size_t object(const std::string& name, const std::string& where) const {
        auto it = object_index_.find(name);
        if (it == object_index_.end()) {
            throw Error(ErrorCode::structural, "unknown object '" + name + "' in " + where);
        }
        return it->second;
    }

    std::size_t morphism(const std::string& name, const std::string& where) const {
        auto it = morphism_index_.find(name);
        if (it == morphism_index_.end()) {
            throw Error(ErrorCode::structural, "unknown morphism '" + name + "' in " + where);
        }
        return it->second;
    }

    std::vector<std::string> objects_;
    std::map<std::string, std::size_t> object_index_;
    std::map<std::string, std::size_t> morphism_index_;
    std::vector<std::string> ids_;
    std::vector<std::size_t> src_;
    std::vector<std::size_t> dst_;
    std::vector<std::optional<std::size_t>> dagger_;
    std::vector<std::size_t> identity_;
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> compose_;
};

/// Checks every inverse-category law and reports the first violation of each.
inline LawReport validate(const InverseCategoryPresentation& p) {
    const IndexedCategory c(p);
    const std::size_t n = c.morphism_count();
    auto name = [&](std::size_t f) { return c.id(f); };

    LawResult defined{"composition_defined"};
    for (std::size_t g = 0; g < n; ++g) {
        for (std::size_t f = 0; f < n; ++f) {
            const auto gf = c.compose(g, f);
            const bool composable = c.dst(f) == c.src(g);
            if (composable != gf.has_value()) {
                defined.fail({name(g), name(f)});
            } else if (gf && (c.src(*gf) != c.src(f) || c.dst(*gf) != c.dst(g))) {
                defined.fail({name(g), name(f), name(*gf)});
            }
        }
    }

    // Composite that is absent counts against the law being checked.
    auto comp = [&](std::size_t g, std::size_t f) { return c.compose(g, f); };

    LawResult unit{"unit"};
    for (std::size_t x = 0; x < c.object_count(); ++x) {
        const auto id = c.identity(x);
        if (c.src(id) != x || c.dst(id) != x) {
            unit.fail({name(id)});
        }
    }
    for (std::size_t f = 0; f < n; ++f) {
        if (comp(c.identity(c.dst(f)), f) != f || comp(f, c.identity(c.src(f))) != f) {
            unit.fail({name(f)});
        }
    }

    LawResult assoc{"associativity"};
    for (std::size_t h = 0; h < n; ++h) {
        for (std::size_t g = 0; g < n; ++g) {
            if (c.dst(g) != c.src(h)) {
                continue;
            }
            for (std::size_t f = 0; f < n; ++f) {
                if (c.dst(f) != c.src(g)) {
                    continue;
                }
                const auto hg = comp(h, g);
                const auto gf = comp(g, f);
                const auto left = hg ? comp(*hg, f) : std::nullopt;
                const auto right = gf ? comp(h, *gf) : std::nullopt;
                if (!left || !right || *left != *right) {
                    assoc.fail({name(h), name(g), name(f)});
                }
            }
        }
    }

    LawResult dag_typed{"dagger_typed"};
    LawResult dag_inv{"dagger_involutive"};
    LawResult dag_id{"dagger_identity"};
    LawResult regular{"regularity"};
    for (std::size_t f = 0; f < n; ++f) {
        const auto fd = c.dagger(f);
        if (c.src(fd) != c.dst(f) || c.dst(fd) != c.src(f)) {
            dag_typed.fail({name(f), name(fd)});
        }
        if (c.dagger(fd) != f) {
            dag_inv.fail({name(f)});
        }
        const auto fdf = comp(fd, f);
        const auto ffdf = fdf ? comp(f, *fdf) : std::nullopt;
        if (ffdf != f) {
            regular.fail({name(f)});
        }
    }
    for (std::size_t x = 0; x < c.object_count(); ++x) {
        if (c.dagger(c.identity(x)) != c.identity(x)) {
            dag_id.fail({name(c.identity(x))});
        }
    }

    LawResult dag_contra{"dagger_contravariant"};
    for (const auto& [key, gf] : c.table()) {
        const auto [g, f] = key;
        if (comp(c.dagger(f), c.dagger(g)) != c.dagger(gf)) {
            dag_contra.fail({name(g), name(f)});
        }
    }

    LawResult idem{"idempotents_commute"};
    std::vector<std::size_t> idempotents;
    for (std::size_t e = 0; e < n; ++e) {
        if (c.src(e) == c.dst(e) && comp(e, e) == e) {
            idempotents.push_back(e);
        }
    }
    for (auto p : idempotents) {
        for (auto q : idempotents) {
            if (c.src(p) == c.src(q) && comp(p, q) != comp(q, p)) {
                idem.fail({name(p), name(q)});
            }
        }
    }

    return {{defined, unit, assoc, dag_typed, dag_inv, dag_id, dag_contra, regular, idem}};
}

struct WagnerPrestonEmbedding {
    std::vector<FiniteSet> objects;          // F(X), indexed like the presentation's objects
    std::vector<PartialInjection> morphisms; // F(f), indexed like the presentation's morphisms
};

/// F(X) = all morphisms out of X (labelled by id); F(f) = (-) after f^dagger
/// on {g | g = g f^dagger f}.
inline WagnerPrestonEmbedding wagner_preston(const InverseCategoryPresentation& p) {
    const auto report = validate(p);
    if (!report.passed()) {
        for (const auto& l : report.laws) {
            if (!l.passed) {
                throw Error(ErrorCode::precondition, "presentation fails law '" + l.law + "'");
            }
        }
    }
    const IndexedCategory c(p);
    WagnerPrestonEmbedding out;
    std::vector<std::vector<std::size_t>> out_of(c.object_count());
    for (std::size_t x = 0; x < c.object_count(); ++x) {
        out_of[x] = c.out_of(x);
        std::vector<std::string> labels;
        for (auto g : out_of[x]) {
            labels.push_back(c.id(g));
        }
        out.objects.emplace_back(std::move(labels));
    }
    for (std::size_t f = 0; f < c.morphism_count(); ++f) {
        const auto x = c.src(f);
        const auto y = c.dst(f);
        const auto fd = c.dagger(f);
        const auto fdf = *c.compose(fd, f);
        std::vector<std::pair<std::string, std::string>> pairs;
        for (auto g : out_of[x]) {
            if (*c.compose(g, fdf) == g) {
                pairs.emplace_back(c.id(g), c.id(*c.compose(g, fd)));
            }
        }
        out.morphisms.emplace_back(out.objects[x], out.objects[y], pairs);
    }
    return out;
}

/// Functoriality (including identities), dagger preservation and
/// faithfulness of an embedding, all as exact equalities.
inline LawReport check_embedding(const InverseCategoryPresentation& p, const WagnerPrestonEmbedding& F) {
    const IndexedCategory c(p);
    if (F.objects.size() != c.object_count() || F.morphisms.size() != c.morphism_count()) {
        throw Error(ErrorCode::domain, "embedding does not match the presentation's size");
    }
    LawResult typed{"typed"};
    LawResult ident{"identities"};
    LawResult functorial{"functorial"};
    LawResult daggers{"dagger"};
    LawResult faithful{"faithful"};
    for (std::size_t f = 0; f < c.morphism_count(); ++f) {
        if (!(F.morphisms[f].dom() == F.objects[c.src(f)]) || !(F.morphisms[f].cod() == F.objects[c.dst(f)])) {
            typed.fail({c.id(f)});
        }
    }
    if (!typed.passed) {
        return {{typed}};
    }
    for (std::size_t x = 0; x < c.object_count(); ++x) {
        if (!(F.morphisms[c.identity(x)] == PartialInjection::identity(F.objects[x]))) {
            ident.fail({c.id(c.identity(x))});
        }
    }
    for (const auto& [key, gf] : c.table()) {
        const auto [g, f] = key;
        if (!(F.morphisms[gf] == compose(F.morphisms[g], F.morphisms[f]))) {
            functorial.fail({c.id(g), c.id(f)});
        }
    }
    for (std::size_t f = 0; f < c.morphism_count(); ++f) {
        if (!(F.morphisms[c.dagger(f)] == dagger(F.morphisms[f]))) {
            daggers.fail({c.id(f)});
        }
        for (std::size_t g = f + 1; g < c.morphism_count(); ++g) {
            if (c.src(f) == c.src(g) && c.dst(f) == c.dst(g) && F.morphisms[f] == F.morphisms[g]) {
                faithful.fail({c.id(f), c.id(g)});
            }
        }
    }
    return {{typed, ident, functorial, daggers, faithful}};
}

/// Z/n as a one-object inverse category, morphisms "0".."n-1", dagger = inverse.
inline InverseCategoryPresentation cyclic_group(std::size_t n) {
    InverseCategoryPresentation p;
    p.objects = {"*"};
    for (std::size_t k = 0; k < n; ++k) {
        p.morphisms.push_back({std::to_string(k), "*", "*"});
        p.dagger.emplace_back(std::to_string(k), std::to_string((n - k) % n));
        for (std::size_t j = 0; j < n; ++j) {
            p.composition.push_back({std::to_string(k), std::to_string(j), std::to_string((k + j) % n)});
        }
    }
    p.identities["*"] = "0";
    return p;
}

/// Compact id for an endomorphism of a finite set, e.g. "[0>1,1>0]".
inline std::string morphism_id(const PartialInjection& f) {
    std::string out = "[";
    bool first = true;
    for (const auto& [x, y] : f.pairs()) {
        out += (first ? "" : ",") + x + ">" + y;
        first = false;
    }
    return out + "]";
}

/// One-object presentation whose morphisms are the given endomorphisms of x,
/// which must be closed under composition and dagger and contain the identity.
inline InverseCategoryPresentation presentation_from_monoid(const FiniteSet& x,
                                                            const std::vector<PartialInjection>& elements) {
    InverseCategoryPresentation p;
    p.objects = {"*"};
    std::map<std::string, std::size_t> index;
    for (const auto& e : elements) {
        const auto id = morphism_id(e);
        index.emplace(id, p.morphisms.size());
        p.morphisms.push_back({id, "*", "*"});
    }
    for (const auto& g : elements) {
        for (const auto& f : elements) {
            const auto gf = morphism_id(compose(g, f));
            if (!index.count(gf)) {
                throw Error(ErrorCode::structural, "element set is not closed under composition");
            }
            p.composition.push_back({morphism_id(g), morphism_id(f), gf});
        }
        p.dagger.emplace_back(morphism_id(g), morphism_id(dagger(g)));
    }
    p.identities["*"] = morphism_id(PartialInjection::identity(x));
    return p;
}

/// The symmetric inverse monoid on x: every partial injection x -> x.
inline InverseCategoryPresentation symmetric_inverse_monoid(const FiniteSet& x) {
    return presentation_from_monoid(x, enumerate_partial_injections(x, x));
}

/// The inverse submonoid of the symmetric inverse monoid generated by
/// `generators`: closure under composition and dagger, with the identity.
inline InverseCategoryPresentation inverse_submonoid(const FiniteSet& x, const std::vector<PartialInjection>& generators) {
    std::vector<PartialInjection> elements{PartialInjection::identity(x)};
    std::set<std::string> seen{morphism_id(elements.front())};
    auto add = [&](const PartialInjection& f) {
        if (seen.insert(morphism_id(f)).second) {
            elements.push_back(f);
        }
    };
    for (const auto& g : generators) {
        add(g);
        add(dagger(g));
    }
    for (std::size_t i = 0; i < elements.size(); ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            const auto a = elements[i];
            const auto b = elements[j];
            add(compose(a, b));
            add(compose(b, a));
        }
    }
    return presentation_from_monoid(x, elements);
}

} // namespace ltwo

#endif // LTWO_INVERSECAT_HPP
