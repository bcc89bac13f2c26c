// ltwolab: command-line front end. Reads JSON files, writes JSON to stdout,
// diagnostics to stderr.
//
// exit status: 0 ok, 1 law violation or failed check, 2 invalid input,
//              3 numerical failure

#include <cstdint>
#include <deque>
#include <functional>
#include <iostream>
#include <iterator>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ltwo/ltwo.hpp"

using namespace ltwo;

namespace {

constexpr int kOk = 0;
constexpr int kFailedCheck = 1;
constexpr int kBadInput = 2;
constexpr int kNumerical = 3;

int exit_code(ErrorCode code) {
    switch (code) {
    case ErrorCode::numerical_failure: return kNumerical;
    case ErrorCode::consistency: return kFailedCheck;
    default: return kBadInput;
    }
}

Json load(const std::string& path) {
    if (path == "-") {
        const std::string text{std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
        return parse_json(text);
    }
    return read_json_file(path);
}

void emit(const Json& j) { std::cout << dump_json(j) << '\n'; }

PartialInjection load_pinj(const std::string& path) { return partial_injection_from_json(load(path)); }
Matrix load_matrix(const std::string& path) { return matrix_from_json(load(path)); }

FiniteSet labels_or_range(const std::string& path, std::size_t n) {
    return path.empty() ? FiniteSet::range(n) : finite_set_from_json(load(path));
}

struct Options {
    double tol = kLawTolerance;
};

// Storage that option values bind to; deques keep references stable.
struct Slots {
    std::deque<std::string> strings;
    std::deque<std::size_t> sizes;
    std::deque<double> reals;
    std::deque<std::uint64_t> seeds;
    std::deque<bool> flags;

    std::string& str(std::string init = {}) { return strings.emplace_back(std::move(init)); }
    std::size_t& size(std::size_t init) { return sizes.emplace_back(init); }
    double& real(double init) { return reals.emplace_back(init); }
    std::uint64_t& seed(std::uint64_t init) { return seeds.emplace_back(init); }
    bool& flag(bool init) { return flags.emplace_back(init); }
};

using Action = std::function<int()>;

void add_pinj(CLI::App& app, Slots& slots, Action& action) {
    auto* pinj = app.add_subcommand("pinj", "finite sets and partial injections");
    pinj->require_subcommand(1);

    auto binary = [&](const char* name, const char* help, auto op) {
        auto* cmd = pinj->add_subcommand(name, help);
        auto* f = &slots.str();
        auto* g = &slots.str();
        cmd->add_option("-f", *f, "first morphism (JSON file)")->required();
        cmd->add_option("-g", *g, "second morphism (JSON file)")->required();
        cmd->callback([&action, f, g, op] { action = [f, g, op] { return op(load_pinj(*f), load_pinj(*g)); }; });
    };
    binary("compose", "g after f", [](const PartialInjection& f, const PartialInjection& g) {
        emit(to_json(compose(g, f)));
        return kOk;
    });
    binary("tensor", "f (x) g", [](const PartialInjection& f, const PartialInjection& g) {
        emit(to_json(tensor(f, g)));
        return kOk;
    });
    binary("oplus", "f (+) g", [](const PartialInjection& f, const PartialInjection& g) {
        emit(to_json(oplus(f, g)));
        return kOk;
    });
    binary("equalizer", "equalizer of parallel f, g", [](const PartialInjection& f, const PartialInjection& g) {
        const auto eq = equalizer(f, g);
        emit(Json{{"object", to_json(eq.object)}, {"inclusion", to_json(eq.inclusion)}});
        return kOk;
    });

    auto* dag = pinj->add_subcommand("dagger", "relational transpose");
    auto* dag_f = &slots.str();
    dag->add_option("-f,file", *dag_f, "morphism (JSON file)")->required();
    dag->callback([&action, dag_f] {
        action = [dag_f] {
            emit(to_json(dagger(load_pinj(*dag_f))));
            return kOk;
        };
    });

    auto* colim = pinj->add_subcommand("colimit", "colimit of a finite chain");
    auto* chain_path = &slots.str();
    colim->add_option("chain", *chain_path, "chain {stages, links} (JSON file)")->required();
    colim->callback([&action, chain_path] {
        action = [chain_path] {
            emit(to_json(chain_colimit(chain_from_json(load(*chain_path)))));
            return kOk;
        };
    });

    auto* sup_cmd = pinj->add_subcommand("sup", "supremum of a directed family");
    auto* family_path = &slots.str();
    sup_cmd->add_option("family", *family_path, "array of partial injections (JSON file)")->required();
    sup_cmd->callback([&action, family_path] {
        action = [family_path] {
            const Json j = load(*family_path);
            if (!j.is_array()) {
                throw Error(ErrorCode::parse, "a family is an array of partial injections");
            }
            std::vector<PartialInjection> family;
            for (const auto& f : j) {
                family.push_back(partial_injection_from_json(f));
            }
            emit(to_json(sup(family)));
            return kOk;
        };
    });
}

void add_ltwo(CLI::App& app, Slots& slots, Action& action, const Options& opts) {
    auto* cmd = app.add_subcommand("ltwo", "the l2 functor");
    cmd->require_subcommand(1);

    auto* dim = cmd->add_subcommand("dim", "dimension of l2(X)");
    auto* set_path = &slots.str();
    dim->add_option("set", *set_path, "finite set (JSON file)")->required();
    dim->callback([&action, set_path] {
        action = [set_path] {
            emit(Json{{"dim", ltwo_object(finite_set_from_json(load(*set_path)))}});
            return kOk;
        };
    });

    auto* matrix = cmd->add_subcommand("matrix", "matrix of l2(f)");
    auto* m_f = &slots.str();
    matrix->add_option("-f,file", *m_f, "partial injection (JSON file)")->required();
    matrix->callback([&action, m_f] {
        action = [m_f] {
            emit(to_json(ltwo_matrix(load_pinj(*m_f))));
            return kOk;
        };
    });

    auto* verify = cmd->add_subcommand("verify", "check one preservation law");
    auto* law_name = &slots.str();
    auto* v_f = &slots.str();
    auto* v_g = &slots.str();
    verify->add_option("--law", *law_name, "functoriality|dagger|tensor|oplus|order")->required();
    verify->add_option("-f", *v_f, "first morphism (JSON file)")->required();
    verify->add_option("-g", *v_g, "second morphism (JSON file)");
    verify->callback([&action, law_name, v_f, v_g] {
        action = [law_name, v_f, v_g] {
            const auto law = parse_preservation_law(*law_name);
            if (!law) {
                throw Error(ErrorCode::parse, "unknown law '" + *law_name + "'");
            }
            std::optional<PartialInjection> g;
            if (!v_g->empty()) {
                g = load_pinj(*v_g);
            }
            const auto r = verify_preservation(*law, load_pinj(*v_f), g);
            emit(Json{{"law", to_string(r.law)}, {"holds", r.holds}, {"residual", r.residual}});
            return r.holds ? kOk : kFailedCheck;
        };
    });

    auto* basis = cmd->add_subcommand("basis-check", "is a matrix l2 of a partial injection?");
    auto* b_m = &slots.str();
    auto* b_dom = &slots.str();
    auto* b_cod = &slots.str();
    basis->add_option("matrix", *b_m, "matrix (JSON file)")->required();
    basis->add_option("--dom", *b_dom, "domain labels (JSON file); default 0..n-1");
    basis->add_option("--cod", *b_cod, "codomain labels (JSON file); default 0..m-1");
    basis->callback([&action, &opts, b_m, b_dom, b_cod] {
        action = [&opts, b_m, b_dom, b_cod] {
            const Matrix a = load_matrix(*b_m);
            const auto f = to_partial_injection(a, labels_or_range(*b_dom, a.cols()), labels_or_range(*b_cod, a.rows()),
                                                opts.tol);
            emit(Json{{"basis_preserving", f.has_value()}, {"partial_injection", f ? to_json(*f) : Json(nullptr)}});
            return kOk;
        };
    });
}

void add_hilb(CLI::App& app, Slots& slots, Action& action, const Options& opts) {
    auto* cmd = app.add_subcommand("hilb", "finite-dimensional Hilbert spaces");
    cmd->require_subcommand(1);

    auto unary = [&](const char* name, const char* help, auto op) {
        auto* sub = cmd->add_subcommand(name, help);
        auto* path = &slots.str();
        sub->add_option("matrix", *path, "matrix (JSON file)")->required();
        sub->callback([&action, &opts, path, op] { action = [&opts, path, op] { return op(load_matrix(*path), opts.tol); }; });
        return sub;
    };

    auto* polar_cmd = cmd->add_subcommand("polar", "polar decomposition");
    auto* p_path = &slots.str();
    auto* side = &slots.str("right");
    auto* strong = &slots.flag(false);
    polar_cmd->add_option("matrix", *p_path, "matrix (JSON file)")->required();
    polar_cmd->add_option("--side", *side, "left|right")->check(CLI::IsMember({"left", "right"}));
    polar_cmd->add_flag("--strong", *strong, "positive definite positive part");
    polar_cmd->callback([&action, p_path, side, strong] {
        action = [p_path, side, strong] {
            const Matrix a = load_matrix(*p_path);
            const auto r = polar(a, *side == "left" ? PolarSide::left : PolarSide::right,
                                 *strong ? PolarFlavor::strong : PolarFlavor::kernel_matched);
            Json j = to_json(r);
            j["residual"] = operator_norm(a - r.reconstruct());
            emit(j);
            return kOk;
        };
    });

    unary("factorize", "g = v l2(f) u with u unitary, v invertible", [](const Matrix& g, double tol) {
        const auto fac = essential_full_factor(g, tol);
        emit(to_json(fac, operator_norm(g - fac.reconstruct())));
        return kOk;
    });
    unary("isometry-factor", "partial isometry i = v l2(f) u with u, v unitary", [](const Matrix& i, double tol) {
        const auto fac = isometry_factor(i, tol);
        emit(to_json(fac, operator_norm(i - fac.reconstruct())));
        return kOk;
    });
    unary("classify", "operator class flags and residuals", [](const Matrix& a, double tol) {
        emit(to_json(classify(a, tol)));
        return kOk;
    });
    unary("inverse", "inverse of a positive definite matrix", [](const Matrix& p, double tol) {
        const Matrix inv = positive_inverse(p, tol);
        emit(Json{{"inverse", to_json(inv)},
                  {"residual", operator_norm(inv * p - Matrix::identity(p.rows()))}});
        return kOk;
    });
    unary("chain", "partial-isometry chain for ||f|| <= 1/sqrt(mn)", [](const Matrix& f, double tol) {
        const auto links = finite_rank_chain(f, tol);
        Json chain = Json::array();
        for (const auto& l : links) {
            chain.push_back(to_json(l));
        }
        emit(Json{{"chain", std::move(chain)}, {"residual", operator_norm(f - compose_chain(links))}});
        return kOk;
    });

    auto* eq = cmd->add_subcommand("equalizer", "kernel of a - b");
    auto* eq_a = &slots.str();
    auto* eq_b = &slots.str();
    eq->add_option("a", *eq_a, "matrix (JSON file)")->required();
    eq->add_option("b", *eq_b, "matrix (JSON file)")->required();
    eq->callback([&action, eq_a, eq_b] {
        action = [eq_a, eq_b] {
            const Matrix e = equalizer(load_matrix(*eq_a), load_matrix(*eq_b));
            emit(Json{{"dim", e.cols()}, {"inclusion", to_json(e)}});
            return kOk;
        };
    });

    auto* fill = cmd->add_subcommand("fill-in", "diagonal d with d l = top and r d = bottom");
    auto* l = &slots.str();
    auto* r = &slots.str();
    auto* top = &slots.str();
    auto* bottom = &slots.str();
    fill->add_option("--left", *l, "positive definite l (JSON file)")->required();
    fill->add_option("--right", *r, "partial isometry r (JSON file)")->required();
    fill->add_option("--top", *top, "top map (JSON file)")->required();
    fill->add_option("--bottom", *bottom, "bottom map (JSON file)")->required();
    fill->callback([&action, &opts, l, r, top, bottom] {
        action = [&opts, l, r, top, bottom] {
            const Matrix lm = load_matrix(*l);
            const Matrix rm = load_matrix(*r);
            const Matrix tm = load_matrix(*top);
            const Matrix bm = load_matrix(*bottom);
            const Matrix d = diagonal_fill_in(lm, rm, tm, bm, opts.tol);
            emit(Json{{"diagonal", to_json(d)},
                      {"residual_top", operator_norm(d * lm - tm)},
                      {"residual_bottom", operator_norm(rm * d - bm)}});
            return kOk;
        };
    });
}

void add_embed(CLI::App& app, Slots& slots, Action& action) {
    auto* cmd = app.add_subcommand("embed", "inverse categories and the Wagner-Preston embedding");
    cmd->require_subcommand(1);

    auto* validate_cmd = cmd->add_subcommand("validate", "check the inverse-category laws");
    auto* v_path = &slots.str();
    validate_cmd->add_option("presentation", *v_path, "presentation (JSON file)")->required();
    validate_cmd->callback([&action, v_path] {
        action = [v_path] {
            const auto report = validate(presentation_from_json(load(*v_path)));
            emit(to_json(report));
            return report.passed() ? kOk : kFailedCheck;
        };
    });

    auto* wp = cmd->add_subcommand("wp", "Wagner-Preston embedding into partial injections");
    auto* w_path = &slots.str();
    wp->add_option("presentation", *w_path, "presentation (JSON file)")->required();
    wp->callback([&action, w_path] {
        action = [w_path] {
            const auto p = presentation_from_json(load(*w_path));
            emit(to_json(wagner_preston(p), p));
            return kOk;
        };
    });

    auto* check = cmd->add_subcommand("check", "check an embedding's functor laws and faithfulness");
    auto* c_path = &slots.str();
    auto* c_emb = &slots.str();
    check->add_option("presentation", *c_path, "presentation (JSON file)")->required();
    check->add_option("--embedding", *c_emb, "embedding as emitted by 'embed wp'; default: compute it");
    check->callback([&action, c_path, c_emb] {
        action = [c_path, c_emb] {
            const auto p = presentation_from_json(load(*c_path));
            const auto F = c_emb->empty() ? wagner_preston(p) : embedding_from_json(load(*c_emb), p);
            const auto report = check_embedding(p, F);
            emit(to_json(report));
            return report.passed() ? kOk : kFailedCheck;
        };
    });
}

void add_laws(CLI::App& app, Slots& slots, Action& action) {
    auto* cmd = app.add_subcommand("laws", "seeded property suites");
    cmd->require_subcommand(1);
    auto* run = cmd->add_subcommand("run", "run one suite");
    auto* suite = &slots.str();
    auto* seed = &slots.seed(0);
    auto* cases = &slots.size(100);
    auto* max_size = &slots.size(6);
    auto* max_failures = &slots.size(5);
    run->add_option("--suite", *suite, "suite name")->required();
    run->add_option("--seed", *seed, "base seed");
    run->add_option("--cases", *cases, "number of cases");
    run->add_option("--max-size", *max_size, "size bound for generated objects");
    run->add_option("--max-failures", *max_failures, "counterexamples to keep");
    run->callback([&action, suite, seed, cases, max_size, max_failures] {
        action = [suite, seed, cases, max_size, max_failures] {
            const auto report = run_suite(*suite, *seed, *cases, *max_size, *max_failures);
            emit(to_json(report));
            return report.passed() ? kOk : kFailedCheck;
        };
    });
}

void add_demo(CLI::App& app, Slots& slots, Action& action, const Options& opts) {
    auto* cmd = app.add_subcommand("demo", "counterexamples");
    cmd->require_subcommand(1);

    auto* eq = cmd->add_subcommand("equalizer", "l2 does not preserve equalizers");
    auto* eq_f = &slots.str();
    auto* eq_g = &slots.str();
    eq->add_option("-f", *eq_f, "first morphism (JSON file); default {(0,a)}");
    eq->add_option("-g", *eq_g, "second morphism (JSON file); default {(1,a)}");
    eq->callback([&action, eq_f, eq_g] {
        action = [eq_f, eq_g] {
            if (eq_f->empty() != eq_g->empty()) {
                throw Error(ErrorCode::parse, "give both -f and -g or neither");
            }
            emit(to_json(eq_f->empty() ? demo_equalizer_nonpreservation()
                                       : demo_equalizer_nonpreservation(load_pinj(*eq_f), load_pinj(*eq_g))));
            return kOk;
        };
    });

    auto* cop = cmd->add_subcommand("coproduct", "exhaustive search for a binary coproduct");
    auto* cx = &slots.str();
    auto* cy = &slots.str();
    auto* size_bound = &slots.size(3);
    auto* test_bound = &slots.size(2);
    cop->add_option("--left", *cx, "left set (JSON file); default [\"x\"]");
    cop->add_option("--right", *cy, "right set (JSON file); default [\"y\"]");
    cop->add_option("--size-bound", *size_bound, "largest candidate size");
    cop->add_option("--test-bound", *test_bound, "largest test object size");
    cop->callback([&action, cx, cy, size_bound, test_bound] {
        action = [cx, cy, size_bound, test_bound] {
            const FiniteSet x = cx->empty() ? FiniteSet{"x"} : finite_set_from_json(load(*cx));
            const FiniteSet y = cy->empty() ? FiniteSet{"y"} : finite_set_from_json(load(*cy));
            emit(to_json(search_binary_coproduct(x, y, *size_bound, *test_bound)));
            return kOk;
        };
    });

    auto* iso = cmd->add_subcommand("isometry-composition", "partial isometries do not compose");
    auto* theta = &slots.real(std::numbers::pi / 4.0);
    iso->add_option("--theta", *theta, "angle in radians; default pi/4");
    iso->callback([&action, &opts, theta] {
        action = [&opts, theta] {
            emit(to_json(demo_isometry_composition(*theta, opts.tol)));
            return kOk;
        };
    });

    auto* growth = cmd->add_subcommand("norm-growth", "cotuple norms grow without bound");
    auto* n_growth = &slots.size(3);
    growth->add_option("--n", *n_growth, "number of components");
    growth->callback([&action, n_growth] {
        action = [n_growth] {
            emit(to_json(demo_unbounded_cotuple(*n_growth)));
            return kOk;
        };
    });

    auto* dense = cmd->add_subcommand("dense-range", "diag(1, 1/2, ..., 1/n)");
    auto* n_dense = &slots.size(8);
    dense->add_option("--n", *n_dense, "dimension");
    dense->callback([&action, n_dense] {
        action = [n_dense] {
            emit(to_json(demo_dense_range_noniso(*n_dense)));
            return kOk;
        };
    });

    auto* restr = cmd->add_subcommand("restriction", "support projectors need not commute");
    auto* ra = &slots.str();
    auto* rb = &slots.str();
    restr->add_option("-a", *ra, "first matrix (JSON file)");
    restr->add_option("-b", *rb, "second matrix (JSON file)");
    restr->callback([&action, ra, rb] {
        action = [ra, rb] {
            if (ra->empty() != rb->empty()) {
                throw Error(ErrorCode::parse, "give both -a and -b or neither");
            }
            emit(to_json(ra->empty() ? demo_restriction_failure()
                                     : demo_restriction_failure(load_matrix(*ra), load_matrix(*rb))));
            return kOk;
        };
    });
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"ltwolab: partial injections, Hilbert spaces and the l2 functor"};
    app.require_subcommand(1);
    Options opts;
    app.add_option("--tol", opts.tol, "tolerance for numerical predicates")->check(CLI::PositiveNumber);

    Slots slots;
    Action action;
    add_pinj(app, slots, action);
    add_ltwo(app, slots, action, opts);
    add_hilb(app, slots, action, opts);
    add_embed(app, slots, action);
    add_laws(app, slots, action);
    add_demo(app, slots, action, opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kBadInput;
    }

    try {
        return action ? action() : kBadInput;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code(e.code());
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error (parse): " << e.what() << '\n';
        return kBadInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kNumerical;
    }
}
