#include <gtest/gtest.h>

#include <functional>
#include <limits>

#include "ltwo/io.hpp"
#include "ltwo/random.hpp"

using namespace ltwo;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "expected an ltwo::Error";
    return ErrorCode::consistency;
}

} // namespace

TEST(Json, MatrixRoundTripIsLossless) {
    Rng rng(1);
    for (int k = 0; k < 50; ++k) {
        const Matrix a = random_matrix(rng, uniform_size(rng, 0, 4), uniform_size(rng, 0, 4));
        const Matrix back = matrix_from_json(parse_json(to_json(a).dump()));
        EXPECT_EQ(back, a);
    }
}

TEST(Json, MatrixAcceptsRealEntries) {
    const auto a = matrix_from_json(parse_json(R"({"rows":1,"cols":2,"data":[1.5,[0,2]]})"));
    EXPECT_EQ(a(0, 0), Complex(1.5, 0.0));
    EXPECT_EQ(a(0, 1), Complex(0.0, 2.0));
}

TEST(Json, MatrixErrors) {
    EXPECT_EQ(code_of([] { matrix_from_json(parse_json(R"({"rows":2,"cols":2,"data":[1,2,3]})")); }),
              ErrorCode::parse);
    EXPECT_EQ(code_of([] { matrix_from_json(parse_json(R"({"rows":1,"cols":1,"data":["x"]})")); }),
              ErrorCode::parse);
    EXPECT_EQ(code_of([] { matrix_from_json(parse_json(R"({"rows":-1,"cols":1,"data":[]})")); }),
              ErrorCode::parse);
    EXPECT_EQ(code_of([] { matrix_from_json(parse_json(R"({"cols":1,"data":[]})")); }), ErrorCode::parse);
    EXPECT_EQ(code_of([] { parse_json("{not json"); }), ErrorCode::parse);
    EXPECT_EQ(code_of([] { read_json_file("/nonexistent/file.json"); }), ErrorCode::parse);
}

TEST(Json, PartialInjectionRoundTrip) {
    Rng rng(2);
    for (int k = 0; k < 50; ++k) {
        const auto f = random_partial_injection(rng, random_finite_set(rng, 5, "x"), random_finite_set(rng, 5, "y"));
        EXPECT_EQ(partial_injection_from_json(parse_json(to_json(f).dump())), f);
    }
}

TEST(Json, PartialInjectionErrorsKeepTheirCodes) {
    EXPECT_EQ(code_of([] {
                  partial_injection_from_json(parse_json(R"({"dom":["0","1"],"cod":["a"],"pairs":[["0","a"],["1","a"]]})"));
              }),
              ErrorCode::non_injective);
    EXPECT_EQ(code_of([] {
                  partial_injection_from_json(parse_json(R"({"dom":["0","0"],"cod":["a"],"pairs":[]})"));
              }),
              ErrorCode::duplicate_label);
    EXPECT_EQ(code_of([] {
                  partial_injection_from_json(parse_json(R"({"dom":["0"],"cod":["a"],"pairs":[["q","a"]]})"));
              }),
              ErrorCode::unknown_label);
    EXPECT_EQ(code_of([] { partial_injection_from_json(parse_json(R"({"dom":["0"],"cod":["a"],"pairs":[["0"]]})")); }),
              ErrorCode::parse);
    EXPECT_EQ(code_of([] { partial_injection_from_json(parse_json(R"({"dom":[0],"cod":[],"pairs":[]})")); }),
              ErrorCode::parse);
}

TEST(Json, ChainRoundTrip) {
    Rng rng(3);
    for (int k = 0; k < 20; ++k) {
        const auto d = random_chain(rng, 4, 4);
        const auto back = chain_from_json(parse_json(to_json(d).dump()));
        EXPECT_EQ(to_json(back), to_json(d));
    }
}

TEST(Json, PresentationRoundTrip) {
    const auto p = symmetric_inverse_monoid(FiniteSet::range(2));
    const auto back = presentation_from_json(parse_json(to_json(p).dump()));
    EXPECT_EQ(to_json(back), to_json(p));
    EXPECT_TRUE(validate(back).passed());
}

TEST(Json, PresentationErrors) {
    EXPECT_EQ(code_of([] { presentation_from_json(parse_json(R"({"objects":"*"})")); }), ErrorCode::parse);
    EXPECT_EQ(code_of([] {
                  presentation_from_json(parse_json(
                      R"({"objects":["*"],"morphisms":[],"compose":[["a","b"]],"dagger":[],"identities":{}})"));
              }),
              ErrorCode::parse);
}

TEST(Json, LawReportCarriesWitnesses) {
    auto p = cyclic_group(2);
    p.dagger = {{"0", "0"}, {"1", "0"}};
    const auto j = to_json(validate(p));
    EXPECT_EQ(j["passed"], false);
    bool found = false;
    for (const auto& l : j["laws"]) {
        if (l["law"] == "dagger_involutive") {
            found = true;
            EXPECT_EQ(l["witness"], Json::array({"1"}));
        }
    }
    EXPECT_TRUE(found);
}

TEST(Json, DoublesRoundTripExactly) {
    const double x = 0.1 + 0.2;
    const Matrix a = Matrix::from_rows({{x, std::numeric_limits<double>::denorm_min()}});
    EXPECT_EQ(matrix_from_json(parse_json(to_json(a).dump())), a);
}

TEST(Json, DumpUsesSeventeenSignificantDigits) {
    const Json j{{"x", 0.1}, {"one", 1.0}, {"n", 3}, {"s", "a\"b"}, {"list", Json::array({-2.5e-300, true, nullptr})}};
    EXPECT_EQ(dump_json(j, -1),
              R"({"x":0.10000000000000001,"one":1.0,"n":3,"s":"a\"b","list":[-2.5e-300,true,null]})");
    EXPECT_EQ(parse_json(dump_json(j)), j);
    EXPECT_EQ(dump_json(Json::object()), "{}");
    EXPECT_EQ(dump_json(Json::array({1})), "[\n  1\n]");
}

TEST(Json, DumpedMatricesReparseExactly) {
    Rng rng(4);
    const Matrix a = random_matrix(rng, 3, 3);
    const auto text = dump_json(to_json(a));
    EXPECT_EQ(matrix_from_json(parse_json(text)), a);
    EXPECT_EQ(dump_json(parse_json(text)), text);
}

TEST(Json, EmbeddingRoundTrip) {
    const auto p = symmetric_inverse_monoid(FiniteSet::range(2));
    const auto F = wagner_preston(p);
    const auto back = embedding_from_json(parse_json(dump_json(to_json(F, p))), p);
    EXPECT_TRUE(check_embedding(p, back).passed());
    EXPECT_EQ(to_json(back, p), to_json(F, p));
    EXPECT_EQ(code_of([&] { embedding_from_json(parse_json(R"({"objects":{},"morphisms":{}})"), p); }),
              ErrorCode::parse);
}
