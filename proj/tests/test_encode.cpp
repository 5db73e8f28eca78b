#include "doctest.h"

#include "cutsel/encode.hpp"
#include "cutsel/family.hpp"
#include "cutsel/milp.hpp"
#include "cutsel/rng.hpp"
#include "cutsel/trainer.hpp"

#include "nlohmann/json.hpp"

#include <cmath>
#include <cstddef>
#include <vector>

using namespace cutsel;

namespace {

MilpInstance tiny_mixed() {
    // min -x - 2y,  x + y <= 3,  2x - y <= 4,  x in {0..5} int, y in [0,2] cont
    MilpInstance inst;
    inst.name = "tiny-mixed";
    inst.n = 2;
    inst.m = 2;
    inst.c = {-1.0, -2.0};
    inst.lower = {0.0, 0.0};
    inst.upper = {5.0, 2.0};
    inst.vtype = {VarType::Integer, VarType::Continuous};
    inst.ctype = {ConsType::Linear, ConsType::Linear};
    inst.coeffs = {{0, 0, 1.0}, {0, 1, 1.0}, {1, 0, 2.0}, {1, 1, -1.0}};
    inst.b = {3.0, 4.0};
    inst.validate();
    return inst;
}

} // namespace

TEST_CASE("family instance graph: shapes and pinned entries") {
    const BipartiteGraph g = encode(make_instance({1.0, 0.0}));
    REQUIRE(g.n == 3);
    REQUIRE(g.m == 4);
    REQUIRE(g.V.size() == 3);
    REQUIRE(g.C.size() == 4);
    REQUIRE(g.E.size() == 8);

    // objective (1, -10, -1) scaled by max|c| = 10
    CHECK(g.V[0][0] == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(g.V[1][0] == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(g.V[2][0] == doctest::Approx(-0.1).epsilon(1e-15));

    // x1 integer, x2 continuous, x3 binary one-hots (offset 3 + slot)
    CHECK(g.V[0][4] == 1.0);
    CHECK(g.V[1][6] == 1.0);
    CHECK(g.V[2][3] == 1.0);

    // x1 and x2 are free: infinite bounds encode as -2 / +2
    for (std::size_t i : {std::size_t{0}, std::size_t{1}}) {
        CHECK(g.V[i][1] == -2.0);
        CHECK(g.V[i][2] == 2.0);
    }
    // x3 binary in [0, 1]; largest finite |bound| is 1
    CHECK(g.V[2][1] == 0.0);
    CHECK(g.V[2][2] == 1.0);

    // every row is plain linear: one-hot slot 2
    for (const auto& row : g.C) {
        CHECK(row[2] == 1.0);
        CHECK(row[0] >= 0.0);
        CHECK(row[0] <= 1.0);
        CHECK(std::abs(row[1]) <= 1.0);
    }
}

TEST_CASE("edges are row-major sorted and row-scaled") {
    const MilpInstance inst = tiny_mixed();
    const BipartiteGraph g = encode(inst);
    REQUIRE(g.E.size() == 4);
    for (std::size_t k = 1; k < g.E.size(); ++k) {
        const bool ordered = g.E[k - 1].cons < g.E[k].cons ||
                             (g.E[k - 1].cons == g.E[k].cons && g.E[k - 1].var < g.E[k].var);
        CHECK(ordered);
    }
    // row 0 inf-norm 1, row 1 inf-norm 2
    CHECK(g.E[0].coeff == doctest::Approx(1.0));
    CHECK(g.E[1].coeff == doctest::Approx(1.0));
    CHECK(g.E[2].coeff == doctest::Approx(1.0));
    CHECK(g.E[3].coeff == doctest::Approx(-0.5));

    // rhs feature: b / max(|b|, row inf-norm)
    CHECK(g.C[0][1] == doctest::Approx(1.0));
    CHECK(g.C[1][1] == doctest::Approx(1.0));
}

TEST_CASE("one-hot blocks each sum to one") {
    SplitMix64 rng(5);
    for (int rep = 0; rep < 30; ++rep) {
        const MilpInstance inst = [&] {
            switch (rep % 3) {
                case 0: return gen_packing(rng.next_u64());
                case 1: return gen_covering(rng.next_u64());
                default: return gen_lot_sizing(rng.next_u64());
            }
        }();
        const BipartiteGraph g = encode(inst);
        for (const auto& row : g.V) {
            double s = 0.0;
            for (std::size_t k = 3; k < 7; ++k) {
                CHECK((row[k] == 0.0 || row[k] == 1.0));
                s += row[k];
            }
            CHECK(s == 1.0);
        }
        for (const auto& row : g.C) {
            double s = 0.0;
            for (std::size_t k = 2; k < 7; ++k) {
                CHECK((row[k] == 0.0 || row[k] == 1.0));
                s += row[k];
            }
            CHECK(s == 1.0);
        }
    }
}

TEST_CASE("feature ranges over a corpus") {
    const auto corpus = synthetic_corpus(99, 60);
    REQUIRE(corpus.size() == 60);
    for (const MilpInstance& inst : corpus) {
        const BipartiteGraph g = encode(inst);
        CHECK(g.V.size() == inst.n);
        CHECK(g.C.size() == inst.m);
        for (const auto& row : g.V) {
            CHECK(std::abs(row[0]) <= 1.0 + 1e-12);
            CHECK(row[1] >= -2.0);
            CHECK(row[1] <= 2.0);
            CHECK(row[2] >= -2.0);
            CHECK(row[2] <= 2.0);
        }
        for (const auto& row : g.C) {
            CHECK(row[0] >= 0.0);
            CHECK(row[0] <= 1.0 + 1e-12);
            CHECK(std::abs(row[1]) <= 1.0 + 1e-12);
        }
        for (const auto& e : g.E) {
            CHECK(e.cons < inst.m);
            CHECK(e.var < inst.n);
            CHECK(std::abs(e.coeff) <= 1.0 + 1e-12);
        }
    }
}

TEST_CASE("row scaling leaves the graph unchanged") {
    const MilpInstance base = tiny_mixed();
    MilpInstance scaled = base;
    // multiply row 1 and its rhs by 40
    for (auto& t : scaled.coeffs) {
        if (t.row == 1) t.value *= 40.0;
    }
    scaled.b[1] *= 40.0;
    scaled.validate();

    const BipartiteGraph g0 = encode(base);
    const BipartiteGraph g1 = encode(scaled);
    REQUIRE(g0.E.size() == g1.E.size());
    for (std::size_t k = 0; k < g0.E.size(); ++k) {
        CHECK(std::abs(g0.E[k].coeff - g1.E[k].coeff) <= 1e-12);
    }
    for (std::size_t i = 0; i < g0.C.size(); ++i) {
        for (std::size_t k = 0; k < 7; ++k) {
            CHECK(std::abs(g0.C[i][k] - g1.C[i][k]) <= 1e-12);
        }
    }
}

TEST_CASE("zero objective degrades gracefully") {
    MilpInstance inst = tiny_mixed();
    inst.c = {0.0, 0.0};
    inst.validate();
    const BipartiteGraph g = encode(inst);
    CHECK(g.V[0][0] == 0.0);
    CHECK(g.V[1][0] == 0.0);
    for (const auto& row : g.C) CHECK(row[0] == 0.0);
}

TEST_CASE("json dump parses and mirrors the graph") {
    const BipartiteGraph g = encode(make_instance({1.0, 0.5}));
    const auto j = nlohmann::json::parse(graph_to_json_text(g));
    REQUIRE(j.contains("V"));
    REQUIRE(j.contains("C"));
    REQUIRE(j.contains("E"));
    CHECK(j["V"].size() == g.V.size());
    CHECK(j["C"].size() == g.C.size());
    CHECK(j["E"].size() == g.E.size());
    for (std::size_t i = 0; i < g.V.size(); ++i) {
        for (std::size_t k = 0; k < 7; ++k) {
            CHECK(j["V"][i][k].get<double>() == g.V[i][k]);
        }
    }
    for (std::size_t k = 0; k < g.E.size(); ++k) {
        CHECK(j["E"][k][0].get<std::size_t>() == g.E[k].cons);
        CHECK(j["E"][k][1].get<std::size_t>() == g.E[k].var);
        CHECK(j["E"][k][2].get<double>() == g.E[k].coeff);
    }
}
