#include <catch2/catch_amalgamated.hpp>

#include <string>
#include <vector>

#include "matrix_oracle.hpp"
#include "stabkit/transversal.hpp"
#include "stabkit/unitary.hpp"

using namespace stabkit;
using oracle::Mat;

namespace {

Mat to_oracle(const DenseMatrix& d) {
    Mat m(d.dim);
    for (std::size_t r = 0; r < d.dim; ++r)
        for (std::size_t c = 0; c < d.dim; ++c) m.at(r, c) = d.at(r, c);
    return m;
}

// Projector onto the joint +1 eigenspace of the generators.
Mat codespace_projector(const StabilizerCode& c) {
    Mat proj = oracle::eye(std::size_t{1} << c.n());
    for (const auto& g : c.generators()) {
        Mat term = oracle::pauli_matrix(g);
        const Mat id = oracle::eye(term.dim);
        for (std::size_t i = 0; i < term.a.size(); ++i)
            term.a[i] = 0.5 * (term.a[i] + id.a[i]);
        proj = oracle::mul(proj, term);
    }
    return proj;
}

std::vector<std::string> sweep_names(const StabilizerCode& c) {
    std::vector<std::string> names;
    for (const auto& r : search_single_qubit_transversal(c)) names.push_back(r.name);
    return names;
}

}  // namespace

TEST_CASE("bitwise gates on the seven-qubit code") {
    const auto steane = builtin_code("steane7");

    const auto r = check_transversal(steane, bitwise_candidate("R"));
    REQUIRE(r.valid);
    CHECK(*r.logical == named_gate("R"));

    const auto p = check_transversal(steane, bitwise_candidate("P"));
    REQUIRE(p.valid);
    CHECK(*p.logical == named_gate("PDG"));
    CHECK(p.logical->x_image(0) == PauliOperator::parse("-iY"));
    CHECK(p.logical->z_image(0) == PauliOperator::parse("Z"));

    const auto cnot = check_transversal(steane, bitwise_candidate("CNOT"));
    REQUIRE(cnot.valid);
    CHECK(*cnot.logical == named_gate("CNOT"));
}

TEST_CASE("bitwise gates on the five-qubit code") {
    const auto five = builtin_code("five_qubit");

    const auto t = check_transversal(five, bitwise_candidate("T"));
    REQUIRE(t.valid);
    CHECK(*t.logical == named_gate("T"));

    // The first generator maps to the product of the third and fourth.
    const auto total = candidate_map(five, bitwise_candidate("T"));
    const auto image = total.apply(five.generators()[0]);
    CHECK(image.str() == "-YXXYI");
    CHECK(image == five.generators()[2] * five.generators()[3]);

    const auto r = check_transversal(five, bitwise_candidate("R"));
    REQUIRE_FALSE(r.valid);
    REQUIRE(r.witness.has_value());
    CHECK(r.witness->block == 0);
    CHECK(r.witness->generator == 0);
    CHECK(r.witness->reason == "image leaves the stabilizer group");

    const auto t3 = check_transversal(five, bitwise_candidate("T3"));
    REQUIRE(t3.valid);
    CHECK(*t3.logical == named_gate("T3"));
}

TEST_CASE("single-qubit sweeps") {
    const auto five_names = sweep_names(builtin_code("five_qubit"));
    CHECK(five_names == std::vector<std::string>{"I", "X", "Z", "Y", "T", "PRPP", "PR",
                                                 "RPRPPP", "T2", "RPPP", "PPRP", "RPRPPR"});
    // Deterministic: a second sweep reproduces the list.
    CHECK(sweep_names(builtin_code("five_qubit")) == five_names);

    const auto steane_names = sweep_names(builtin_code("steane7"));
    CHECK(steane_names.size() == 24);
    for (const char* want : {"I", "R", "P", "PDG", "Q", "QDG", "T", "T2"})
        CHECK(std::find(steane_names.begin(), steane_names.end(), want) != steane_names.end());
}

TEST_CASE("valid sweep gates preserve the codespace densely") {
    const auto five = builtin_code("five_qubit");
    const Mat proj = codespace_projector(five);
    for (const auto& res : search_single_qubit_transversal(five)) {
        const Mat w = to_oracle(to_unitary(candidate_map(five, bitwise_candidate(
                                                                   res.gate, res.name))));
        const Mat lhs = oracle::mul(oracle::mul(w, proj), oracle::dagger(w));
        INFO("gate " << res.name);
        CHECK(oracle::max_diff(lhs, proj) < 1e-10);
    }
}

TEST_CASE("eight-qubit block permutations") {
    const auto eight = builtin_code("eight_qubit");
    const auto cands = eight_qubit_permutations();
    REQUIRE(cands.size() == 3);
    CHECK(cands[0].name == "swap_halves");
    CHECK(cands[1].name == "swap_pairs");
    CHECK(cands[2].name == "swap_odd_even");

    const auto& m = eight.generators();

    const auto sh = candidate_map(eight, cands[0]);
    CHECK(sh.apply(m[0]) == m[0]);
    CHECK(sh.apply(m[1]) == m[1]);
    CHECK(sh.apply(m[2]) == m[0] * m[1] * m[2]);
    CHECK(sh.apply(m[3]) == m[3]);
    CHECK(sh.apply(m[4]) == m[0] * m[4]);

    const auto sp = candidate_map(eight, cands[1]);
    CHECK(sp.apply(m[0]) == m[0]);
    CHECK(sp.apply(m[1]) == m[1]);
    CHECK(sp.apply(m[2]) == m[2]);
    CHECK(sp.apply(m[3]) == m[1] * m[3]);
    CHECK(sp.apply(m[4]) == m[0] * m[4]);

    const auto so = candidate_map(eight, cands[2]);
    CHECK(so.apply(m[0]) == m[0]);
    CHECK(so.apply(m[1]) == m[1]);
    CHECK(so.apply(m[2]) == m[0] * m[2]);
    CHECK(so.apply(m[3]) == m[0] * m[3]);
    CHECK(so.apply(m[4]) == m[0] * m[1] * m[4]);

    auto logical_of = [&](std::size_t i) {
        const auto v = check_transversal(eight, cands[i]);
        REQUIRE(v.valid);
        return *v.logical;
    };

    const auto lh = logical_of(0);
    CHECK(lh.x_image(0) == PauliOperator::parse("-XIZ"));
    CHECK(lh.x_image(1) == PauliOperator::parse("-IXI"));
    CHECK(lh.x_image(2) == PauliOperator::parse("ZIX"));

    const auto lp = logical_of(1);
    CHECK(lp.x_image(0) == PauliOperator::parse("XZZ"));
    CHECK(lp.x_image(1) == PauliOperator::parse("ZXZ"));
    CHECK(lp.x_image(2) == PauliOperator::parse("ZZX"));

    const auto lo = logical_of(2);
    CHECK(lo.x_image(0) == PauliOperator::parse("XIZ"));
    CHECK(lo.x_image(1) == PauliOperator::parse("-IXZ"));
    CHECK(lo.x_image(2) == PauliOperator::parse("-ZZX"));

    for (const auto& l : {lh, lp, lo})
        for (std::size_t j = 0; j < 3; ++j) {
            PauliOperator z(3);
            z.set_letter(j, 'Z');
            CHECK(l.z_image(j) == z);
        }
}

TEST_CASE("bitwise CNOT validity matches the sector split") {
    for (const auto& name : {"steane7", "five_qubit", "eight_qubit", "distance2(4)",
                             "distance2(6)"})
        CHECK(css_cnot_theorem_check(builtin_code(name)));

    std::size_t css_count = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        const std::size_t n = 3 + seed % 4;
        const std::size_t r = 1 + seed % (n - 1);
        const auto c = random_code(n, r, seed);
        CHECK(css_cnot_theorem_check(c));
        if (css_structure(c)) ++css_count;
    }
    // The sample must exercise both branches of the equivalence.
    CHECK(css_count > 0);
    CHECK(css_count < 100);
}

TEST_CASE("candidate construction errors") {
    const auto five = builtin_code("five_qubit");
    CHECK_THROWS_AS(candidate_map(five, permutation_candidate({0, 1, 2}, "short")),
                    std::invalid_argument);
    CHECK_THROWS_AS(candidate_map(five, permutation_candidate({0, 0, 1, 2, 3}, "dup")),
                    std::invalid_argument);
    CHECK_THROWS_AS(candidate_map(five, permutation_candidate({0, 1, 2, 3, 9}, "range")),
                    std::invalid_argument);
    TransversalCandidate none;
    none.blocks = 0;
    CHECK_THROWS_AS(candidate_map(five, none), std::invalid_argument);
    CHECK_THROWS_AS(bitwise_candidate("NOPE"), std::invalid_argument);
}
