#include <catch2/catch_amalgamated.hpp>

#include <string>
#include <vector>

#include "stabkit/clifford.hpp"
#include "stabkit/code.hpp"
#include "stabkit/dense_sim.hpp"
#include "stabkit/transversal.hpp"

using namespace stabkit;

namespace {

void expect_parse_error(auto&& parse, const char* text, const char* needle) {
    try {
        parse(text);
        FAIL("expected parse failure for: " << text);
    } catch (const std::invalid_argument& e) {
        INFO("input: " << text);
        CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring(needle));
    }
}

}  // namespace

TEST_CASE("gate files round trip") {
    for (const char* name : {"R", "P", "Q", "T", "CNOT", "CZ", "SWAP", "T3", "G4"}) {
        const CliffordMap g = named_gate(name);
        CHECK(parse_gate(format_gate(g)) == g);
    }
    for (std::size_t n = 1; n <= 4; ++n)
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            const CliffordMap g = random_clifford(n, seed * 31 + n);
            CHECK(parse_gate(format_gate(g)) == g);
        }

    // Rows may arrive in any order, with comments and blank lines.
    const CliffordMap g = parse_gate(
        "# the phase gate\n"
        "Z1 -> Z\n"
        "\n"
        "X1 -> iY   # canonical form\n");
    CHECK(g == named_gate("P"));
}

TEST_CASE("gate parse errors") {
    auto parse = [](const char* t) { return parse_gate(t); };
    expect_parse_error(parse, "", "no rows");
    expect_parse_error(parse, "X1 -> X\n", "X and Z row counts differ");
    expect_parse_error(parse, "X1 -> XX\nZ1 -> ZI\nX2 -> IX\n", "X and Z row counts differ");
    expect_parse_error(parse, "X2 -> IX\nZ2 -> IZ\nZ1 -> ZI\n", "missing row for qubit 1");
    expect_parse_error(parse, "X1 -> X\nX1 -> iY\nZ1 -> Z\n", "duplicate row X1");
    expect_parse_error(parse, "X1 X\nZ1 -> Z\n", "expected '<row> -> <pauli>'");
    expect_parse_error(parse, "X1 -> X trailing\nZ1 -> Z\n", "trailing text");
    expect_parse_error(parse, "Y1 -> X\nZ1 -> Z\n", "row must be X<i> or Z<i>");
    expect_parse_error(parse, "X0 -> X\nZ1 -> Z\n", "row indices are 1-based");
    expect_parse_error(parse, "X1 -> A\nZ1 -> Z\n", "line 1");
    // Structural rejection comes from the image validation.
    expect_parse_error(parse, "X1 -> X\nZ1 -> X\n", "anticommute");
    expect_parse_error(parse, "X1 -> iX\nZ1 -> Z\n", "Hermitian");
}

TEST_CASE("stab files round trip under fuzzing") {
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        const std::size_t n = 2 + seed % 5;
        const std::size_t r = 1 + seed % (n - 1);
        const StabilizerCode c = random_code(n, r, seed);
        const auto loaded = load_stab(format_stab(c));
        REQUIRE(loaded.code.n() == n);
        REQUIRE(loaded.code.k() == c.k());
        // Loading normalizes -1 generator signs by conjugation, so the
        // patterns survive exactly and the phases land on the +1 branch.
        bool all_plus = true;
        for (std::size_t i = 0; i < r; ++i) {
            CHECK(loaded.code.generators()[i].x() == c.generators()[i].x());
            CHECK(loaded.code.generators()[i].z() == c.generators()[i].z());
            CHECK(((loaded.code.generators()[i].phase() >> 1) & 1u) == 0);
            all_plus = all_plus && ((c.generators()[i].phase() >> 1) & 1u) == 0;
        }
        CHECK(loaded.signs_normalized == !all_plus);
        if (all_plus)
            for (std::size_t i = 0; i < c.k(); ++i) {
                CHECK(loaded.code.logical_x()[i] == c.logical_x()[i]);
                CHECK(loaded.code.logical_z()[i] == c.logical_z()[i]);
            }
        CHECK(validate_code(loaded.code).ok());
        // A second pass is exactly stable.
        CHECK(format_stab(load_stab(format_stab(loaded.code)).code) ==
              format_stab(loaded.code));
    }
}

TEST_CASE("circ files round trip under fuzzing") {
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        const std::size_t n = 1 + seed % 5;
        const Circuit c = random_stabilizer_circuit(n, 12, 4, seed);
        const std::string text = format_circ(c);
        const Circuit back = parse_circ(text);
        CHECK(format_circ(back) == text);
        CHECK(back.qubits() == c.qubits());
        CHECK(back.steps().size() == c.steps().size());
    }

    const Circuit mixed = parse_circ(
        "# conditional bit-flip repair\n"
        "qubits 2\n"
        "GATE H 1\n"
        "MEASURE ZI -> b0\n"
        "IF b0 GATE X 1\n"
        "MEASURE iIY CORRECT ZZ -> b1\n");
    REQUIRE(mixed.steps().size() == 4);
    CHECK(std::get<GateStep>(mixed.steps()[0]).name == "R");
    const auto& m = std::get<MeasureStep>(mixed.steps()[3]);
    CHECK(m.observable == PauliOperator::parse("iIY"));
    REQUIRE(m.correction.has_value());
    CHECK(*m.correction == PauliOperator::parse("ZZ"));
    CHECK(m.bit == 1);
}

TEST_CASE("circ parse errors") {
    auto parse = [](const char* t) { return parse_circ(t); };
    expect_parse_error(parse, "", "missing 'qubits' header");
    expect_parse_error(parse, "GATE R 1\n", "expected 'qubits <n>' header");
    expect_parse_error(parse, "qubits 0\n", "bad qubit count");
    expect_parse_error(parse, "qubits 2\nGATE NOPE 1\n", "unknown gate");
    expect_parse_error(parse, "qubits 2\nGATE R 0\n", "targets are 1-based");
    expect_parse_error(parse, "qubits 2\nGATE R x\n", "bad target");
    expect_parse_error(parse, "qubits 2\nGATE R 3\n", "target out of range");
    expect_parse_error(parse, "qubits 2\nGATE CNOT 1 1\n", "repeated target");
    expect_parse_error(parse, "qubits 2\nGATE CNOT 1\n", "arity mismatch");
    expect_parse_error(parse, "qubits 2\nMEASURE ZI\n", "missing '-> b<k>'");
    expect_parse_error(parse, "qubits 2\nMEASURE ZI -> c0\n", "expected bit name 'b<k>'");
    expect_parse_error(parse, "qubits 2\nMEASURE ZI -> b0 junk\n", "trailing text");
    expect_parse_error(parse, "qubits 2\nMEASURE iZI -> b0\n", "square to +I");
    expect_parse_error(parse, "qubits 2\nMEASURE ZI CORRECT ZZ -> b0\n",
                       "must anticommute");
    expect_parse_error(parse, "qubits 2\nMEASURE ZZZ -> b0\n", "length mismatch");
    expect_parse_error(parse, "qubits 2\nIF b0 R 1\n", "expected 'IF b<k> GATE");
    expect_parse_error(parse, "qubits 2\nFOO 1\n", "unknown step 'FOO'");
}
