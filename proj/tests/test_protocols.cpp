#include <catch2/catch_amalgamated.hpp>

#include <string>
#include <vector>

#include "stabkit/protocols.hpp"
#include "stabkit/unitary.hpp"

using namespace stabkit;

namespace {

bool has(const std::string& text, const char* needle) {
    return text.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("every registered protocol verifies across seeds") {
    const auto& reg = protocol_registry();
    REQUIRE(reg.size() == 12);
    for (const auto& entry : reg) {
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            const ProtocolResult r = run_protocol(entry.first, {}, seed);
            INFO(entry.first << " seed " << seed << ": " << r.note);
            CHECK(r.pass);
            CHECK(r.method == "tableau+dense");
        }
    }
}

TEST_CASE("gadget targets carry the derived phases") {
    const auto pd = make_protocol("p_dagger_from_cnot");
    CHECK(pd.targets == std::vector<PauliOperator>{PauliOperator::parse("-iYI"),
                                                   PauliOperator::parse("ZI")});
    const auto q = make_protocol("q_from_cnot_p");
    CHECK(q.targets == std::vector<PauliOperator>{PauliOperator::parse("XI"),
                                                  PauliOperator::parse("iYI")});
    const auto r = make_protocol("r_from_pqp");
    CHECK(r.targets == std::vector<PauliOperator>{PauliOperator::parse("ZIII"),
                                                  PauliOperator::parse("XIII")});
    const auto tp = make_protocol("teleport");
    CHECK(tp.targets == std::vector<PauliOperator>{PauliOperator::parse("IIX"),
                                                   PauliOperator::parse("IIZ")});
    const auto pt = make_protocol("p_from_t3");
    CHECK(pt.targets[0] == PauliOperator::parse("iYII"));
    CHECK(pt.targets[1] == PauliOperator::parse("ZII"));
}

TEST_CASE("encoded and parametrized variants") {
    ProtocolParams p7;
    p7.code = builtin_code("steane7");
    CHECK(run_protocol("cnot_from_g4", p7, 3).pass);
    CHECK(run_protocol("encoded_zero_prep", p7, 3).pass);

    ProtocolParams p5;
    p5.code = builtin_code("five_qubit");
    CHECK(run_protocol("cnot_from_g4", p5, 3).pass);
    CHECK(run_protocol("encoded_zero_prep", p5, 3).pass);

    ProtocolParams d4;
    d4.code = builtin_code("distance2(4)");
    CHECK(run_protocol("encoded_zero_prep", d4, 3).pass);
    for (std::size_t j = 1; j <= 2; ++j) {
        ProtocolParams q = d4;
        q.j = j;
        CHECK(run_protocol("qubit_switch", q, 3).pass);
    }

    ProtocolParams d6;
    d6.code = builtin_code("distance2(6)");
    d6.j = 3;
    CHECK(run_protocol("qubit_switch", d6, 3).pass);

    ProtocolParams b4 = d4;
    b4.i = 1;
    b4.j = 2;
    CHECK(run_protocol("bell_prep_inblock", b4, 3).pass);
    CHECK(run_protocol("inblock_teleport", b4, 3).pass);
    ProtocolParams b6 = d6;
    b6.i = 1;
    b6.j = 3;
    CHECK(run_protocol("bell_prep_inblock", b6, 3).pass);
    b6.i = 2;
    CHECK(run_protocol("inblock_teleport", b6, 3).pass);

    CHECK_THROWS_AS(make_protocol("no_such_protocol"), std::invalid_argument);
    ProtocolParams bad = d4;
    bad.j = 9;
    CHECK_THROWS_AS(make_protocol("qubit_switch", bad), std::invalid_argument);
    bad.i = bad.j = 1;
    CHECK_THROWS_AS(make_protocol("bell_prep_inblock", bad), std::invalid_argument);
}

TEST_CASE("dumped circuits carry the derived corrections") {
    CHECK(has(format_circ(make_protocol("p_dagger_from_cnot").circuit),
              "MEASURE iIY CORRECT ZZ"));
    CHECK(has(format_circ(make_protocol("q_from_cnot_p").circuit), "MEASURE IX CORRECT iXY"));
    const std::string r = format_circ(make_protocol("r_from_pqp").circuit);
    CHECK(has(r, "CORRECT ZZII"));
    CHECK(has(r, "CORRECT iXIYI"));
    CHECK(has(r, "CORRECT ZIIZ"));
    const std::string pt = format_circ(make_protocol("p_from_t3").circuit);
    CHECK(has(pt, "CORRECT iZXY"));
    CHECK(has(pt, "CORRECT iXZY"));
    const std::string g4 = format_circ(make_protocol("cnot_from_g4").circuit);
    CHECK(has(g4, "CORRECT ZIZZ"));
    CHECK(has(g4, "CORRECT ZZIZ"));
    CHECK(has(format_circ(make_protocol("twoqubit_from_t3").circuit), "CORRECT ZZZ"));

    for (const auto& entry : protocol_registry()) {
        const std::string text = format_circ(make_protocol(entry.first).circuit);
        CHECK(format_circ(parse_circ(text)) == text);
    }
}

TEST_CASE("the p_dagger channel is diag(1, -i)") {
    const auto p = make_protocol("p_dagger_from_cnot");
    REQUIRE(p.dense_target.has_value());
    const DenseMatrix u = to_unitary(*p.dense_target);
    CHECK(std::abs(u.at(0, 0) - cplx{1, 0}) < 1e-12);
    CHECK(std::abs(u.at(1, 1) - cplx{0, -1}) < 1e-12);
    CHECK(std::abs(u.at(0, 1)) < 1e-12);
    CHECK(std::abs(u.at(1, 0)) < 1e-12);
}

TEST_CASE("teleportation preserves arbitrary stabilizer inputs") {
    const auto tp = make_protocol("teleport");
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        // Input state on qubit 1 (most significant), ancillas |00>.
        const DenseMatrix u = to_unitary(random_clifford(1, seed));
        std::vector<cplx> psi(8, 0.0);
        psi[0] = u.at(0, 0);
        psi[4] = u.at(1, 0);

        std::mt19937_64 rng(seed);
        const DenseRun run = run_dense(tp.circuit, std::move(psi), rng);

        // Reduced density matrix of the output qubit (least significant bit).
        cplx rho[2][2] = {{0.0, 0.0}, {0.0, 0.0}};
        for (std::size_t env = 0; env < 4; ++env)
            for (std::size_t i = 0; i < 2; ++i)
                for (std::size_t j = 0; j < 2; ++j)
                    rho[i][j] += run.state[env * 2 + i] * std::conj(run.state[env * 2 + j]);
        cplx fidelity = 0.0;
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j)
                fidelity += std::conj(u.at(i, 0)) * rho[i][j] * u.at(j, 0);
        INFO("seed " << seed);
        CHECK(fidelity.real() > 1.0 - 1e-10);
        CHECK(std::abs(fidelity.imag()) < 1e-10);
    }
}

TEST_CASE("tampered protocols fail") {
    Protocol p = make_protocol("p_dagger_from_cnot");
    p.targets[0] = p.targets[0] * PauliOperator::parse("ZI");
    CHECK_FALSE(run_protocol(p, 1).pass);

    Protocol p2 = make_protocol("q_from_cnot_p");
    Circuit stripped(p2.circuit.qubits());
    for (const auto& step : p2.circuit.steps()) {
        if (const auto* m = std::get_if<MeasureStep>(&step))
            stripped.append_measure(m->observable, std::nullopt, m->bit);
        else if (const auto* g = std::get_if<GateStep>(&step))
            stripped.append_gate(g->name, g->targets);
    }
    p2.circuit = std::move(stripped);
    CHECK_FALSE(run_protocol(p2, 1).pass);
}
