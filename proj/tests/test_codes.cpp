#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <string>
#include <vector>

#include "stabkit/code.hpp"
#include "stabkit/transversal.hpp"

using namespace stabkit;

namespace {

std::vector<std::string> strings_of(const std::vector<PauliOperator>& v) {
    std::vector<std::string> out;
    out.reserve(v.size());
    for (const auto& p : v) out.push_back(p.str());
    return out;
}

}  // namespace

TEST_CASE("builtin code tables") {
    const auto steane = builtin_code("steane7");
    CHECK(steane.name() == "steane7");
    CHECK(steane.n() == 7);
    CHECK(steane.k() == 1);
    CHECK(strings_of(steane.generators()) ==
          std::vector<std::string>{"XXXXIII", "XXIIXXI", "XIXIXIX", "ZZZZIII", "ZZIIZZI",
                                   "ZIZIZIZ"});
    CHECK(strings_of(steane.logical_x()) == std::vector<std::string>{"IIIIXXX"});
    CHECK(strings_of(steane.logical_z()) == std::vector<std::string>{"IIIIZZZ"});

    const auto five = builtin_code("five_qubit");
    CHECK(five.n() == 5);
    CHECK(five.k() == 1);
    CHECK(strings_of(five.generators()) ==
          std::vector<std::string>{"XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"});
    CHECK(strings_of(five.logical_x()) == std::vector<std::string>{"XXXXX"});
    CHECK(strings_of(five.logical_z()) == std::vector<std::string>{"ZZZZZ"});

    const auto eight = builtin_code("eight_qubit");
    CHECK(eight.n() == 8);
    CHECK(eight.k() == 3);
    CHECK(strings_of(eight.generators()) ==
          std::vector<std::string>{"XXXXXXXX", "ZZZZZZZZ", "XIXIZYZY", "XIYZXIYZ", "XZIYIYXZ"});
    CHECK(strings_of(eight.logical_x()) ==
          std::vector<std::string>{"XXIIIZIZ", "XIXZIIZI", "XIIZXZII"});
    CHECK(strings_of(eight.logical_z()) ==
          std::vector<std::string>{"IZIZIZIZ", "IIZZIIZZ", "IIIIZZZZ"});

    const auto d4 = builtin_code("distance2(4)");
    CHECK(d4.name() == "distance2(4)");
    CHECK(d4.n() == 4);
    CHECK(d4.k() == 2);
    CHECK(strings_of(d4.generators()) == std::vector<std::string>{"XXXX", "ZZZZ"});
    CHECK(strings_of(d4.logical_x()) == std::vector<std::string>{"XXII", "XIXI"});
    CHECK(strings_of(d4.logical_z()) == std::vector<std::string>{"IZIZ", "IIZZ"});
    CHECK(builtin_code("distance2:6").name() == "distance2(6)");
    CHECK(builtin_code("distance2:6").k() == 4);

    for (const auto& name : {"steane7", "five_qubit", "eight_qubit", "distance2(4)",
                             "distance2(6)", "distance2(8)"})
        CHECK(validate_code(builtin_code(name)).ok());

    CHECK_THROWS_AS(builtin_code("no_such_code"), std::invalid_argument);
    CHECK_THROWS_AS(builtin_code("distance2(3)"), std::invalid_argument);
    CHECK_THROWS_AS(builtin_code("distance2(2)"), std::invalid_argument);
    CHECK_THROWS_AS(builtin_code("distance2(x)"), std::invalid_argument);
}

TEST_CASE("validation catches structural problems") {
    auto row = [](const char* s) { return PauliOperator::parse(s); };

    SECTION("anticommuting generators") {
        StabilizerCode c("", 2, {row("XI"), row("ZI")}, {}, {});
        const auto rep = validate_code(c);
        REQUIRE_FALSE(rep.ok());
        CHECK(rep.problems[0] == "generators M1, M2 anticommute");
    }
    SECTION("non-Hermitian generator") {
        StabilizerCode c("", 2, {row("iXI"), row("IZ")}, {}, {});
        const auto rep = validate_code(c);
        REQUIRE_FALSE(rep.ok());
        CHECK(rep.problems[0] == "generator M1 does not square to +I");
    }
    SECTION("dependent generator") {
        StabilizerCode c("", 3, {row("XII"), row("XII")}, {row("IIX")}, {row("IIZ")});
        const auto rep = validate_code(c);
        REQUIRE_FALSE(rep.ok());
        CHECK(rep.problems[0] == "generator M2 is a product of earlier generators");
    }
    SECTION("logical anticommutes with a generator") {
        StabilizerCode c("", 2, {row("XI")}, {row("ZX")}, {row("IZ")});
        const auto rep = validate_code(c);
        REQUIRE_FALSE(rep.ok());
        CHECK(rep.problems[0] == "logical X1 anticommutes with M1");
    }
    SECTION("paired logicals must anticommute") {
        StabilizerCode c("", 2, {row("ZZ")}, {row("XX")}, {row("XX")});
        const auto rep = validate_code(c);
        REQUIRE_FALSE(rep.ok());
        CHECK(rep.problems[0] == "logicals X1, Z1 fail to anticommute");
    }
    SECTION("cross-pair logicals must commute") {
        // X2 = IIX anticommutes with Z1 = ZIZ.
        StabilizerCode c("", 3, {row("ZZI")}, {row("XXI"), row("IIX")},
                         {row("ZIZ"), row("IIZ")});
        const auto rep = validate_code(c);
        REQUIRE_FALSE(rep.ok());
        CHECK(rep.problems[0] == "logicals X2, Z1 anticommute");
    }
}

TEST_CASE("syndromes and membership") {
    const auto five = builtin_code("five_qubit");

    const auto s1 = syndrome(five, PauliOperator::parse("XIIII"));
    CHECK_FALSE(s1.bits.get(0));
    CHECK_FALSE(s1.bits.get(1));
    CHECK_FALSE(s1.bits.get(2));
    CHECK(s1.bits.get(3));

    const auto s2 = syndrome(five, PauliOperator::parse("ZIIII"));
    CHECK(s2.bits.get(0));
    CHECK_FALSE(s2.bits.get(1));
    CHECK(s2.bits.get(2));
    CHECK_FALSE(s2.bits.get(3));

    // Stabilizer elements have zero syndrome and phase-0 membership.
    const auto m12 = five.generators()[0] * five.generators()[1];
    CHECK_FALSE(syndrome(five, m12).bits.any());
    REQUIRE(in_stabilizer(five, m12).has_value());
    CHECK(*in_stabilizer(five, m12) == 0);
    REQUIRE(in_stabilizer(five, PauliOperator::parse("-XZZXI")).has_value());
    CHECK(*in_stabilizer(five, PauliOperator::parse("-XZZXI")) == 2);
    CHECK_FALSE(in_stabilizer(five, PauliOperator::parse("XXXXX")).has_value());

    CHECK(in_normalizer(five, PauliOperator::parse("XXXXX")));
    CHECK_FALSE(in_normalizer(five, PauliOperator::parse("XIIII")));
    CHECK_THROWS_AS(syndrome(five, PauliOperator::parse("XI")), std::invalid_argument);
}

TEST_CASE("logical decomposition round trip") {
    std::mt19937_64 eng(77);
    for (const auto& name : {"steane7", "five_qubit", "eight_qubit", "distance2(6)"}) {
        const auto c = builtin_code(name);
        for (int iter = 0; iter < 50; ++iter) {
            LogicalDecomposition want;
            BitVec lx(c.k()), lz(c.k());
            for (std::size_t i = 0; i < c.k(); ++i) {
                lx.set(i, eng() & 1u);
                lz.set(i, eng() & 1u);
            }
            want.logical = PauliOperator(lx, lz, 0);
            want.phase = static_cast<unsigned>(eng() & 3u);
            want.stabilizer_part = BitVec(c.generators().size());
            for (std::size_t i = 0; i < c.generators().size(); ++i)
                want.stabilizer_part.set(i, eng() & 1u);

            const PauliOperator p = assemble_logical(c, want);
            const auto got = reduce_logical(c, p);
            CHECK(got.logical == want.logical);
            CHECK(got.phase == want.phase);
            CHECK(got.stabilizer_part == want.stabilizer_part);
            CHECK(assemble_logical(c, got) == p);
        }
    }

    const auto eight = builtin_code("eight_qubit");
    const auto dec = reduce_logical(eight, eight.logical_x()[0] * eight.generators()[0]);
    CHECK(dec.logical == PauliOperator::parse("XII"));
    CHECK(dec.phase == 0);
    CHECK(dec.stabilizer_part.get(0));

    CHECK_THROWS_AS(reduce_logical(builtin_code("five_qubit"), PauliOperator::parse("XIIII")),
                    std::invalid_argument);
}

TEST_CASE("distances") {
    CHECK(distance(builtin_code("five_qubit")) == 3);
    CHECK(distance(builtin_code("steane7")) == 3);
    CHECK(distance(builtin_code("eight_qubit")) == 3);
    CHECK(distance(builtin_code("distance2(4)")) == 2);
    CHECK(distance(builtin_code("distance2(6)")) == 2);
    CHECK(distance(builtin_code("distance2(8)")) == 2);

    CHECK_THROWS_AS(distance(tensor_power(builtin_code("five_qubit"), 3)),
                    std::invalid_argument);
    StabilizerCode no_logicals("", 1, {PauliOperator::parse("Z")}, {}, {});
    CHECK_THROWS_AS(distance(no_logicals), std::invalid_argument);
}

TEST_CASE("css structure and sector classification") {
    const auto steane = builtin_code("steane7");
    auto sectors = css_structure(steane);
    REQUIRE(sectors.has_value());
    CHECK(sectors->x_sector.size() == 3);
    CHECK(sectors->z_sector.size() == 3);
    for (const auto& g : sectors->x_sector) CHECK_FALSE(g.z().any());
    for (const auto& g : sectors->z_sector) CHECK_FALSE(g.x().any());

    CHECK_FALSE(css_structure(builtin_code("five_qubit")).has_value());
    CHECK_FALSE(css_structure(builtin_code("eight_qubit")).has_value());

    auto d4 = css_structure(builtin_code("distance2(4)"));
    REQUIRE(d4.has_value());
    CHECK(d4->x_sector.size() == 1);
    CHECK(d4->z_sector.size() == 1);

    const auto rep7 = doubly_even_self_dual_check(steane);
    CHECK(rep7.self_dual);
    CHECK(rep7.doubly_even);
    const auto rep4 = doubly_even_self_dual_check(builtin_code("distance2(4)"));
    CHECK(rep4.self_dual);
    CHECK(rep4.doubly_even);
    const auto rep6 = doubly_even_self_dual_check(builtin_code("distance2(6)"));
    CHECK(rep6.self_dual);
    CHECK_FALSE(rep6.doubly_even);
    CHECK_THROWS_AS(doubly_even_self_dual_check(builtin_code("five_qubit")),
                    std::invalid_argument);
}

TEST_CASE("derived logical frames are valid") {
    for (const auto& name : {"steane7", "five_qubit", "eight_qubit"}) {
        const auto c = builtin_code(name);
        auto [lx, lz] = derive_logicals(c.n(), c.generators());
        StabilizerCode derived("", c.n(), c.generators(), lx, lz);
        CHECK(validate_code(derived).ok());
        CHECK(distance(derived) == 3);
    }
    // With no generators the frame is the bare single-qubit basis per qubit.
    auto [lx, lz] = derive_logicals(2, {});
    StabilizerCode bare("", 2, {}, lx, lz);
    CHECK(validate_code(bare).ok());

    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        const auto c = random_code(5, 3, seed);
        CHECK(validate_code(c).ok());
    }
}

TEST_CASE("tensor powers") {
    const auto c = tensor_power(builtin_code("steane7"), 2);
    CHECK(c.name() == "steane7^2");
    CHECK(c.n() == 14);
    CHECK(c.k() == 2);
    REQUIRE(c.generators().size() == 12);
    CHECK(c.generators()[0].str() == "XXXXIIIIIIIIII");
    CHECK(c.generators()[6].str() == "IIIIIIIXXXXIII");
    CHECK(c.logical_x()[1].str() == "IIIIIIIIIIIXXX");
    CHECK(validate_code(c).ok());
    CHECK(css_structure(c).has_value());
}

TEST_CASE("stab format round trips") {
    for (const auto& name : {"steane7", "five_qubit", "eight_qubit", "distance2(6)"}) {
        const auto c = builtin_code(name);
        const auto loaded = load_stab(format_stab(c));
        CHECK_FALSE(loaded.signs_normalized);
        CHECK_FALSE(loaded.logicals_derived);
        CHECK(strings_of(loaded.code.generators()) == strings_of(c.generators()));
        CHECK(strings_of(loaded.code.logical_x()) == strings_of(c.logical_x()));
        CHECK(strings_of(loaded.code.logical_z()) == strings_of(c.logical_z()));
    }
}

TEST_CASE("stab load derives missing logicals") {
    const auto loaded = load_stab(
        "# generators only\n"
        "n=7 k=1\n"
        "M1: XXXXIII\n"
        "M2: XXIIXXI\n"
        "M3: XIXIXIX\n"
        "M4: ZZZZIII\n"
        "M5: ZZIIZZI\n"
        "M6: ZIZIZIZ\n");
    CHECK(loaded.logicals_derived);
    CHECK_FALSE(loaded.signs_normalized);
    CHECK(validate_code(loaded.code).ok());
    CHECK(distance(loaded.code) == 3);
}

TEST_CASE("stab load normalizes generator signs") {
    const auto loaded = load_stab(
        "n=5 k=1\n"
        "M1: -XZZXI\n"
        "M2: IXZZX\n"
        "M3: XIXZZ\n"
        "M4: ZXIXZ\n");
    CHECK(loaded.signs_normalized);
    for (const auto& g : loaded.code.generators()) CHECK(g.phase() == 0);
    CHECK(validate_code(loaded.code).ok());
    CHECK(distance(loaded.code) == 3);

    // Supplied logicals ride along through the conjugation.
    const auto with_frame = load_stab(
        "n=8 k=3\n"
        "M1: XXXXXXXX\n"
        "M2: -ZZZZZZZZ\n"
        "M3: XIXIZYZY\n"
        "M4: XIYZXIYZ\n"
        "M5: XZIYIYXZ\n"
        "X1: XXIIIZIZ\n"
        "X2: XIXZIIZI\n"
        "X3: XIIZXZII\n"
        "Z1: IZIZIZIZ\n"
        "Z2: IIZZIIZZ\n"
        "Z3: IIIIZZZZ\n");
    CHECK(with_frame.signs_normalized);
    for (const auto& g : with_frame.code.generators()) CHECK(g.phase() == 0);
    CHECK(validate_code(with_frame.code).ok());
}

TEST_CASE("stab parse errors") {
    auto expect_error = [](const char* text, const char* needle) {
        try {
            load_stab(text);
            FAIL("expected parse failure");
        } catch (const std::invalid_argument& e) {
            CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring(needle));
        }
    };
    expect_error("", "missing header");
    expect_error("n=2\nM1: XX\n", "expected header");
    expect_error("n=2 k=5\n", "k exceeds n");
    expect_error("n=2 k=1\nM1: XXX\n", "length does not match");
    expect_error("n=2 k=0\nM1: XX\nM1: ZZ\n", "bad generator index");
    expect_error("n=2 k=1\n", "expected n-k generator lines");
    expect_error("n=2 k=1\nM1: XX extra\n", "trailing text");
    expect_error("n=2 k=1\nM1: XA\n", "line 2");
    expect_error("n=2 k=1\nQ1: XX\n", "unknown line kind");
    expect_error("n=2 k=1\nM1: iXX\n", "does not square to +I");
    expect_error("n=2 k=1\nM1: XX\nX1: IX\n", "logical lines must be absent or complete");
    expect_error("n=3 k=1\nM1: XII\nM2: ZII\n", "generators anticommute");
    expect_error("n=3 k=1\nM1: XII\nM2: XII\n", "generators are dependent");
    expect_error("n=2 k=1\nM1: -II\nX1: XI\nZ1: ZI\n", "generator signs unsolvable");

    // Anticommuting generators load fine when a full frame is supplied; the
    // structural problem is validate_code's to report.
    const auto loose = load_stab("n=2 k=0\nM1: XI\nM2: ZI\n");
    CHECK_FALSE(validate_code(loose.code).ok());
}
