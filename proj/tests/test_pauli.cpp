#include <catch2/catch_amalgamated.hpp>

#include "matrix_oracle.hpp"
#include "stabkit/pauli.hpp"

using stabkit::PauliOperator;
using namespace oracle;

namespace {

PauliOperator nth_pauli(std::size_t n, unsigned phase, std::size_t pattern) {
    PauliOperator p(n);
    p.set_phase(phase);
    for (std::size_t q = 0; q < n; ++q) p.set_letter(q, "IXZY"[(pattern >> (2 * q)) & 3u]);
    return p;
}

}  // namespace

TEST_CASE("product and commutation agree with explicit matrices") {
    for (std::size_t n = 1; n <= 2; ++n) {
        const std::size_t patterns = std::size_t{1} << (2 * n);
        std::vector<PauliOperator> ops;
        std::vector<Mat> mats;
        for (unsigned phase = 0; phase < 4; ++phase)
            for (std::size_t pat = 0; pat < patterns; ++pat) {
                ops.push_back(nth_pauli(n, phase, pat));
                mats.push_back(pauli_matrix(ops.back()));
            }
        for (std::size_t i = 0; i < ops.size(); ++i) {
            for (std::size_t j = 0; j < ops.size(); ++j) {
                const Mat ab = mul(mats[i], mats[j]);
                REQUIRE(exact_eq(pauli_matrix(ops[i] * ops[j]), ab));
                const Mat ba = mul(mats[j], mats[i]);
                const bool commute = exact_eq(ab, ba);
                REQUIRE(ops[i].commutes_with(ops[j]) == commute);
            }
        }
    }
}

TEST_CASE("hermitian, y count, and sigma sign against matrices") {
    for (unsigned phase = 0; phase < 4; ++phase) {
        for (std::size_t pat = 0; pat < 16; ++pat) {
            const PauliOperator p = nth_pauli(2, phase, pat);
            const Mat m = pauli_matrix(p);
            REQUIRE(p.hermitian() == exact_eq(mul(m, m), eye(4)));
            if (p.hermitian()) {
                // sigma form: p = sign * product of sigma_x/sigma_y/sigma_z.
                Mat sig = eye(1);
                for (std::size_t q = 0; q < 2; ++q) {
                    Mat s = letter_matrix(p.letter(q));
                    if (p.letter(q) == 'Y')
                        for (auto& v : s.a) v *= cplx{0, 1};
                    sig = kron(sig, s);
                }
                for (auto& v : sig.a) v *= static_cast<double>(p.sigma_sign());
                REQUIRE(exact_eq(m, sig));
            }
        }
    }
}

TEST_CASE("inverse multiplies to the identity") {
    for (unsigned phase = 0; phase < 4; ++phase)
        for (std::size_t pat = 0; pat < 16; ++pat) {
            const PauliOperator p = nth_pauli(2, phase, pat);
            const PauliOperator prod = p * p.inverse();
            REQUIRE(prod.phase() == 0);
            REQUIRE(prod.is_identity());
        }
}

TEST_CASE("parse accepts sign prefixes and round-trips") {
    REQUIRE(PauliOperator::parse("XZ").str() == "XZ");
    REQUIRE(PauliOperator::parse("+XZ").str() == "XZ");
    REQUIRE(PauliOperator::parse("iY").str() == "iY");
    REQUIRE(PauliOperator::parse("-IZ").str() == "-IZ");
    REQUIRE(PauliOperator::parse("-iYX").str() == "-iYX");
    for (unsigned phase = 0; phase < 4; ++phase)
        for (std::size_t pat = 0; pat < 16; ++pat) {
            const PauliOperator p = nth_pauli(2, phase, pat);
            REQUIRE(PauliOperator::parse(p.str()) == p);
        }
    REQUIRE_THROWS_AS(PauliOperator::parse(""), std::invalid_argument);
    REQUIRE_THROWS_AS(PauliOperator::parse("-"), std::invalid_argument);
    REQUIRE_THROWS_AS(PauliOperator::parse("XA"), std::invalid_argument);
    REQUIRE_THROWS_AS(PauliOperator::parse("ix"), std::invalid_argument);
}

TEST_CASE("letter access matches the x/z bit planes") {
    const PauliOperator p = PauliOperator::parse("iXYZI");
    REQUIRE(p.phase() == 1);
    REQUIRE(p.letter(0) == 'X');
    REQUIRE(p.letter(1) == 'Y');
    REQUIRE(p.letter(2) == 'Z');
    REQUIRE(p.letter(3) == 'I');
    REQUIRE(p.x_bit(0));
    REQUIRE(!p.z_bit(0));
    REQUIRE(p.x_bit(1));
    REQUIRE(p.z_bit(1));
    REQUIRE(p.y_count() == 1);
    REQUIRE(p.weight() == 3);
}

TEST_CASE("embedded places letters and keeps the phase") {
    const PauliOperator p = PauliOperator::parse("-XY");
    const PauliOperator wide = p.embedded(5, std::vector<std::size_t>{3, 1});
    REQUIRE(wide.str() == "-IYIXI");
    const PauliOperator shifted = p.embedded(4, 2);
    REQUIRE(shifted.str() == "-IIXY");
    REQUIRE_THROWS_AS(p.embedded(5, std::vector<std::size_t>{1, 1}), std::invalid_argument);
    REQUIRE_THROWS_AS(p.embedded(1, std::vector<std::size_t>{0, 1}), std::invalid_argument);
}

TEST_CASE("anticommutation basics in the XZ convention") {
    const PauliOperator x = PauliOperator::parse("X");
    const PauliOperator z = PauliOperator::parse("Z");
    const PauliOperator y = PauliOperator::parse("Y");
    REQUIRE((x * z).str() == "Y");
    REQUIRE((z * x).str() == "-Y");
    REQUIRE((y * y).str() == "-I");
    REQUIRE(!x.commutes_with(z));
    REQUIRE(x.commutes_with(x));
    // Y = XZ squares to -1, so Y itself is not Hermitian; iY is.
    REQUIRE(!y.hermitian());
    REQUIRE(PauliOperator::parse("iY").hermitian());
}
