// Survey which one-qubit gates act transversally on a stabilizer code when
// applied bitwise, then try the two-block CNOT and four-block G4 staples.
// Takes a built-in code name or a .stab file path; defaults to five_qubit.

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "stabkit/code.hpp"
#include "stabkit/transversal.hpp"

using namespace stabkit;

namespace {

StabilizerCode load_argument(const std::string& arg) {
    if (arg.size() > 5 && arg.compare(arg.size() - 5, 5, ".stab") == 0) {
        std::ifstream in(arg);
        if (!in) throw std::runtime_error("cannot open " + arg);
        std::ostringstream buf;
        buf << in.rdbuf();
        return load_stab(buf.str()).code;
    }
    return builtin_code(arg);
}

void report_block_gate(const StabilizerCode& code, const char* gate) {
    const TransversalVerdict v = check_transversal(code, bitwise_candidate(gate));
    if (v.valid) {
        std::printf("bitwise %s: valid\n", gate);
        return;
    }
    std::printf("bitwise %s: invalid (block %zu, generator M%zu: %s)\n", gate,
                v.witness->block + 1, v.witness->generator + 1, v.witness->reason.c_str());
}

}  // namespace

int main(int argc, char** argv) {
    const std::string arg = argc > 1 ? argv[1] : "five_qubit";
    try {
        const StabilizerCode code = load_argument(arg);
        const std::string& label = code.name().empty() ? arg : code.name();
        std::printf("code %s: n=%zu k=%zu\n", label.c_str(), code.n(), code.k());
        for (std::size_t i = 0; i < code.generators().size(); ++i)
            std::printf("  M%zu: %s\n", i + 1, code.generators()[i].str().c_str());

        const auto hits = search_single_qubit_transversal(code);
        std::printf("single-qubit bitwise survey: %zu of 24 valid\n", hits.size());
        for (const auto& hit : hits) {
            std::printf("  %-8s", hit.name.c_str());
            for (std::size_t j = 0; j < code.k(); ++j)
                std::printf("  X%zu -> %s, Z%zu -> %s", j + 1,
                            hit.verdict.logical->x_image(j).str().c_str(), j + 1,
                            hit.verdict.logical->z_image(j).str().c_str());
            std::printf("\n");
        }

        report_block_gate(code, "CNOT");
        std::printf("x/z sector split: %s\n", css_structure(code) ? "yes" : "no");
        report_block_gate(code, "G4");
        return 0;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
