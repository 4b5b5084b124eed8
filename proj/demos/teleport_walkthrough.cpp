// Walk through the teleportation protocol: print the measured circuit and
// its tracked logical rows, verify it over a few seeds, then push a random
// one-qubit state through the dense runner and report the output fidelity.

#include <cmath>
#include <complex>
#include <cstdio>
#include <random>
#include <vector>

#include "stabkit/clifford.hpp"
#include "stabkit/dense_sim.hpp"
#include "stabkit/protocols.hpp"
#include "stabkit/unitary.hpp"

using namespace stabkit;

int main() {
    const Protocol tp = make_protocol("teleport");
    std::printf("%s: %s\n\n%s\n", tp.name.c_str(), tp.summary.c_str(),
                format_circ(tp.circuit).c_str());
    for (std::size_t j = 0; j < tp.tracked.size(); ++j)
        std::printf("  %s: %s -> %s\n", tp.tracked_names[j].c_str(), tp.tracked[j].str().c_str(),
                    tp.targets[j].str().c_str());

    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const ProtocolResult res = run_protocol(tp, seed);
        std::printf("seed %llu: %s (%s)\n", static_cast<unsigned long long>(seed),
                    res.pass ? "pass" : "FAIL", res.method.c_str());
        if (!res.pass) {
            std::fprintf(stderr, "error: %s\n", res.note.c_str());
            return 1;
        }
    }

    // Dense spot check: teleport a random stabilizer state from wire 1 to
    // wire 3 and compare the reduced output against the input.
    double worst = 1.0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const DenseMatrix in = to_unitary(random_clifford(1, seed));
        std::vector<cplx> psi(8, 0.0);
        psi[0] = in.at(0, 0);
        psi[4] = in.at(1, 0);
        std::mt19937_64 rng(seed);
        const DenseRun run = run_dense(tp.circuit, std::move(psi), rng);
        cplx rho[2][2] = {{0.0, 0.0}, {0.0, 0.0}};
        for (std::size_t env = 0; env < 4; ++env)
            for (std::size_t i = 0; i < 2; ++i)
                for (std::size_t j = 0; j < 2; ++j)
                    rho[i][j] += run.state[env * 2 + i] * std::conj(run.state[env * 2 + j]);
        cplx fid = 0.0;
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) fid += std::conj(in.at(i, 0)) * rho[i][j] * in.at(j, 0);
        worst = std::min(worst, fid.real());
    }
    std::printf("dense output fidelity over 10 random inputs: >= %.15f\n", worst);
    return worst > 1.0 - 1e-10 ? 0 : 1;
}
