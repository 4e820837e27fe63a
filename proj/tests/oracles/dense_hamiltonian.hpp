#pragma once

// Test-only dense 2^n x 2^n Hamiltonian built from explicit Pauli operators
// in the computational basis: H = -hop_scale * sum_j X_j + V(sum_j zbar_j),
// where zbar = (1 - Z)/2 counts ones. The two lowest eigenvalues of this
// matrix are the oracle for the (n+1)-dimensional symmetric-subspace
// reduction.

#include <bit>
#include <cstdint>
#include <vector>

#include "dense_eig.hpp"
#include "stoqbench/model.hpp"

namespace oracle {

inline Matrix dense_hamiltonian(const stoq::ProblemInstance& instance, double s) {
    const int n = instance.n();
    const std::size_t dim = std::size_t{1} << n;
    const double hop = instance.hopping_scale(stoq::AnnealPoint(s));
    Matrix h(dim, std::vector<double>(dim, 0.0));
    for (std::size_t x = 0; x < dim; ++x) {
        const int weight = std::popcount(static_cast<std::uint64_t>(x));
        h[x][x] = instance.potential(weight, stoq::AnnealPoint(s));
        for (int j = 0; j < n; ++j) {
            const std::size_t y = x ^ (std::size_t{1} << j);
            h[x][y] -= hop;
        }
    }
    return h;
}

/// Ground energy of the full 2^n Hamiltonian (all symmetry sectors).
inline double dense_ground_energy(const stoq::ProblemInstance& instance, double s) {
    return symmetric_eigenvalues(dense_hamiltonian(instance, s))[0];
}

/// Two lowest eigenvalues of the dense Hamiltonian restricted to the
/// permutation-symmetric sector. The basis |phi_w> (uniform superpositions
/// of fixed-weight strings) is enumerated directly from bit strings, so the
/// projected block tests the (n+1)-dimensional reduction without assuming
/// its matrix elements. Note the full spectrum's first excited state can sit
/// below this block's: the adiabatic gap lives inside the sector.
inline std::pair<double, double> dense_symmetric_block_lowest_two(
    const stoq::ProblemInstance& instance, double s) {
    const int n = instance.n();
    const std::size_t dim = std::size_t{1} << n;
    const Matrix h = dense_hamiltonian(instance, s);

    std::vector<double> norm(n + 1, 0.0);  // sqrt(binomial(n, w))
    for (std::size_t x = 0; x < dim; ++x) {
        ++norm[std::popcount(static_cast<std::uint64_t>(x))];
    }
    for (double& v : norm) v = std::sqrt(v);

    Matrix block(n + 1, std::vector<double>(n + 1, 0.0));
    for (std::size_t x = 0; x < dim; ++x) {
        const int wx = std::popcount(static_cast<std::uint64_t>(x));
        block[wx][wx] += h[x][x];
        for (int j = 0; j < n; ++j) {
            const std::size_t y = x ^ (std::size_t{1} << j);
            const int wy = std::popcount(static_cast<std::uint64_t>(y));
            block[wx][wy] += h[x][y];
        }
    }
    for (int a = 0; a <= n; ++a) {
        for (int b = 0; b <= n; ++b) {
            block[a][b] /= norm[a] * norm[b];
        }
    }

    const std::vector<double> eigs = symmetric_eigenvalues(std::move(block));
    return {eigs[0], eigs[1]};
}

}  // namespace oracle
