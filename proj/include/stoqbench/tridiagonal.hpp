#pragma once

#include <cstddef>
#include <vector>

#include "stoqbench/model.hpp"

namespace stoq {

/// Symmetric tridiagonal matrix stored as its diagonal and single
/// subdiagonal. For symmetric-subspace Hamiltonians offdiag[w] is the
/// hopping amplitude -scale * sqrt((w+1)(n-w)), strictly negative.
struct SymmetricTridiagonal {
    std::vector<double> diag;
    std::vector<double> offdiag;  // offdiag.size() == diag.size() - 1

    std::size_t dim() const { return diag.size(); }
};

/// (n+1)-dimensional symmetric-subspace Hamiltonian at fixed s:
/// diag[w] = V(w, s), offdiag[w] = -hopping_scale * sqrt((w+1)(n-w)).
/// The transverse-field hopping contributes no diagonal in this basis.
/// Products (w+1)(n-w) are formed in double precision before the square
/// root, exact up to n ~ 9e7.
SymmetricTridiagonal build_tridiagonal(const ProblemInstance& instance, AnnealPoint s);

/// Number of eigenvalues strictly below lambda, from the Sturm sign-change
/// recurrence; O(dim) time, O(1) extra space.
int sturm_count_below(const SymmetricTridiagonal& m, double lambda);

struct EigenPair {
    double e0;
    double e1;
};

/// Two smallest eigenvalues by Sturm-sequence bisection inside Gershgorin
/// bounds. Resolves each eigenvalue essentially to machine precision
/// (interval width <= max(1e-14 * |bound|, 4 ulp)); throws on non-finite
/// input or if the bracket fails to collapse within the iteration cap.
EigenPair lowest_two_eigenvalues(const SymmetricTridiagonal& m);

/// Ground-state eigenvector by shifted inverse iteration (Givens-QR solves),
/// normalized to unit 2-norm with nonnegative dominant sign.
std::vector<double> ground_state_vector(const SymmetricTridiagonal& m);

}  // namespace stoq
