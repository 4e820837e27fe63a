#include "stoqbench/tridiagonal.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace stoq {

SymmetricTridiagonal build_tridiagonal(const ProblemInstance& instance, AnnealPoint s) {
    const int n = instance.n();
    SymmetricTridiagonal m;
    m.diag.resize(static_cast<std::size_t>(n) + 1);
    m.offdiag.resize(static_cast<std::size_t>(n));
    const double scale = instance.hopping_scale(s);
    for (int w = 0; w <= n; ++w) {
        m.diag[w] = instance.potential(w, s);
    }
    for (int w = 0; w < n; ++w) {
        const double product = static_cast<double>(w + 1) * static_cast<double>(n - w);
        m.offdiag[w] = -scale * std::sqrt(product);
    }
    return m;
}

namespace {

void check_finite(const SymmetricTridiagonal& m) {
    if (m.dim() < 2 || m.offdiag.size() + 1 != m.dim()) {
        throw std::invalid_argument("tridiagonal matrix needs dim >= 2");
    }
    for (double d : m.diag) {
        if (!std::isfinite(d)) throw std::runtime_error("non-finite diagonal entry");
    }
    for (double e : m.offdiag) {
        if (!std::isfinite(e)) throw std::runtime_error("non-finite off-diagonal entry");
    }
}

// Gershgorin interval containing the whole spectrum.
std::pair<double, double> gershgorin_bounds(const SymmetricTridiagonal& m) {
    const std::size_t dim = m.dim();
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t i = 0; i < dim; ++i) {
        double r = 0.0;
        if (i > 0) r += std::abs(m.offdiag[i - 1]);
        if (i + 1 < dim) r += std::abs(m.offdiag[i]);
        lo = std::min(lo, m.diag[i] - r);
        hi = std::max(hi, m.diag[i] + r);
    }
    return {lo, hi};
}

// k-th smallest eigenvalue (k = 1, 2, ...) by bisection on the Sturm count.
double bisect_kth(const SymmetricTridiagonal& m, int k, double lo, double hi) {
    const int max_iter = 20000;
    int iter = 0;
    while (true) {
        const double mid = 0.5 * (lo + hi);
        const double width = hi - lo;
        const double tol =
            std::max(1e-14 * std::max(std::abs(lo), std::abs(hi)),
                     4.0 * std::numeric_limits<double>::epsilon() * std::abs(mid));
        if (width <= tol || mid == lo || mid == hi) {
            return mid;
        }
        if (++iter > max_iter) {
            throw std::runtime_error("eigenvalue bisection failed to converge");
        }
        if (sturm_count_below(m, mid) >= k) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
}

}  // namespace

int sturm_count_below(const SymmetricTridiagonal& m, double lambda) {
    // LDL^T sign-change recurrence: q_{i} = d_i - lambda - e_{i-1}^2 / q_{i-1};
    // the number of negative q_i equals the number of eigenvalues < lambda.
    const std::size_t dim = m.dim();
    const double tiny = std::numeric_limits<double>::min();
    int count = 0;
    double q = m.diag[0] - lambda;
    if (q < 0.0) ++count;
    for (std::size_t i = 1; i < dim; ++i) {
        if (q == 0.0) q = tiny;
        const double e = m.offdiag[i - 1];
        q = m.diag[i] - lambda - e * e / q;
        if (q < 0.0) ++count;
    }
    return count;
}

EigenPair lowest_two_eigenvalues(const SymmetricTridiagonal& m) {
    check_finite(m);
    auto [lo, hi] = gershgorin_bounds(m);
    // Widen so the strict count is unambiguous at the endpoints.
    const double pad = 1e-12 * (std::abs(lo) + std::abs(hi) + 1.0);
    lo -= pad;
    hi += pad;
    const double e0 = bisect_kth(m, 1, lo, hi);
    const double e1 = bisect_kth(m, 2, e0, hi);
    return {e0, e1};
}

namespace {

// Solve (m - shift I) x = b via a Givens-rotation QR factorization of the
// shifted tridiagonal; stable without pivot bookkeeping. R has three bands.
std::vector<double> shifted_solve(const SymmetricTridiagonal& m, double shift,
                                  std::vector<double> b) {
    const std::size_t dim = m.dim();
    std::vector<double> d(dim), e(dim > 1 ? dim - 1 : 0), f(dim > 2 ? dim - 2 : 0, 0.0);
    for (std::size_t i = 0; i < dim; ++i) d[i] = m.diag[i] - shift;
    for (std::size_t i = 0; i + 1 < dim; ++i) e[i] = m.offdiag[i];

    for (std::size_t i = 0; i + 1 < dim; ++i) {
        double sub = m.offdiag[i];  // entry (i+1, i) before rotation
        const double r = std::hypot(d[i], sub);
        if (r == 0.0) continue;
        const double c = d[i] / r;
        const double s = sub / r;
        d[i] = r;
        const double e_i = e[i];
        const double d_next = d[i + 1];
        e[i] = c * e_i + s * d_next;
        d[i + 1] = -s * e_i + c * d_next;
        if (i + 2 < dim) {
            const double e_next = e[i + 1];
            f[i] = s * e_next;
            e[i + 1] = c * e_next;
        }
        const double bi = b[i];
        b[i] = c * bi + s * b[i + 1];
        b[i + 1] = -s * bi + c * b[i + 1];
    }

    const double floor_pivot =
        std::numeric_limits<double>::epsilon() * std::numeric_limits<double>::min();
    std::vector<double> x(dim);
    for (std::size_t ii = dim; ii-- > 0;) {
        double acc = b[ii];
        if (ii + 1 < dim) acc -= e[ii] * x[ii + 1];
        if (ii + 2 < dim) acc -= f[ii] * x[ii + 2];
        double piv = d[ii];
        if (std::abs(piv) < floor_pivot) {
            piv = piv < 0.0 ? -floor_pivot : floor_pivot;
        }
        x[ii] = acc / piv;
    }
    return x;
}

void normalize(std::vector<double>& v) {
    double norm = 0.0;
    for (double x : v) norm += x * x;
    norm = std::sqrt(norm);
    if (norm == 0.0) throw std::runtime_error("inverse iteration produced zero vector");
    double sum = 0.0;
    for (double x : v) sum += x;
    const double sign = sum < 0.0 ? -1.0 : 1.0;
    for (double& x : v) x = sign * x / norm;
}

}  // namespace

std::vector<double> ground_state_vector(const SymmetricTridiagonal& m) {
    const EigenPair eig = lowest_two_eigenvalues(m);
    const double gap = eig.e1 - eig.e0;
    const double scale = std::abs(eig.e0) + std::abs(eig.e1) + 1.0;
    // Shift slightly below E0 so the iteration contracts onto the ground
    // state even when the gap is small relative to the matrix norm.
    const double shift = eig.e0 - std::max(gap * 1e-2, 1e-13 * scale);

    std::vector<double> v(m.dim(), 1.0 / std::sqrt(static_cast<double>(m.dim())));
    for (int pass = 0; pass < 6; ++pass) {
        v = shifted_solve(m, shift, std::move(v));
        normalize(v);
        // Residual check: ||(m - e0) v||.
        double res = 0.0;
        for (std::size_t i = 0; i < m.dim(); ++i) {
            double r = (m.diag[i] - eig.e0) * v[i];
            if (i > 0) r += m.offdiag[i - 1] * v[i - 1];
            if (i + 1 < m.dim()) r += m.offdiag[i] * v[i + 1];
            res += r * r;
        }
        if (std::sqrt(res) <= 1e-10 * scale) break;
    }
    return v;
}

}  // namespace stoq
