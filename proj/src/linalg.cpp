#include "cutpoint/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace cutpoint {

cxd hs_inner(const CMatrix& a, const CMatrix& b) {
    if (!a.square() || !b.square() || a.rows() != b.rows())
        throw error("hs_inner: operators must be square and of equal dimension");
    // Tr(A^dagger B) = sum_{r,c} conj(a_rc) b_rc
    cxd acc{};
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) acc += std::conj(a(r, c)) * b(r, c);
    return acc;
}

double hermitian_residual(const CMatrix& m) {
    if (!m.square()) return std::numeric_limits<double>::infinity();
    double worst = 0.0;
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            worst = std::max(worst, std::abs(m(r, c) - std::conj(m(c, r))));
    return worst;
}

bool is_hermitian(const CMatrix& m, double tol) { return m.square() && hermitian_residual(m) <= tol; }

HermitianBasis gell_mann_basis(std::size_t n, bool traceless_only) {
    if (n < 2) throw error("gell_mann_basis: dimension must be at least 2");
    HermitianBasis basis;
    basis.dim = n;
    basis.traceless_only = traceless_only;

    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    if (!traceless_only) {
        CMatrix id = CMatrix::identity(n);
        basis.elements.push_back((cxd(1.0 / std::sqrt(double(n)), 0.0)) * id);
    }
    // symmetric pairs: (|j><k| + |k><j|) / sqrt(2), j < k
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = j + 1; k < n; ++k) {
            CMatrix m(n, n);
            m(j, k) = cxd(inv_sqrt2, 0.0);
            m(k, j) = cxd(inv_sqrt2, 0.0);
            basis.elements.push_back(m);
        }
    // antisymmetric pairs: (-i|j><k| + i|k><j|) / sqrt(2), j < k
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = j + 1; k < n; ++k) {
            CMatrix m(n, n);
            m(j, k) = cxd(0.0, -inv_sqrt2);
            m(k, j) = cxd(0.0, inv_sqrt2);
            basis.elements.push_back(m);
        }
    // diagonal: diag(1,...,1,-l,0,...) / sqrt(l(l+1)), l = 1..n-1
    for (std::size_t l = 1; l < n; ++l) {
        CMatrix m(n, n);
        const double scale = 1.0 / std::sqrt(double(l) * double(l + 1));
        for (std::size_t j = 0; j < l; ++j) m(j, j) = cxd(scale, 0.0);
        m(l, l) = cxd(-double(l) * scale, 0.0);
        basis.elements.push_back(m);
    }
    return basis;
}

namespace {

double offdiag_mass_sq(const CMatrix& m) {
    double acc = 0.0;
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            if (r != c) acc += std::norm(m(r, c));
    return acc;
}

// Fix the global phase of each eigenvector: largest-magnitude component made
// real and positive. Keeps serialized eigen-derived data deterministic.
void normalize_phases(CMatrix& vectors) {
    const std::size_t n = vectors.rows();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t pivot = 0;
        double best = -1.0;
        for (std::size_t r = 0; r < n; ++r) {
            double a = std::abs(vectors(r, c));
            if (a > best) {
                best = a;
                pivot = r;
            }
        }
        if (best <= 0.0) continue;
        cxd phase = vectors(pivot, c) / best;
        for (std::size_t r = 0; r < n; ++r) vectors(r, c) /= phase;
    }
}

}  // namespace

EigenSystem hermitian_eigensystem(const CMatrix& h, double tol) {
    if (!h.square()) throw error("hermitian_eigensystem: matrix not square");
    if (hermitian_residual(h) > tol) throw error("hermitian_eigensystem: matrix not Hermitian");
    const std::size_t n = h.rows();

    CMatrix a = h;
    // Symmetrize exactly so rotations see a perfectly Hermitian matrix.
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = r + 1; c < n; ++c) {
            cxd avg = 0.5 * (a(r, c) + std::conj(a(c, r)));
            a(r, c) = avg;
            a(c, r) = std::conj(avg);
        }
        a(r, r) = cxd(a(r, r).real(), 0.0);
    }
    CMatrix vecs = CMatrix::identity(n);

    const double fro = frobenius_norm(a);
    const double stop_sq = std::pow(1e-14 * std::max(1.0, fro), 2);

    for (int sweep = 0; sweep < 100 && offdiag_mass_sq(a) > stop_sq; ++sweep) {
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cxd apq = a(p, q);
                const double r = std::abs(apq);
                if (r == 0.0) continue;
                // Unitary plane rotation annihilating a(p,q): phase from
                // arg(a_pq), angle from tan(2 theta) = 2|a_pq| / (a_pp - a_qq).
                const cxd phase = apq / r;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double theta = 0.5 * std::atan2(2.0 * r, app - aqq);
                const double c = std::cos(theta);
                const double s = std::sin(theta);
                const cxd u_pq = -s * phase;  // rotation column entries
                const cxd u_qp = s * std::conj(phase);

                // A <- V^dagger A V applied as row and column updates.
                for (std::size_t j = 0; j < n; ++j) {
                    const cxd apj = a(p, j);
                    const cxd aqj = a(q, j);
                    a(p, j) = c * apj + std::conj(u_qp) * aqj;
                    a(q, j) = std::conj(u_pq) * apj + c * aqj;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const cxd aip = a(i, p);
                    const cxd aiq = a(i, q);
                    a(i, p) = c * aip + u_qp * aiq;
                    a(i, q) = u_pq * aip + c * aiq;
                    const cxd vip = vecs(i, p);
                    const cxd viq = vecs(i, q);
                    vecs(i, p) = c * vip + u_qp * viq;
                    vecs(i, q) = u_pq * vip + c * viq;
                }
                a(p, q) = cxd(0.0, 0.0);
                a(q, p) = cxd(0.0, 0.0);
                a(p, p) = cxd(a(p, p).real(), 0.0);
                a(q, q) = cxd(a(q, q).real(), 0.0);
            }
        }
    }
    if (offdiag_mass_sq(a) > stop_sq) throw error("hermitian_eigensystem: Jacobi sweeps did not converge");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a(i, i).real() > a(j, j).real(); });

    EigenSystem es;
    es.values.resize(n);
    es.vectors = CMatrix(n, n);
    for (std::size_t c = 0; c < n; ++c) {
        es.values[c] = a(order[c], order[c]).real();
        for (std::size_t r = 0; r < n; ++r) es.vectors(r, c) = vecs(r, order[c]);
    }
    normalize_phases(es.vectors);
    return es;
}

CMatrix eigen_reconstruct(const EigenSystem& es) {
    const std::size_t n = es.values.size();
    CMatrix out(n, n);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c)
                out(r, c) += es.values[k] * es.vectors(r, k) * std::conj(es.vectors(c, k));
    return out;
}

double operator_norm(const CMatrix& h) {
    EigenSystem es = hermitian_eigensystem(h);
    double best = 0.0;
    for (double v : es.values) best = std::max(best, std::abs(v));
    return best;
}

bool is_density(const CMatrix& rho, double tol) {
    if (!rho.square()) return false;
    if (hermitian_residual(rho) > tol) return false;
    EigenSystem es = hermitian_eigensystem(rho, std::max(tol, k_hermitian_tol));
    double min_eig = es.values.empty() ? 0.0 : es.values.back();
    if (min_eig < -tol) return false;
    double tr = 0.0;
    for (double v : es.values) tr += v;
    return std::abs(tr - 1.0) <= tol;
}

}  // namespace cutpoint
