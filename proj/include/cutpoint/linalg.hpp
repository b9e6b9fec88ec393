#pragma once

#include <cstddef>
#include <vector>

#include "cutpoint/matrix.hpp"

namespace cutpoint {

inline constexpr double k_hermitian_tol = 1e-10;

// Orthonormal basis of the real space of Hermitian n x n operators under the
// Hilbert-Schmidt inner product. Enumeration order is fixed: symmetric pairs
// (lexicographic), then antisymmetric pairs, then diagonal elements; the full
// basis prepends I/sqrt(n) as element 0. Serialized data derived from a basis
// is therefore reproducible.
struct HermitianBasis {
    std::size_t dim = 0;
    bool traceless_only = false;
    std::vector<CMatrix> elements;

    std::size_t size() const { return elements.size(); }
};

// Tr(A^dagger B). Hermitian arguments give a real result.
cxd hs_inner(const CMatrix& a, const CMatrix& b);

// max_{r,c} |m(r,c) - conj(m(c,r))|
double hermitian_residual(const CMatrix& m);

bool is_hermitian(const CMatrix& m, double tol = k_hermitian_tol);

// Generalized Gell-Mann construction; n >= 2. traceless_only drops the
// identity component and yields n^2 - 1 elements instead of n^2.
HermitianBasis gell_mann_basis(std::size_t n, bool traceless_only);

struct EigenSystem {
    std::vector<double> values;  // descending
    CMatrix vectors;             // unit eigenvectors as columns, same order
};

// Spectral decomposition of a Hermitian matrix by cyclic complex Jacobi
// rotations; converges to off-diagonal Frobenius mass below 1e-14 (relative).
// Throws on non-Hermitian input (residual above tol).
EigenSystem hermitian_eigensystem(const CMatrix& h, double tol = k_hermitian_tol);

// sum_i values[i] |v_i><v_i|
CMatrix eigen_reconstruct(const EigenSystem& es);

// max |eigenvalue| of a Hermitian matrix.
double operator_norm(const CMatrix& h);

// Hermitian within tol, min eigenvalue >= -tol, |Tr - 1| <= tol.
bool is_density(const CMatrix& rho, double tol);

}  // namespace cutpoint
