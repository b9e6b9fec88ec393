#pragma once

#include "cutpoint/models.hpp"

namespace cutpoint {

// Everything needed to move a quantum machine into Hermitian-operator
// coordinates: the fixed full operator basis, one real matrix per symbol
// acting on coordinate vectors, the initial coordinates and the acceptance
// overlaps.
struct LinearizationContext {
    HermitianBasis basis;               // full basis, n^2 elements
    std::vector<DMatrix> channel_mat;   // per symbol: coords(E(rho)) = M . coords(rho)
    Vec<double> initial_coords;         // coords of the initial density
    Vec<double> accept_overlaps;        // Tr(accept_projector B_i)
};

// Coordinates of a Hermitian operator in the basis: (Tr(B_0 rho), ...).
// Throws if rho is not Hermitian or any coordinate has imaginary residue
// above 1e-10.
Vec<double> basis_coords(const CMatrix& rho, const HermitianBasis& basis);

// Matrix of the channel's induced real-linear action: column j holds
// basis_coords(E(B_j)).
DMatrix channel_matrix(const Channel& e, const HermitianBasis& basis);

LinearizationContext linearization_context(const Gqfa& q);

// n-state quantum machine to the n^2-state generalized automaton with the
// same word function and cutpoint.
Gfa<double> qfa_to_gfa(const Gqfa& q);

}  // namespace cutpoint
