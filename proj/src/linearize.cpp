#include "cutpoint/linearize.hpp"

#include <cmath>

namespace cutpoint {

Vec<double> basis_coords(const CMatrix& rho, const HermitianBasis& basis) {
    if (rho.rows() != basis.dim) throw error("basis_coords: dimension mismatch");
    if (!is_hermitian(rho, k_hermitian_tol)) throw error("basis_coords: operator not Hermitian");
    Vec<double> x(basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i) {
        cxd overlap = hs_inner(basis.elements[i], rho);
        if (std::abs(overlap.imag()) > 1e-10)
            throw error("basis_coords: imaginary residue above tolerance");
        x[i] = overlap.real();
    }
    return x;
}

DMatrix channel_matrix(const Channel& e, const HermitianBasis& basis) {
    if (e.dim != basis.dim) throw error("channel_matrix: dimension mismatch");
    const std::size_t d = basis.size();
    DMatrix m(d, d);
    for (std::size_t j = 0; j < d; ++j) {
        Vec<double> col = basis_coords(apply_channel(e, basis.elements[j]), basis);
        for (std::size_t i = 0; i < d; ++i) m(i, j) = col[i];
    }
    return m;
}

LinearizationContext linearization_context(const Gqfa& q) {
    LinearizationContext ctx;
    ctx.basis = gell_mann_basis(q.dim(), /*traceless_only=*/false);
    ctx.channel_mat.reserve(q.channel.size());
    for (const Channel& e : q.channel) ctx.channel_mat.push_back(channel_matrix(e, ctx.basis));
    ctx.initial_coords = basis_coords(q.initial_state, ctx.basis);
    ctx.accept_overlaps.resize(ctx.basis.size());
    for (std::size_t i = 0; i < ctx.basis.size(); ++i) {
        cxd overlap = hs_inner(ctx.basis.elements[i], q.accept_projector);
        ctx.accept_overlaps[i] = overlap.real();
    }
    return ctx;
}

Gfa<double> qfa_to_gfa(const Gqfa& q) {
    ValidationReport rep = validate(q);
    if (!rep.ok()) throw validation_error("qfa_to_gfa: invalid machine\n" + rep.summary());

    LinearizationContext ctx = linearization_context(q);
    Gfa<double> g;
    g.alphabet = q.alphabet;
    g.initial = ctx.initial_coords;
    // Coordinates evolve as x -> M x (column convention); the row-vector
    // automaton uses the transpose.
    for (const DMatrix& m : ctx.channel_mat) g.transition.push_back(m.transpose());
    g.final_weights = ctx.accept_overlaps;
    g.cutpoint = q.cutpoint;
    return g;
}

}  // namespace cutpoint
