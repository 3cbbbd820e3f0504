// 2N x 2N Hopfield-Bogoliubov matrix [[A, B], [-B*, -A*]] built from a
// QuadraticHamiltonian, with structural checks and an LU determinant.

#pragma once

#include "hbtk/model.hpp"

#include <iosfwd>

namespace hbtk {

struct HBMatrix {
    int n_modes{0};
    Eigen::MatrixXcd m;

    Eigen::Index dim() const { return m.rows(); }
};

// Throws std::invalid_argument if validate(h) is non-empty.
HBMatrix build(const QuadraticHamiltonian& h);

// Max-abs-entry norm of S conj(M) S + M where S swaps the particle and hole
// blocks.  Exactly zero (bit-exact) for any built matrix; nonzero values
// measure how far a hand-edited matrix is from the HB block structure.
double symmetry_residual(const HBMatrix& m);

// det(M) by LU with partial pivoting.  The paired spectrum forces a real
// determinant (det = prod over pairs of -E^2); throws std::runtime_error
// when |Im det| > 1e-6 * (1 + |det|).
double determinant(const HBMatrix& m);

// CSV dump, header "row,col,re,im".
void dump_csv(const HBMatrix& m, std::ostream& os);

}  // namespace hbtk
