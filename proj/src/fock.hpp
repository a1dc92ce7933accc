// fock.hpp — truncated-Fock-space states and operators.
//
// States are stored mode-major (leftmost mode slowest-varying), so a tensor
// product is a plain Kronecker product of amplitude vectors. Construction
// renormalizes and records the pre-normalization tail mass so convergence
// tests can assert on the truncation quality.

#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "errors.hpp"

namespace ffd {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using complexd = std::complex<double>;

struct FockVector {
    std::vector<int> dims; // per-mode truncation, each >= 1
    Vector amps;           // length = product of dims, unit 2-norm
    double tail_mass = 0.0;

    int total_dim() const;
};

// Default gate on the coherent tail mass left outside the truncated basis.
inline constexpr double kDefaultTailTol = 1e-10;

// Tail mass sum_{n >= dim} e^{-|alpha|^2} |alpha|^{2n} / n!.
double coherent_tail_mass(complexd alpha, int dim);

// Smallest dim whose coherent tail mass is below tail_tol.
int minimal_coherent_dim(complexd alpha, double tail_tol = kDefaultTailTol);

// <n-1| a |n> = sqrt(n). Throws std::invalid_argument for dim < 2.
Matrix lowering_operator(int dim);

inline Matrix raising_operator(int dim) { return lowering_operator(dim).adjoint(); }
Matrix number_operator(int dim);

// Coherent state D(alpha)|0>, amplitudes alpha^n / sqrt(n!) renormalized.
// Throws truncation_error (naming the minimal adequate dim) when the tail
// mass is not below tail_tol.
FockVector coherent_state(complexd alpha, int dim, double tail_tol = kDefaultTailTol);

// exp(alpha a^dag - alpha^* a), built by diagonalizing the Hermitian matrix
// i (alpha a^dag - alpha^* a) and exponentiating its eigenvalues.
Matrix displacement_matrix(complexd alpha, int dim, double tail_tol = kDefaultTailTol);

// Column n of the displacement matrix, renormalized.
FockVector displaced_fock(complexd alpha, int n, int dim, double tail_tol = kDefaultTailTol);

// Kronecker product of states, mode-major order.
FockVector tensor(const std::vector<FockVector>& states);

// Product-space operator with `ops[k]` acting on mode `modes[k]` and
// identities elsewhere. Dense; intended for small dims and tests.
Matrix embed_operator(const std::vector<int>& dims, const std::vector<int>& modes,
                      const std::vector<Matrix>& ops);

// <a|b> and |<a|b>|^2. Throw std::invalid_argument on dims mismatch.
complexd overlap(const FockVector& a, const FockVector& b);
double fidelity(const FockVector& a, const FockVector& b);
inline double infidelity(const FockVector& a, const FockVector& b) {
    return 1.0 - fidelity(a, b);
}

// Unit-norm copy; propagation results carry their norm drift and must be
// normalized before fidelity comparisons.
FockVector normalized_copy(const FockVector& v);

} // namespace ffd
