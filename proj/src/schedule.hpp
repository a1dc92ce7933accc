// schedule.hpp — time-dependent Hamiltonians as sums of ladder monomials.
//
// Every Hamiltonian in this library is a sum of terms
//   coeff(t) * (factor on mode m1) * (factor on mode m2) * ...
// where each factor is a single matrix diagonal in the number basis (a, a^dag,
// a^2, a^dag a, ...). Keeping the factors in diagonal form lets the apply
// kernels run in O(total dim) per term without materializing product-space
// matrices. Hermiticity is arranged by the builders, which emit drive terms
// in conjugate pairs; tests check the assembled dense matrix.

#pragma once

#include <functional>
#include <vector>

#include "fock.hpp"

namespace ffd {

// One matrix diagonal on one mode: entries M(r, r + offset) = vals[min(r, r+offset)].
struct DiagFactor {
    int mode = 0;
    int offset = 0;            // column - row
    Eigen::VectorXd vals;      // length = dim - |offset|

    Matrix to_matrix(int dim) const;
};

// Canonical factors. `dim` is the truncation of the target mode.
DiagFactor f_lower(int mode, int dim);   // a
DiagFactor f_raise(int mode, int dim);   // a^dag
DiagFactor f_number(int mode, int dim);  // a^dag a
DiagFactor f_lower2(int mode, int dim);  // a^2
DiagFactor f_raise2(int mode, int dim);  // a^dag^2
DiagFactor f_kerr(int mode, int dim);    // a^dag^2 a^2

using CoeffFn = std::function<complexd(double)>;

struct ScheduleTerm {
    CoeffFn coeff;
    std::vector<DiagFactor> factors; // at most one per mode; empty = scalar term
};

struct HamiltonianSchedule {
    std::vector<int> dims;
    std::vector<ScheduleTerm> terms;
    double t_begin = 0.0;
    double t_end = 0.0;

    int total_dim() const;
    // Dense assembly at time t; intended for tests and small dims.
    Matrix dense_at(double t) const;
};

// H(t) = delta(t) a^dag a - [drive(t) a^dag + conj(drive(t)) a] + scalar(t),
// the rotating-frame driven resonator. `scalar` may be null.
HamiltonianSchedule resonator_hamiltonian(std::function<double(double)> delta,
                                          CoeffFn drive, int dim,
                                          double t_begin, double t_end,
                                          std::function<double(double)> scalar = {});

} // namespace ffd
