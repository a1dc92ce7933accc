#include "schedule.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace ffd {

Matrix DiagFactor::to_matrix(int dim) const {
    if (vals.size() != dim - std::abs(offset)) {
        throw std::invalid_argument("DiagFactor: vals length does not match dim");
    }
    Matrix m = Matrix::Zero(dim, dim);
    for (int k = 0; k < vals.size(); ++k) {
        const int row = offset >= 0 ? k : k - offset;
        m(row, row + offset) = vals(k);
    }
    return m;
}

namespace {

DiagFactor make_factor(int mode, int dim, int offset,
                       const std::function<double(int)>& val_of_min_index) {
    if (dim < std::abs(offset) + 1) {
        throw std::invalid_argument("factor: dim too small for offset");
    }
    DiagFactor f;
    f.mode = mode;
    f.offset = offset;
    f.vals.resize(dim - std::abs(offset));
    for (int k = 0; k < f.vals.size(); ++k) {
        f.vals(k) = val_of_min_index(k);
    }
    return f;
}

} // namespace

DiagFactor f_lower(int mode, int dim) {
    // <n-1| a |n> = sqrt(n); min index m corresponds to n = m + 1.
    return make_factor(mode, dim, +1, [](int m) { return std::sqrt(m + 1.0); });
}

DiagFactor f_raise(int mode, int dim) {
    return make_factor(mode, dim, -1, [](int m) { return std::sqrt(m + 1.0); });
}

DiagFactor f_number(int mode, int dim) {
    return make_factor(mode, dim, 0, [](int m) { return static_cast<double>(m); });
}

DiagFactor f_lower2(int mode, int dim) {
    return make_factor(mode, dim, +2,
                       [](int m) { return std::sqrt((m + 1.0) * (m + 2.0)); });
}

DiagFactor f_raise2(int mode, int dim) {
    return make_factor(mode, dim, -2,
                       [](int m) { return std::sqrt((m + 1.0) * (m + 2.0)); });
}

DiagFactor f_kerr(int mode, int dim) {
    return make_factor(mode, dim, 0,
                       [](int m) { return static_cast<double>(m) * (m - 1.0); });
}

int HamiltonianSchedule::total_dim() const {
    int n = 1;
    for (int d : dims) n *= d;
    return n;
}

Matrix HamiltonianSchedule::dense_at(double t) const {
    const int n = total_dim();
    Matrix h = Matrix::Zero(n, n);
    for (const ScheduleTerm& term : terms) {
        Matrix part;
        if (term.factors.empty()) {
            part = Matrix::Identity(n, n);
        } else {
            std::vector<int> modes;
            std::vector<Matrix> ops;
            for (const DiagFactor& f : term.factors) {
                modes.push_back(f.mode);
                ops.push_back(f.to_matrix(dims[f.mode]));
            }
            part = embed_operator(dims, modes, ops);
        }
        h += term.coeff(t) * part;
    }
    return h;
}

HamiltonianSchedule resonator_hamiltonian(std::function<double(double)> delta,
                                          CoeffFn drive, int dim,
                                          double t_begin, double t_end,
                                          std::function<double(double)> scalar) {
    if (dim < 2) {
        throw std::invalid_argument("resonator_hamiltonian: dim must be >= 2");
    }
    HamiltonianSchedule h;
    h.dims = {dim};
    h.t_begin = t_begin;
    h.t_end = t_end;
    h.terms.push_back({[delta](double t) { return complexd(delta(t), 0.0); },
                       {f_number(0, dim)}});
    h.terms.push_back({[drive](double t) { return -drive(t); }, {f_raise(0, dim)}});
    h.terms.push_back({[drive](double t) { return -std::conj(drive(t)); },
                       {f_lower(0, dim)}});
    if (scalar) {
        h.terms.push_back({[scalar](double t) { return complexd(scalar(t), 0.0); }, {}});
    }
    return h;
}

} // namespace ffd
