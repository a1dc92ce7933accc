#include "fock.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ffd {

int FockVector::total_dim() const {
    int n = 1;
    for (int d : dims) n *= d;
    return n;
}

namespace {

// Poisson weights p_n = e^{-mu} mu^n / n! by stable recurrence.
// Returns the cumulative mass of the first `dim` weights.
double poisson_head_mass(double mu, int dim) {
    if (mu == 0.0) return 1.0;
    double p = std::exp(-mu);
    double cum = p;
    for (int n = 1; n < dim; ++n) {
        p *= mu / n;
        cum += p;
    }
    return std::min(cum, 1.0);
}

void require_same_dims(const FockVector& a, const FockVector& b, const char* who) {
    if (a.dims != b.dims) {
        throw std::invalid_argument(std::string(who) + ": dims mismatch");
    }
}

FockVector normalized(std::vector<int> dims, Vector amps, double tail_mass) {
    const double nrm = amps.norm();
    if (!(nrm > 0.0)) {
        throw std::invalid_argument("state construction: zero norm");
    }
    FockVector v;
    v.dims = std::move(dims);
    v.amps = amps / nrm;
    v.tail_mass = tail_mass;
    return v;
}

} // namespace

double coherent_tail_mass(complexd alpha, int dim) {
    const double mu = std::norm(alpha);
    return std::max(0.0, 1.0 - poisson_head_mass(mu, dim));
}

int minimal_coherent_dim(complexd alpha, double tail_tol) {
    const double mu = std::norm(alpha);
    if (mu == 0.0) return 1;
    double p = std::exp(-mu);
    double cum = p;
    int n = 1;
    // cum holds the mass of the first n weights.
    while (1.0 - cum >= tail_tol && n < 100000) {
        p *= mu / n;
        cum += p;
        ++n;
    }
    return n;
}

Matrix lowering_operator(int dim) {
    if (dim < 2) {
        throw std::invalid_argument("lowering_operator: dim must be >= 2");
    }
    Matrix a = Matrix::Zero(dim, dim);
    for (int n = 1; n < dim; ++n) {
        a(n - 1, n) = std::sqrt(static_cast<double>(n));
    }
    return a;
}

Matrix number_operator(int dim) {
    if (dim < 1) {
        throw std::invalid_argument("number_operator: dim must be >= 1");
    }
    Matrix n = Matrix::Zero(dim, dim);
    for (int k = 0; k < dim; ++k) n(k, k) = static_cast<double>(k);
    return n;
}

namespace {

void check_truncation(complexd alpha, int dim, double tail_tol, const char* who) {
    const double tail = coherent_tail_mass(alpha, dim);
    if (tail >= tail_tol) {
        const int need = minimal_coherent_dim(alpha, tail_tol);
        throw truncation_error(std::string(who) + ": truncation dim " +
                                   std::to_string(dim) + " too small for |alpha| = " +
                                   std::to_string(std::abs(alpha)) +
                                   " (tail mass " + std::to_string(tail) +
                                   "); minimal adequate dim is " + std::to_string(need),
                               need);
    }
}

} // namespace

FockVector coherent_state(complexd alpha, int dim, double tail_tol) {
    if (dim < 1) {
        throw std::invalid_argument("coherent_state: dim must be >= 1");
    }
    check_truncation(alpha, dim, tail_tol, "coherent_state");
    Vector amps(dim);
    complexd c = std::exp(-0.5 * std::norm(alpha));
    amps(0) = c;
    for (int n = 1; n < dim; ++n) {
        c *= alpha / std::sqrt(static_cast<double>(n));
        amps(n) = c;
    }
    const double tail = coherent_tail_mass(alpha, dim);
    return normalized({dim}, std::move(amps), tail);
}

Matrix displacement_matrix(complexd alpha, int dim, double tail_tol) {
    if (dim < 1) {
        throw std::invalid_argument("displacement_matrix: dim must be >= 1");
    }
    check_truncation(alpha, dim, tail_tol, "displacement_matrix");
    if (alpha == complexd(0.0, 0.0)) {
        return Matrix::Identity(dim, dim);
    }
    // i (alpha a^dag - alpha^* a) is Hermitian; exp of the generator follows
    // from its spectral decomposition with bounded error at any |alpha|.
    Matrix herm = Matrix::Zero(dim, dim);
    const complexd ia = complexd(0.0, 1.0) * alpha;
    for (int n = 1; n < dim; ++n) {
        const double s = std::sqrt(static_cast<double>(n));
        herm(n, n - 1) = ia * s;          // i alpha a^dag
        herm(n - 1, n) = std::conj(ia) * s; // -i alpha^* a = (i alpha a^dag)^dag
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(herm);
    if (es.info() != Eigen::Success) {
        throw accuracy_error("displacement_matrix: eigendecomposition failed");
    }
    const auto& lam = es.eigenvalues();
    Vector phases(dim);
    for (int k = 0; k < dim; ++k) {
        phases(k) = std::exp(complexd(0.0, -lam(k)));
    }
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

FockVector displaced_fock(complexd alpha, int n, int dim, double tail_tol) {
    if (n < 0 || n >= dim) {
        throw std::invalid_argument("displaced_fock: n must satisfy 0 <= n < dim");
    }
    const Matrix d = displacement_matrix(alpha, dim, tail_tol);
    Vector col = d.col(n);
    const double tail = std::max(0.0, 1.0 - col.squaredNorm());
    return normalized({dim}, std::move(col), tail);
}

FockVector tensor(const std::vector<FockVector>& states) {
    if (states.empty()) {
        throw std::invalid_argument("tensor: empty state list");
    }
    FockVector out = states[0];
    for (std::size_t k = 1; k < states.size(); ++k) {
        const FockVector& s = states[k];
        Vector prod(out.amps.size() * s.amps.size());
        for (Eigen::Index i = 0; i < out.amps.size(); ++i) {
            prod.segment(i * s.amps.size(), s.amps.size()) = out.amps(i) * s.amps;
        }
        out.amps = std::move(prod);
        out.dims.insert(out.dims.end(), s.dims.begin(), s.dims.end());
        // Combined truncation loss of the factors.
        out.tail_mass = 1.0 - (1.0 - out.tail_mass) * (1.0 - s.tail_mass);
    }
    return normalized(std::move(out.dims), std::move(out.amps), out.tail_mass);
}

Matrix embed_operator(const std::vector<int>& dims, const std::vector<int>& modes,
                      const std::vector<Matrix>& ops) {
    if (modes.size() != ops.size()) {
        throw std::invalid_argument("embed_operator: modes/ops size mismatch");
    }
    std::vector<const Matrix*> factor(dims.size(), nullptr);
    for (std::size_t k = 0; k < modes.size(); ++k) {
        const int m = modes[k];
        if (m < 0 || m >= static_cast<int>(dims.size())) {
            throw std::invalid_argument("embed_operator: mode index out of range");
        }
        if (ops[k].rows() != dims[m] || ops[k].cols() != dims[m]) {
            throw std::invalid_argument("embed_operator: operator does not match mode dim");
        }
        factor[m] = &ops[k];
    }
    Matrix out = Matrix::Identity(1, 1);
    for (std::size_t m = 0; m < dims.size(); ++m) {
        const Matrix f = factor[m] ? *factor[m] : Matrix::Identity(dims[m], dims[m]);
        Matrix next(out.rows() * f.rows(), out.cols() * f.cols());
        for (Eigen::Index i = 0; i < out.rows(); ++i) {
            for (Eigen::Index j = 0; j < out.cols(); ++j) {
                next.block(i * f.rows(), j * f.cols(), f.rows(), f.cols()) = out(i, j) * f;
            }
        }
        out = std::move(next);
    }
    return out;
}

complexd overlap(const FockVector& a, const FockVector& b) {
    require_same_dims(a, b, "overlap");
    return a.amps.dot(b.amps); // Eigen dot conjugates the left argument
}

double fidelity(const FockVector& a, const FockVector& b) {
    require_same_dims(a, b, "fidelity");
    // Unit-norm inputs can overshoot 1 by an ulp; keep the contract [0, 1].
    return std::min(1.0, std::norm(overlap(a, b)));
}

FockVector normalized_copy(const FockVector& v) {
    FockVector out = v;
    const double nrm = out.amps.norm();
    if (!(nrm > 0.0)) {
        throw std::invalid_argument("normalized_copy: zero norm");
    }
    out.amps /= nrm;
    return out;
}

} // namespace ffd
