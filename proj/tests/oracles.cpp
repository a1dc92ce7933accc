#include "oracles.hpp"

#include <cmath>

namespace oracle {

Matrix resonator_matrix(double delta, complexd drive, int dim) {
    Matrix h = Matrix::Zero(dim, dim);
    for (int n = 0; n < dim; ++n) {
        h(n, n) = delta * n;
    }
    for (int n = 1; n < dim; ++n) {
        const double root = std::sqrt(static_cast<double>(n));
        h(n, n - 1) -= drive * root;            // -drive * a^dag
        h(n - 1, n) -= std::conj(drive) * root; // -conj(drive) * a
    }
    return h;
}

Vector rk4_evolve(const std::function<Matrix(double)>& h_of_t, Vector psi, double t0,
                  double t1, int steps) {
    const double h = (t1 - t0) / steps;
    const complexd mi(0.0, -1.0);
    for (int k = 0; k < steps; ++k) {
        const double t = t0 + k * h;
        const Vector k1 = mi * (h_of_t(t) * psi);
        const Vector k2 = mi * (h_of_t(t + 0.5 * h) * (psi + 0.5 * h * k1));
        const Vector k3 = mi * (h_of_t(t + 0.5 * h) * (psi + 0.5 * h * k2));
        const Vector k4 = mi * (h_of_t(t + h) * (psi + h * k3));
        psi += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return psi;
}

HalvedStepResult rk4_halved(const std::function<Matrix(double)>& h_of_t, const Vector& psi0,
                            double t0, double t1, int steps) {
    const Vector coarse = rk4_evolve(h_of_t, psi0, t0, t1, steps);
    const Vector fine = rk4_evolve(h_of_t, psi0, t0, t1, 2 * steps);
    return {fine, (fine - coarse).cwiseAbs().maxCoeff()};
}

complexd classical_beta(const std::function<double(double)>& delta,
                        const std::function<complexd(double)>& drive, complexd beta,
                        double t0, double t1, int steps) {
    const double h = (t1 - t0) / steps;
    const complexd iu(0.0, 1.0);
    auto rhs = [&](double t, complexd b) { return -iu * delta(t) * b + iu * drive(t); };
    for (int k = 0; k < steps; ++k) {
        const double t = t0 + k * h;
        const complexd k1 = rhs(t, beta);
        const complexd k2 = rhs(t + 0.5 * h, beta + 0.5 * h * k1);
        const complexd k3 = rhs(t + 0.5 * h, beta + 0.5 * h * k2);
        const complexd k4 = rhs(t + h, beta + h * k3);
        beta += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return beta;
}

double coherent_infidelity(complexd beta, complexd target) {
    return 1.0 - std::exp(-std::norm(beta - target));
}

Poly poly_mul(const Poly& a, const Poly& b) {
    Poly out(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
            out[i + j] += a[i] * b[j];
        }
    }
    return out;
}

Poly poly_add(const Poly& a, const Poly& b) {
    Poly out(std::max(a.size(), b.size()), 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
    return out;
}

Poly poly_scale(const Poly& a, double s) {
    Poly out = a;
    for (double& c : out) c *= s;
    return out;
}

Poly poly_integral(const Poly& a) {
    Poly out(a.size() + 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        out[i + 1] = a[i] / static_cast<double>(i + 1);
    }
    return out;
}

double poly_eval(const Poly& a, double x) {
    double acc = 0.0;
    for (std::size_t i = a.size(); i-- > 0;) {
        acc = acc * x + a[i];
    }
    return acc;
}

Poly ramp_g() { return {0.0, 0.0, 0.0, 10.0, -15.0, 6.0}; }
Poly ramp_g2() { return {0.0, 60.0, -180.0, 120.0}; }
Poly ramp_w() { return {0.0, 1.0, -3.0, 2.0}; }

double b_integral_closed_form(double alpha_i, double alpha_f, double t_ramp, double delta,
                              double lambda) {
    // alpha0(sigma) = alpha_i + (alpha_f - alpha_i) g(sigma)
    // alpha0''(s)   = (alpha_f - alpha_i) g''(sigma) / t_ramp^2
    // b(s)          = (alpha0 + alpha0''/delta^2) alpha0'' / delta
    const double span = alpha_f - alpha_i;
    const Poly alpha0 = poly_add({alpha_i}, poly_scale(ramp_g(), span));
    const Poly acc = poly_scale(ramp_g2(), span / (t_ramp * t_ramp));
    const Poly alpha_ff = poly_add(alpha0, poly_scale(acc, 1.0 / (delta * delta)));
    const Poly b_sigma = poly_scale(poly_mul(alpha_ff, acc), 1.0 / delta);
    // ds = t_ramp dsigma.
    const Poly antider = poly_integral(poly_scale(b_sigma, t_ramp));
    return poly_eval(antider, lambda / t_ramp);
}

double clock_time_poly(double ratio, double delta_i, double t_ramp, double lambda) {
    const Poly big_g = poly_integral(ramp_g());
    const Poly big_w = poly_integral(ramp_w());
    const double sigma = lambda / t_ramp;
    const double g_term = t_ramp * poly_eval(big_g, sigma);
    const double w_term = t_ramp * poly_eval(big_w, sigma);
    const double dT = delta_i * t_ramp;
    return lambda + (ratio - 1.0) * (g_term + 60.0 * w_term / (dT * dT));
}

double clock_lambda_bisect(double ratio, double delta_i, double t_ramp, double t,
                           int iterations) {
    double lo = 0.0;
    double hi = t_ramp;
    for (int k = 0; k < iterations; ++k) {
        const double mid = 0.5 * (lo + hi);
        if (clock_time_poly(ratio, delta_i, t_ramp, mid) < t) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace oracle
