#include "quad.hpp"

#include <cmath>

namespace ffd {

namespace {

// Kronrod-15 nodes on [0, 1] side (symmetric) with Kronrod weights and the
// embedded Gauss-7 weights on the odd-indexed nodes.
constexpr double kNodes[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.000000000000000};
constexpr double kWeightsK[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
constexpr double kWeightsG[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct PanelResult {
    double kronrod;
    double err;
};

PanelResult panel(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double ik = 0.0;
    double ig = 0.0;
    const double fc = f(c);
    ik += kWeightsK[7] * fc;
    ig += kWeightsG[3] * fc;
    for (int j = 0; j < 7; ++j) {
        const double x = h * kNodes[j];
        const double fsum = f(c - x) + f(c + x);
        ik += kWeightsK[j] * fsum;
        if (j % 2 == 1) {
            ig += kWeightsG[j / 2] * fsum;
        }
    }
    ik *= h;
    ig *= h;
    return {ik, std::abs(ik - ig)};
}

double adapt(const std::function<double(double)>& f, double a, double b,
             const QuadOptions& opt, double whole_scale, int depth) {
    const PanelResult r = panel(f, a, b);
    const double tol =
        std::max(opt.abs_tol * std::abs(b - a) / whole_scale, opt.rel_tol * std::abs(r.kronrod));
    if (r.err <= tol || r.err <= opt.abs_tol * 1e-2) {
        return r.kronrod;
    }
    if (depth >= opt.max_depth) {
        throw accuracy_error("quadrature: failed to converge (max depth reached)");
    }
    const double c = 0.5 * (a + b);
    return adapt(f, a, c, opt, whole_scale, depth + 1) +
           adapt(f, c, b, opt, whole_scale, depth + 1);
}

} // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadOptions& opt) {
    if (a == b) return 0.0;
    return adapt(f, a, b, opt, std::abs(b - a), 0);
}

} // namespace ffd
