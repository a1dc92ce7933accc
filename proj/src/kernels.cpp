#include "kernels.hpp"

#include <algorithm>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ffd {

namespace kernels {

namespace {
int g_max_threads = 0;
}

void set_max_threads(int n) { g_max_threads = n < 0 ? 0 : n; }

int max_threads() {
#ifdef _OPENMP
    const int hw = omp_get_max_threads();
    return g_max_threads > 0 ? std::min(g_max_threads, hw) : hw;
#else
    return 1;
#endif
}

} // namespace kernels

ScheduleApplier::ScheduleApplier(const HamiltonianSchedule& schedule)
    : dims_(schedule.dims) {
    if (dims_.empty()) {
        throw std::invalid_argument("ScheduleApplier: schedule has no modes");
    }
    total_dim_ = schedule.total_dim();
    lead_dim_ = dims_[0];

    std::vector<long> strides(dims_.size());
    long s = 1;
    for (int m = static_cast<int>(dims_.size()) - 1; m >= 0; --m) {
        strides[m] = s;
        s *= dims_[m];
    }

    // Copy factor diagonals into stable storage before taking pointers.
    std::size_t nfactors = 0;
    for (const ScheduleTerm& term : schedule.terms) nfactors += term.factors.size();
    vals_storage_.reserve(nfactors);

    coeffs_.reserve(schedule.terms.size());
    plans_.reserve(schedule.terms.size());
    for (const ScheduleTerm& term : schedule.terms) {
        if (!term.coeff) {
            throw std::invalid_argument("ScheduleApplier: term without coefficient");
        }
        coeffs_.push_back(term.coeff);
        Plan plan;
        plan.slots.resize(dims_.size());
        for (std::size_t m = 0; m < dims_.size(); ++m) {
            plan.slots[m].begin = 0;
            plan.slots[m].count = dims_[m];
            plan.slots[m].stride = strides[m];
            plan.slots[m].in_shift = 0;
            plan.slots[m].vals = nullptr;
        }
        for (const DiagFactor& f : term.factors) {
            if (f.mode < 0 || f.mode >= static_cast<int>(dims_.size())) {
                throw std::invalid_argument("ScheduleApplier: factor mode out of range");
            }
            Slot& slot = plan.slots[f.mode];
            if (slot.vals != nullptr) {
                throw std::invalid_argument("ScheduleApplier: duplicate factor on a mode");
            }
            if (f.vals.size() != dims_[f.mode] - std::abs(f.offset)) {
                throw std::invalid_argument("ScheduleApplier: factor length mismatch");
            }
            vals_storage_.push_back(f.vals);
            slot.begin = std::max(0, -f.offset);
            slot.count = static_cast<int>(f.vals.size());
            slot.in_shift = static_cast<long>(f.offset) * slot.stride;
            slot.vals = vals_storage_.back().data();
        }
        plans_.push_back(std::move(plan));
    }
}

void ScheduleApplier::walk(const Plan& plan, int level, long out_base, long in_base,
                           complexd scale, const Vector& x, Vector& y) {
    const Slot& s = plan.slots[level];
    if (level + 1 == static_cast<int>(plan.slots.size())) {
        // Innermost mode has stride 1: contiguous update.
        complexd* yp = y.data() + out_base + s.begin;
        const complexd* xp = x.data() + in_base + s.begin + s.in_shift;
        if (s.vals) {
            for (int k = 0; k < s.count; ++k) yp[k] += scale * s.vals[k] * xp[k];
        } else {
            for (int k = 0; k < s.count; ++k) yp[k] += scale * xp[k];
        }
        return;
    }
    for (int k = 0; k < s.count; ++k) {
        const long r = s.begin + k;
        const complexd sc = s.vals ? scale * s.vals[k] : scale;
        walk(plan, level + 1, out_base + r * s.stride, in_base + r * s.stride + s.in_shift,
             sc, x, y);
    }
}

void ScheduleApplier::walk_rows(const Plan& plan, int row_lo, int row_hi, complexd coeff,
                                const Vector& x, Vector& y) {
    // Restrict the leading mode to output rows [row_lo, row_hi).
    const Slot& s = plan.slots[0];
    const int k_lo = std::max(0, row_lo - s.begin);
    const int k_hi = std::min(s.count, row_hi - s.begin);
    if (plan.slots.size() == 1) {
        complexd* yp = y.data();
        const complexd* xp = x.data() + s.in_shift;
        if (s.vals) {
            for (int k = k_lo; k < k_hi; ++k) {
                const long r = s.begin + k;
                yp[r] += coeff * s.vals[k] * xp[r];
            }
        } else {
            for (int k = k_lo; k < k_hi; ++k) {
                const long r = s.begin + k;
                yp[r] += coeff * xp[r];
            }
        }
        return;
    }
    for (int k = k_lo; k < k_hi; ++k) {
        const long r = s.begin + k;
        const complexd sc = s.vals ? coeff * s.vals[k] : coeff;
        walk(plan, 1, r * s.stride, r * s.stride + s.in_shift, sc, x, y);
    }
}

void ScheduleApplier::run(const std::vector<complexd>& coeffs, const Vector& x, Vector& y,
                          bool parallel) const {
    y.setZero();
#ifdef _OPENMP
    const int nt = kernels::max_threads();
    if (parallel && nt > 1 && total_dim_ >= kernels::kParallelThreshold &&
        !omp_in_parallel()) {
#pragma omp parallel num_threads(nt)
        {
            const int tid = omp_get_thread_num();
            const int nth = omp_get_num_threads();
            const int row_lo = static_cast<int>((static_cast<long>(lead_dim_) * tid) / nth);
            const int row_hi =
                static_cast<int>((static_cast<long>(lead_dim_) * (tid + 1)) / nth);
            for (std::size_t p = 0; p < plans_.size(); ++p) {
                walk_rows(plans_[p], row_lo, row_hi, coeffs[p], x, y);
            }
        }
        return;
    }
#else
    (void)parallel;
#endif
    for (std::size_t p = 0; p < plans_.size(); ++p) {
        walk_rows(plans_[p], 0, lead_dim_, coeffs[p], x, y);
    }
}

void ScheduleApplier::apply(double t, const Vector& x, Vector& y, bool parallel) const {
    if (x.size() != total_dim_) {
        throw std::invalid_argument("ScheduleApplier::apply: state size mismatch");
    }
    y.resize(total_dim_);
    std::vector<complexd> c(coeffs_.size());
    for (std::size_t k = 0; k < coeffs_.size(); ++k) c[k] = coeffs_[k](t);
    run(c, x, y, parallel);
}

void ScheduleApplier::apply_rhs(double t, const Vector& x, Vector& y, bool parallel) const {
    if (x.size() != total_dim_) {
        throw std::invalid_argument("ScheduleApplier::apply_rhs: state size mismatch");
    }
    y.resize(total_dim_);
    const complexd minus_i(0.0, -1.0);
    std::vector<complexd> c(coeffs_.size());
    for (std::size_t k = 0; k < coeffs_.size(); ++k) c[k] = minus_i * coeffs_[k](t);
    run(c, x, y, parallel);
}

void reference_apply(const HamiltonianSchedule& schedule, double t, const Vector& x,
                     Vector& y) {
    const int n = schedule.total_dim();
    if (x.size() != n) {
        throw std::invalid_argument("reference_apply: state size mismatch");
    }
    std::vector<long> strides(schedule.dims.size());
    long s = 1;
    for (int m = static_cast<int>(schedule.dims.size()) - 1; m >= 0; --m) {
        strides[m] = s;
        s *= schedule.dims[m];
    }
    y = Vector::Zero(n);
    Vector tmp, next;
    for (const ScheduleTerm& term : schedule.terms) {
        const complexd c = term.coeff(t);
        tmp = x;
        for (const DiagFactor& f : term.factors) {
            const int d = schedule.dims[f.mode];
            const long stride = strides[f.mode];
            const long outer = n / (d * stride);
            const int begin = std::max(0, -f.offset);
            next = Vector::Zero(n);
            for (long oi = 0; oi < outer; ++oi) {
                for (int k = 0; k < f.vals.size(); ++k) {
                    const long r = begin + k;
                    const long out0 = (oi * d + r) * stride;
                    const long in0 = (oi * d + r + f.offset) * stride;
                    for (long ii = 0; ii < stride; ++ii) {
                        next(out0 + ii) += f.vals(k) * tmp(in0 + ii);
                    }
                }
            }
            tmp.swap(next);
        }
        y += c * tmp;
    }
}

} // namespace ffd
