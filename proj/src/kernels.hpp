// kernels.hpp — matrix-free application of schedule terms to state vectors.
//
// ScheduleApplier compiles a HamiltonianSchedule into flat per-term plans and
// evaluates y = H(t) x (or -i H(t) x) in a single pass. The row space is
// partitioned by the leading mode, so the OpenMP path writes each output
// element from exactly one thread and results are bit-identical to the
// serial path for any thread count.
//
// reference_apply is a deliberately plain implementation kept for testing
// and benchmarking the optimized kernel against.

#pragma once

#include "schedule.hpp"

namespace ffd {
namespace kernels {

// Upper bound on threads used by apply kernels (0 = OpenMP default).
void set_max_threads(int n);
int max_threads();

// Vectors shorter than this run serially; threading gains nothing there.
inline constexpr int kParallelThreshold = 2048;

} // namespace kernels

class ScheduleApplier {
  public:
    explicit ScheduleApplier(const HamiltonianSchedule& schedule);

    int total_dim() const { return total_dim_; }

    // y = H(t) x. `parallel` requests the OpenMP path (subject to the size
    // threshold and nesting checks).
    void apply(double t, const Vector& x, Vector& y, bool parallel = true) const;

    // y = -i H(t) x, the Schrodinger right-hand side.
    void apply_rhs(double t, const Vector& x, Vector& y, bool parallel = true) const;

  private:
    struct Slot {
        int begin = 0;                // first output coordinate on this mode
        int count = 0;                // number of output coordinates
        long stride = 0;              // flat stride of this mode
        long in_shift = 0;            // offset * stride
        const double* vals = nullptr; // nullable; indexed by (coord - begin)
    };
    struct Plan {
        std::vector<Slot> slots; // one per mode, leading mode first
    };

    static void walk(const Plan& plan, int level, long out_base, long in_base,
                     complexd scale, const Vector& x, Vector& y);
    static void walk_rows(const Plan& plan, int row_lo, int row_hi, complexd coeff,
                          const Vector& x, Vector& y);
    void run(const std::vector<complexd>& coeffs, const Vector& x, Vector& y,
             bool parallel) const;

    std::vector<int> dims_;
    std::vector<Plan> plans_;
    std::vector<CoeffFn> coeffs_;
    std::vector<Eigen::VectorXd> vals_storage_;
    int total_dim_ = 0;
    int lead_dim_ = 1;
};

// Straightforward serial evaluation of y = H(t) x via per-factor passes.
void reference_apply(const HamiltonianSchedule& schedule, double t, const Vector& x,
                     Vector& y);

} // namespace ffd
