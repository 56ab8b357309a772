#ifndef SPINSQ_SQUEEZING_HPP
#define SPINSQ_SQUEEZING_HPP

// Transverse quadrature variances, time/direction optimization of the
// squeezing trajectories, and the closed-form asymptotic limits.

#include <utility>
#include <vector>

#include "spinsq/dynamics.hpp"

namespace spinsq {

// Delta = sin(nu) X2 + cos(nu) X3 in a triad's transverse plane
struct Quadrature {
    double nu = 0.0;
    ObservableCombo axis2, axis3;
};

struct SqueezeResult {
    struct Sample {
        double chi_t = 0.0;
        double min_variance = 0.0;
        double nu = 0.0;
    };

    int n_particles = 0;
    int squeeze_type = 1;
    double chi_t_opt = 0.0;
    double min_variance = 0.0;
    double nu_opt = 0.0;
    double initial_variance = 0.0;
    double squeezing_db = 0.0;
    std::vector<Sample> series;
};

// Smaller eigenvalue of the 2x2 covariance of (X2, X3) and the minimizing
// angle nu in (-pi/2, pi/2]; isotropic covariance ties break to nu = 0.
std::pair<double, double> transverse_min_variance(const ManyBodyState& state,
                                                  const Su2Triad& triad);
// same computation with the two promoted transverse members supplied directly
std::pair<double, double> transverse_min_variance(const ManyBodyState& state,
                                                  const SecondQuantizedOperator& x2,
                                                  const SecondQuantizedOperator& x3);

// Full trajectory: angle solving (reachability check), co-rotated evolution
// under the diagonal Jz kernel from the family reference state, per-point
// direction optimization, golden-section refinement of the time optimum to
// relative 1e-6. Passing nullptr uses the default N^(-2/3)-scaled window;
// seed feeds the extra multi-starts of the angle solver.
SqueezeResult run_squeezing(int n_particles, const Spinor& s, SqueezeFamily family,
                            const TwistingSchedule* schedule = nullptr, unsigned seed = 0);

struct AsymptoticPrediction {
    double min_variance = 0.0;
    double chi_t_opt = 0.0;
    double nu_opt = 0.0;      // nu formula evaluated at chi_t_opt
};

// Closed-form limits: (1/4)(9N/4)^(1/3) at chi t = (3/(8 N^4))^(1/6) for
// type 1; (1/2)(9N)^(1/3) at chi t = (6/N^4)^(1/6) for type 2.
AsymptoticPrediction asymptotic_prediction(int n_particles, SqueezeFamily family);

// nu(chi t) = (1/2)[arctan(N chi t) - chi t] (type 1) or
//             (1/2)[arctan(N chi t) - 2 chi t] (type 2)
double nu_formula(int n_particles, SqueezeFamily family, double chi_t);

struct SweepResult {
    std::vector<SqueezeResult> runs;
    double slope = 0.0;       // d log(min_variance) / d log(N)
    double intercept = 0.0;
    double residual = 0.0;    // rms deviation of the fit in log space
};

// run_squeezing across an ascending particle-number list plus the log-log fit
SweepResult sweep_scaling(const std::vector<int>& n_list, SqueezeFamily family,
                          const Spinor& s, unsigned seed = 0);

} // namespace spinsq

#endif
