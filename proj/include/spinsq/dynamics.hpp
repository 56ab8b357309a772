#ifndef SPINSQ_DYNAMICS_HPP
#define SPINSQ_DYNAMICS_HPP

// SU(3) rotations on many-body states, angle solving for the two rotation
// families, and one-axis twisting evolution in the co-rotated frame.

#include <vector>

#include "spinsq/algebra.hpp"
#include "spinsq/errors.hpp"
#include "spinsq/fock.hpp"

namespace spinsq {

enum class SqueezeFamily : int { type1 = 1, type2 = 2 };

struct EulerAngles {
    double alpha = 0.0, beta = 0.0, gamma = 0.0, phi = 0.0;

    EulerAngles() = default;
    EulerAngles(double a, double b, double g, double p);   // wraps into (-pi, pi]
};

// U1 = exp(-i alpha Jz) exp(-i beta Jy) exp(-i gamma Jz) exp(-i phi Qyz)
Su3Rotation rotation_u1(const GeneratorBasis& basis, const EulerAngles& a);
// U2: same Euler part, final factor exp(-i phi Qxy)
Su3Rotation rotation_u2(const GeneratorBasis& basis, const EulerAngles& a);

// The fixed polarized spinors each family rotates: Ry(pi/2) e1 for type 1,
// exp(-i pi/4 Qxy) e1 for type 2, computed from the 3x3 exponentials.
Eigen::Vector3cd reference_spinor(const GeneratorBasis& basis, SqueezeFamily family);

// Angles mapping the family reference onto s with infidelity below 1e-10
// (type 2 targets U2(alpha, beta, gamma, phi + pi/4) e1). Multi-start
// Nelder-Mead over a deterministic angle lattice; seed adds optional extra
// jittered starts without disturbing the lattice ones.
EulerAngles solve_angles(const GeneratorBasis& basis, const Spinor& s,
                         SqueezeFamily family, unsigned seed = 0);

// {Jx, Jy, Jz} conjugated by U1, or {Dxy, Qxy, Jz} conjugated by U2
Su2Triad rotated_triad(const GeneratorBasis& basis, const EulerAngles& a,
                       SqueezeFamily family);

// exp(-i theta G) applied factor by factor from the rotation's generator log,
// each via scaled truncated Taylor on the amplitude vector
ManyBodyState apply_rotation(const ManyBodyState& state, const Su3Rotation& u,
                             const GeneratorBasis& basis);

struct TwistingSchedule {
    std::vector<double> chi_t_values;   // non-negative, strictly increasing
    Mat3 twist_kernel = Mat3::Zero();   // diagonal in this frame; Jz by convention

    void validate() const;
};

// Default grid: 200 logarithmic points spanning chi t in
// [1e-3 N^(-2/3), 10 N^(-2/3)], kernel Jz.
TwistingSchedule default_schedule(const GeneratorBasis& basis, int n_particles,
                                  int points = 200);

// Amplitude-wise phases exp(-i chi_t d^2) with d the diagonal kernel weight
// of the occupation triple ((n1 - nm1) for Jz); one state per schedule point.
std::vector<ManyBodyState> one_axis_evolve(const ManyBodyState& state,
                                           const TwistingSchedule& schedule);

} // namespace spinsq

#endif
