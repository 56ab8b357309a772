#ifndef SPINSQ_ALGEBRA_HPP
#define SPINSQ_ALGEBRA_HPP

// su(3) generator basis in the spin-1 magnetic-sublevel basis (m = 1, 0, -1),
// structure constants, root diagram, and classification of su(2) subalgebras
// into type 1 (lambda = 1) and type 2 (lambda = 2).

#include <array>
#include <complex>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "spinsq/errors.hpp"

namespace spinsq {

using cplx = std::complex<double>;
using Mat3 = Eigen::Matrix3cd;
using Vec8 = Eigen::Matrix<double, 8, 1>;
using Mat8 = Eigen::Matrix<double, 8, 8>;

enum class Axis { x, y, z };

// generator indices in the fixed table order
enum : int { kJx = 0, kJy, kJz, kQxy, kQyz, kQzx, kDxy, kY };

// ---------------------------------------------------------------- generators

// The eight trace-orthogonal generators L1..L8 = (Jx, Jy, Jz, Qxy, Qyz, Qzx,
// Dxy, Y), normalized so tr(Li Lj) = 2 delta_ij.
class GeneratorBasis {
  public:
    GeneratorBasis();
    const Mat3& operator[](int i) const { return lambda_[static_cast<size_t>(i)]; }
    static constexpr int size() { return 8; }

  private:
    std::array<Mat3, 8> lambda_;
};

GeneratorBasis build_generator_basis();

// A Hermitian observable written as identity_offset*I + sum_i coeffs[i]*L_i.
struct ObservableCombo {
    Vec8 coeffs = Vec8::Zero();
    double identity_offset = 0.0;

    Mat3 to_matrix(const GeneratorBasis& basis) const;
    // exact projection: c_i = tr(L_i M)/2, offset = tr(M)/3
    static ObservableCombo from_matrix(const GeneratorBasis& basis, const Mat3& m);

    double norm() const { return coeffs.norm(); }         // identity part excluded
    ObservableCombo normalized() const;

    static ObservableCombo unit(int generator_index);
};

// N_{mu,nu} = (J_mu J_nu + J_nu J_mu)/2 expanded over the generator table.
// Diagonal components are not traceless, hence the identity_offset.
ObservableCombo nematic_tensor(const GeneratorBasis& basis, Axis mu, Axis nu);

// --------------------------------------------------------- structure tensor

// f_ijk with [L_i, L_j] = i sum_k f_ijk L_k, computed from the trace formula
// f_ijk = -(i/2) tr([L_i, L_j] L_k).
class StructureConstants {
  public:
    double operator()(int i, int j, int k) const {
        return f_[static_cast<size_t>((i * 8 + j) * 8 + k)];
    }
    double& at(int i, int j, int k) {
        return f_[static_cast<size_t>((i * 8 + j) * 8 + k)];
    }

  private:
    std::array<double, 512> f_{};
};

StructureConstants structure_constants(const GeneratorBasis& basis);

// worst violation of total antisymmetry over every index swap
double max_antisymmetry_violation(const StructureConstants& f);

// worst violation of sum_m (f_ijm f_mkl + f_jkm f_mil + f_kim f_mjl) = 0,
// exhaustively over all 8^4 index tuples
double max_jacobi_violation(const StructureConstants& f);

// {ad(L_i)}^j_k = f_ik^j  (real antisymmetric 8x8)
Mat8 adjoint_representation(const StructureConstants& f, int i);

// ------------------------------------------------------------- root diagram

struct RootVector {
    double alpha1 = 0.0;   // eigenvalue of ad(Jz)
    double alpha2 = 0.0;   // eigenvalue of ad(Y)
};

struct EigenOperator {
    Mat3 matrix;           // normalized to tr(E^dag E) = 2, deterministic phase
    RootVector root;
};

// The six nonzero-root ladder operators, ordered counterclockwise starting
// from (2, 0). Cartan pair fixed to (Jz, Y).
std::vector<std::pair<RootVector, EigenOperator>>
root_diagram(const StructureConstants& f, const GeneratorBasis& basis);

// [a, b] expanded over the six ladder operators plus the Cartan pair (Jz, Y).
struct LadderExpansion {
    std::array<cplx, 6> ladder{};   // coefficients on diagram entries, in diagram order
    cplx jz{};                      // coefficient on Jz
    cplx y{};                       // coefficient on Y
    double residual = 0.0;          // norm outside the spanned space (should be ~0)

    bool is_zero(double tol = 1e-10) const;
};

LadderExpansion ladder_commutator(
    const std::vector<std::pair<RootVector, EigenOperator>>& diagram,
    const EigenOperator& a, const EigenOperator& b);

// ------------------------------------------------------------ su(2) triads

// Ordered triple closing as [X_i, X_j] = i lambda eps_ijk X_k with lambda the
// structure-constant magnitude: 1 for spin-like triads, 2 for spin-nematic.
struct Su2Triad {
    ObservableCombo x1, x2, x3;
    double lambda = 0.0;
};

// Verifies closure of an orthonormal triple and measures lambda.
// Throws NonOrthogonalBasis on bad input, NotClosed if a commutator leaves
// the span of the triple by more than 1e-8.
Su2Triad classify_triad(const GeneratorBasis& basis, const ObservableCombo& a,
                        const ObservableCombo& b, const ObservableCombo& c);

// The nine canonical triads readable off the root hexagon: three type-2 from
// opposite-root pairs, six type-1 from sum/difference ladders of root pairs
// 120 degrees apart.
std::vector<Su2Triad> enumerate_canonical_triads(
    const GeneratorBasis& basis,
    const std::vector<std::pair<RootVector, EigenOperator>>& diagram);

// ---------------------------------------------------------------- rotations

// Product of exponential factors exp(-i angle * G); the factors are kept so
// the rotation can later be promoted to the many-body space factor by factor.
struct Su3Rotation {
    Mat3 single_particle = Mat3::Identity();
    std::vector<std::pair<ObservableCombo, double>> generator_log;   // leftmost factor first

    static Su3Rotation identity();
    // exp(-i angle G) for Hermitian G (by eigendecomposition, unitary by construction)
    static Su3Rotation from_generator(const GeneratorBasis& basis,
                                      const ObservableCombo& g, double angle);
    // (*this) * other, i.e. other acts first
    Su3Rotation then_after(const Su3Rotation& other) const;
    // reversed factor order with negated angles; single_particle is U^dag
    Su3Rotation inverse() const;
};

// exp(-i angle H) for Hermitian H
Mat3 hermitian_exp(const Mat3& h, double angle);

// Members conjugated as U X U^dag; lambda is unchanged.
Su2Triad conjugate_triad(const GeneratorBasis& basis, const Su2Triad& t,
                         const Su3Rotation& u);

// ------------------------------------------------- raising-operator search

// One admissible raising operator E+ = E_{1,sqrt3} + c1 E_{1,-sqrt3} + c2 E_{-2,0}
// whose double commutator [[E+, E-], E+] is proportional to E+.
struct RaisingSolution {
    double c1 = 0.0;
    double c2 = 0.0;
    double lambda = 0.0;
    double residual = 0.0;
};

// Proportionality residual ||[[E+, E-], E+] - proj(E+)|| at one (c1, c2);
// zero exactly on the admissible set.
double appendix_b_residual(const GeneratorBasis& basis, double c1, double c2);

// Grid scan of the proportionality residual over (c1, c2) in [-2, 2]^2 with
// local refinement. Degenerate zeros with [E+, E-] = 0 are discarded (they
// span an abelian algebra, not su(2)) and the two mixed families are reduced
// to canonical representatives via the Weyl reflection fixing (1, sqrt3),
// which exchanges (c1, c2) <-> (c2, c1). Result is exactly
// {(0,0) -> lambda 2, (+/-1, 0) -> lambda 1}; anything else throws
// UnexpectedSolution.
std::vector<RaisingSolution> appendix_b_search(const GeneratorBasis& basis,
                                               double grid_resolution);

} // namespace spinsq

#endif
