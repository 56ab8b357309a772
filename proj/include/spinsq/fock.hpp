#ifndef SPINSQ_FOCK_HPP
#define SPINSQ_FOCK_HPP

// Symmetric Fock space of N spin-1 bosons: occupation basis, coherent states
// built from a single-particle spinor, sparse promotion of 3x3 kernels, and
// expectation/covariance evaluation.

#include <array>
#include <memory>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "spinsq/algebra.hpp"
#include "spinsq/errors.hpp"

namespace spinsq {

// occupation triple (n1, n0, nm1) of the m = +1, 0, -1 modes
struct Occupation {
    int n1 = 0;
    int n0 = 0;
    int nm1 = 0;
};

// Basis states ordered lexicographically descending in (n1, n0); nm1 follows.
class FockBasis {
  public:
    static constexpr int kMaxParticles = 300;

    explicit FockBasis(int n_particles);

    int n_particles() const { return n_; }
    int dimension() const { return static_cast<int>(states_.size()); }
    const Occupation& occupation(int index) const { return states_[static_cast<size_t>(index)]; }
    int index_of(int n1, int n0) const;

    static int dimension_for(int n) { return (n + 1) * (n + 2) / 2; }

  private:
    int n_;
    std::vector<Occupation> states_;
};

using FockBasisPtr = std::shared_ptr<const FockBasis>;

FockBasisPtr build_basis(int n_particles);

// single-particle state (zeta_1, zeta_0, zeta_-1)
struct Spinor {
    std::array<cplx, 3> zeta{cplx{1.0, 0.0}, cplx{0.0, 0.0}, cplx{0.0, 0.0}};

    double norm() const;
    bool is_normalized(double tol = 1e-12) const;
    Spinor normalized() const;
};

struct ManyBodyState {
    FockBasisPtr basis;
    Eigen::VectorXcd amplitudes;

    double norm() const { return amplitudes.norm(); }
};

// sum_{mn} kernel(m,n) a^dag_m a_n over the symmetric basis; 9-sparse rows
class SecondQuantizedOperator {
  public:
    SecondQuantizedOperator(FockBasisPtr basis, Eigen::SparseMatrix<cplx> m)
        : basis_(std::move(basis)), mat_(std::move(m)) {}

    const FockBasisPtr& basis() const { return basis_; }
    const Eigen::SparseMatrix<cplx>& matrix() const { return mat_; }
    Eigen::VectorXcd apply(const Eigen::VectorXcd& v) const { return mat_ * v; }

  private:
    FockBasisPtr basis_;
    Eigen::SparseMatrix<cplx> mat_;
};

// Amplitude on (n1, n0, nm1) is sqrt(N!/(n1! n0! nm1!)) zeta1^n1 zeta0^n0
// zetam1^nm1, evaluated in log space so N up to 300 stays finite.
ManyBodyState coherent_state(const FockBasisPtr& basis, const Spinor& s);

SecondQuantizedOperator second_quantize(const FockBasisPtr& basis, const Mat3& kernel);

double expectation(const ManyBodyState& state, const SecondQuantizedOperator& op);

// C_ij = <(A_i A_j + A_j A_i)/2> - <A_i><A_j>
Eigen::MatrixXd covariance_matrix(const ManyBodyState& state,
                                  const std::vector<const SecondQuantizedOperator*>& ops);

} // namespace spinsq

#endif
