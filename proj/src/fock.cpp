#include "spinsq/fock.hpp"

#include <cmath>

namespace spinsq {

FockBasis::FockBasis(int n_particles) : n_(n_particles) {
    if (n_ < 0 || n_ > kMaxParticles)
        throw SizeLimit("particle number must lie in [0, 300]");
    states_.reserve(static_cast<size_t>(dimension_for(n_)));
    for (int n1 = n_; n1 >= 0; --n1)
        for (int n0 = n_ - n1; n0 >= 0; --n0)
            states_.push_back({n1, n0, n_ - n1 - n0});
}

int FockBasis::index_of(int n1, int n0) const {
    const int r = n_ - n1;           // states of larger n1 precede: r(r+1)/2 of them
    return r * (r + 1) / 2 + (r - n0);
}

FockBasisPtr build_basis(int n_particles) {
    return std::make_shared<const FockBasis>(n_particles);
}

double Spinor::norm() const {
    return std::sqrt(std::norm(zeta[0]) + std::norm(zeta[1]) + std::norm(zeta[2]));
}

bool Spinor::is_normalized(double tol) const { return std::abs(norm() - 1.0) <= tol; }

Spinor Spinor::normalized() const {
    const double n = norm();
    if (n == 0.0) throw Error("cannot normalize the zero spinor");
    return Spinor{{zeta[0] / n, zeta[1] / n, zeta[2] / n}};
}

ManyBodyState coherent_state(const FockBasisPtr& basis, const Spinor& s) {
    if (!s.is_normalized())
        throw Error("coherent_state requires a normalized spinor");
    const int n = basis->n_particles();
    const int dim = basis->dimension();

    std::array<double, 3> mag_log{}, arg{};
    std::array<bool, 3> vanishes{};
    for (int m = 0; m < 3; ++m) {
        const double a = std::abs(s.zeta[static_cast<size_t>(m)]);
        vanishes[static_cast<size_t>(m)] = (a == 0.0);
        mag_log[static_cast<size_t>(m)] = vanishes[static_cast<size_t>(m)] ? 0.0 : std::log(a);
        arg[static_cast<size_t>(m)] = std::arg(s.zeta[static_cast<size_t>(m)]);
    }
    const double log_nfact = std::lgamma(n + 1.0);

    ManyBodyState psi{basis, Eigen::VectorXcd::Zero(dim)};
    for (int idx = 0; idx < dim; ++idx) {
        const Occupation& occ = basis->occupation(idx);
        const std::array<int, 3> nn{occ.n1, occ.n0, occ.nm1};
        bool zero = false;
        double lg = 0.5 * (log_nfact - std::lgamma(occ.n1 + 1.0) - std::lgamma(occ.n0 + 1.0) -
                           std::lgamma(occ.nm1 + 1.0));
        double ph = 0.0;
        for (int m = 0; m < 3; ++m) {
            if (nn[static_cast<size_t>(m)] == 0) continue;
            if (vanishes[static_cast<size_t>(m)]) { zero = true; break; }
            lg += nn[static_cast<size_t>(m)] * mag_log[static_cast<size_t>(m)];
            ph += nn[static_cast<size_t>(m)] * arg[static_cast<size_t>(m)];
        }
        if (!zero) psi.amplitudes[idx] = std::polar(std::exp(lg), ph);
    }
    if (std::abs(psi.norm() - 1.0) > 1e-10)
        throw Error("coherent state norm drifted beyond tolerance");
    return psi;
}

SecondQuantizedOperator second_quantize(const FockBasisPtr& basis, const Mat3& kernel) {
    if ((kernel - kernel.adjoint()).norm() > 1e-12)
        throw NotHermitian("second_quantize requires a Hermitian kernel");
    const int dim = basis->dimension();

    std::vector<Eigen::Triplet<cplx>> trip;
    trip.reserve(static_cast<size_t>(dim) * 9);
    for (int idx = 0; idx < dim; ++idx) {
        const Occupation& occ = basis->occupation(idx);
        const std::array<int, 3> nn{occ.n1, occ.n0, occ.nm1};

        cplx diag = 0.0;
        for (int m = 0; m < 3; ++m) diag += kernel(m, m) * static_cast<double>(nn[static_cast<size_t>(m)]);
        if (diag != 0.0) trip.emplace_back(idx, idx, diag);

        // a^dag_m a_l moves one particle from mode l to mode m
        for (int m = 0; m < 3; ++m)
            for (int l = 0; l < 3; ++l) {
                if (m == l || kernel(m, l) == 0.0 || nn[static_cast<size_t>(l)] == 0) continue;
                std::array<int, 3> to = nn;
                --to[static_cast<size_t>(l)];
                ++to[static_cast<size_t>(m)];
                const double amp = std::sqrt(static_cast<double>(to[static_cast<size_t>(m)]) *
                                             static_cast<double>(nn[static_cast<size_t>(l)]));
                trip.emplace_back(basis->index_of(to[0], to[1]), idx, kernel(m, l) * amp);
            }
    }
    Eigen::SparseMatrix<cplx> mat(dim, dim);
    mat.setFromTriplets(trip.begin(), trip.end());
    mat.makeCompressed();
    return SecondQuantizedOperator{basis, std::move(mat)};
}

namespace {

void require_same_basis(const FockBasisPtr& a, const FockBasisPtr& b) {
    if (a.get() != b.get() && a->n_particles() != b->n_particles())
        throw Error("state and operator live on different bases");
}

} // namespace

double expectation(const ManyBodyState& state, const SecondQuantizedOperator& op) {
    require_same_basis(state.basis, op.basis());
    const cplx v = state.amplitudes.dot(op.apply(state.amplitudes));
    if (std::abs(v.imag()) > 1e-9)
        throw ImaginaryResidual("expectation of a Hermitian operator came out complex");
    return v.real();
}

Eigen::MatrixXd covariance_matrix(const ManyBodyState& state,
                                  const std::vector<const SecondQuantizedOperator*>& ops) {
    const int k = static_cast<int>(ops.size());
    std::vector<Eigen::VectorXcd> w;
    w.reserve(static_cast<size_t>(k));
    Eigen::VectorXd mean(k);
    for (int i = 0; i < k; ++i) {
        require_same_basis(state.basis, ops[static_cast<size_t>(i)]->basis());
        w.push_back(ops[static_cast<size_t>(i)]->apply(state.amplitudes));
        const cplx m = state.amplitudes.dot(w.back());
        if (std::abs(m.imag()) > 1e-9)
            throw ImaginaryResidual("operator mean came out complex");
        mean[i] = m.real();
    }
    Eigen::MatrixXd c(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = i; j < k; ++j) {
            // Re<A_i psi, A_j psi> is exactly the symmetrized second moment
            const double second = w[static_cast<size_t>(i)].dot(w[static_cast<size_t>(j)]).real();
            c(i, j) = c(j, i) = second - mean[i] * mean[j];
        }
    return c;
}

} // namespace spinsq
