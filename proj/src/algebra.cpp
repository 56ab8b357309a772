#include "spinsq/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "optimize.hpp"

namespace spinsq {

namespace {

constexpr cplx I1{0.0, 1.0};
const double SQ2 = std::numbers::sqrt2;
const double SQ3 = std::numbers::sqrt3;

double frob(const Mat3& m) { return m.norm(); }

Mat3 comm(const Mat3& a, const Mat3& b) { return a * b - b * a; }

// trace inner product <A, B> = tr(A^dag B) / 2, real part
double tr_dot(const Mat3& a, const Mat3& b) {
    return 0.5 * (a.adjoint() * b).trace().real();
}

} // namespace

// ---------------------------------------------------------------- generators

GeneratorBasis::GeneratorBasis() {
    Mat3 jx, jy, jz, qxy, qyz, qzx, dxy, y;
    jx  << 0, 1, 0,   1, 0, 1,   0, 1, 0;
    jx /= SQ2;
    jy  << 0, -I1, 0,   I1, 0, -I1,   0, I1, 0;
    jy /= SQ2;
    jz  << 1, 0, 0,   0, 0, 0,   0, 0, -1;
    qxy << 0, 0, -I1,   0, 0, 0,   I1, 0, 0;
    qyz << 0, -I1, 0,   I1, 0, I1,   0, -I1, 0;
    qyz /= SQ2;
    qzx << 0, 1, 0,   1, 0, -1,   0, -1, 0;
    qzx /= SQ2;
    dxy << 0, 0, 1,   0, 0, 0,   1, 0, 0;
    y   << 1, 0, 0,   0, -2, 0,   0, 0, 1;
    y  /= SQ3;
    lambda_ = {jx, jy, jz, qxy, qyz, qzx, dxy, y};
}

GeneratorBasis build_generator_basis() { return GeneratorBasis{}; }

Mat3 ObservableCombo::to_matrix(const GeneratorBasis& basis) const {
    Mat3 m = identity_offset * Mat3::Identity();
    for (int i = 0; i < 8; ++i)
        if (coeffs[i] != 0.0) m += coeffs[i] * basis[i];
    return m;
}

ObservableCombo ObservableCombo::from_matrix(const GeneratorBasis& basis, const Mat3& m) {
    if (frob(m - m.adjoint()) > 1e-12)
        throw NotHermitian("observable projection requires a Hermitian matrix");
    ObservableCombo c;
    for (int i = 0; i < 8; ++i) c.coeffs[i] = tr_dot(basis[i], m);
    c.identity_offset = m.trace().real() / 3.0;
    return c;
}

ObservableCombo ObservableCombo::normalized() const {
    ObservableCombo c = *this;
    const double n = norm();
    if (n > 0.0) c.coeffs /= n;
    c.identity_offset = 0.0;
    return c;
}

ObservableCombo ObservableCombo::unit(int generator_index) {
    ObservableCombo c;
    c.coeffs[generator_index] = 1.0;
    return c;
}

ObservableCombo nematic_tensor(const GeneratorBasis& basis, Axis mu, Axis nu) {
    const Mat3& jmu = basis[static_cast<int>(mu)];
    const Mat3& jnu = basis[static_cast<int>(nu)];
    Mat3 n = 0.5 * (jmu * jnu + jnu * jmu);
    return ObservableCombo::from_matrix(basis, n);
}

// --------------------------------------------------------- structure tensor

StructureConstants structure_constants(const GeneratorBasis& basis) {
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) {
            const double expected = (i == j) ? 2.0 : 0.0;
            if (std::abs((basis[i] * basis[j]).trace().real() - expected) > 1e-8)
                throw NonOrthogonalBasis("generator table fails tr(Li Lj) = 2 delta_ij");
        }
    StructureConstants f;
    for (int i = 0; i < 8; ++i)
        for (int j = i + 1; j < 8; ++j) {
            const Mat3 c = comm(basis[i], basis[j]);
            for (int k = 0; k < 8; ++k) {
                const double v = (-0.5 * I1 * (c * basis[k]).trace()).real();
                f.at(i, j, k) = v;
                f.at(j, i, k) = -v;
            }
        }
    return f;
}

double max_antisymmetry_violation(const StructureConstants& f) {
    double worst = 0.0;
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j)
            for (int k = 0; k < 8; ++k) {
                worst = std::max(worst, std::abs(f(i, j, k) + f(j, i, k)));
                worst = std::max(worst, std::abs(f(i, j, k) + f(i, k, j)));
            }
    return worst;
}

double max_jacobi_violation(const StructureConstants& f) {
    double worst = 0.0;
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j)
            for (int k = 0; k < 8; ++k)
                for (int l = 0; l < 8; ++l) {
                    double s = 0.0;
                    for (int m = 0; m < 8; ++m)
                        s += f(i, j, m) * f(m, k, l) + f(j, k, m) * f(m, i, l) +
                             f(k, i, m) * f(m, j, l);
                    worst = std::max(worst, std::abs(s));
                }
    return worst;
}

Mat8 adjoint_representation(const StructureConstants& f, int i) {
    Mat8 ad = Mat8::Zero();
    for (int j = 0; j < 8; ++j)
        for (int k = 0; k < 8; ++k) ad(j, k) = f(i, k, j);
    return ad;
}

// ------------------------------------------------------------- root diagram

namespace {

// deterministic phase: rotate so the largest-magnitude entry is real positive
Mat3 fix_phase(const Mat3& e) {
    double best = 0.0;
    cplx top = 1.0;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c)
            if (std::abs(e(r, c)) > best + 1e-9) {
                best = std::abs(e(r, c));
                top = e(r, c);
            }
    return e * (std::conj(top) / std::abs(top));
}

} // namespace

std::vector<std::pair<RootVector, EigenOperator>>
root_diagram(const StructureConstants& f, const GeneratorBasis& basis) {
    using Mat8c = Eigen::Matrix<cplx, 8, 8>;
    const Mat8 ad3 = adjoint_representation(f, kJz);
    const Mat8 ad8 = adjoint_representation(f, kY);
    if ((ad3 * ad8 - ad8 * ad3).norm() > 1e-10)
        throw DegenerateCartan("Cartan adjoints do not commute");

    // A generic combination splits all six nonzero weights; the irrational
    // mixing coefficient rules out accidental collisions.
    const Mat8c h3 = I1 * ad3.cast<cplx>();
    const Mat8c h8 = I1 * ad8.cast<cplx>();
    const Mat8c h = h3 + (1.0 / std::numbers::pi) * h8;
    Eigen::SelfAdjointEigenSolver<Mat8c> es(h);
    if (es.info() != Eigen::Success)
        throw DegenerateCartan("eigendecomposition of the Cartan combination failed");

    std::vector<std::pair<RootVector, EigenOperator>> out;
    for (int n = 0; n < 8; ++n) {
        const Eigen::Matrix<cplx, 8, 1> v = es.eigenvectors().col(n);
        const double a1 = (v.adjoint() * h3 * v)(0).real();
        const double a2 = (v.adjoint() * h8 * v)(0).real();
        if (std::hypot(a1, a2) < 0.5) continue;   // Cartan directions themselves
        // demand a genuine simultaneous eigenvector, not a degenerate mixture
        if ((h3 * v - a1 * v).norm() > 1e-9 || (h8 * v - a2 * v).norm() > 1e-9)
            throw DegenerateCartan("nonzero-root eigenspaces failed to separate");
        Mat3 e = Mat3::Zero();
        for (int k = 0; k < 8; ++k) e += v[k] * basis[k];
        e = fix_phase(e);
        out.push_back({RootVector{a1, a2}, EigenOperator{e, RootVector{a1, a2}}});
    }
    if (out.size() != 6)
        throw DegenerateCartan("expected exactly six nonzero roots");

    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        auto ang = [](const RootVector& r) {
            double t = std::atan2(r.alpha2, r.alpha1);
            return t < -1e-12 ? t + 2.0 * std::numbers::pi : t;
        };
        return ang(a.first) < ang(b.first);
    });
    return out;
}

LadderExpansion ladder_commutator(
    const std::vector<std::pair<RootVector, EigenOperator>>& diagram,
    const EigenOperator& a, const EigenOperator& b) {
    const GeneratorBasis basis;   // cheap; keeps the call signature minimal
    const Mat3 c = comm(a.matrix, b.matrix);
    LadderExpansion ex;
    Mat3 rem = c;
    for (size_t i = 0; i < diagram.size() && i < 6; ++i) {
        const Mat3& e = diagram[i].second.matrix;
        const cplx coef = 0.5 * (e.adjoint() * c).trace();
        ex.ladder[i] = coef;
        rem -= coef * e;
    }
    ex.jz = 0.5 * (basis[kJz] * c).trace();
    ex.y = 0.5 * (basis[kY] * c).trace();
    rem -= ex.jz * basis[kJz] + ex.y * basis[kY];
    ex.residual = frob(rem);
    return ex;
}

bool LadderExpansion::is_zero(double tol) const {
    for (const auto& v : ladder)
        if (std::abs(v) > tol) return false;
    return std::abs(jz) <= tol && std::abs(y) <= tol && residual <= tol;
}

// ------------------------------------------------------------ su(2) triads

Su2Triad classify_triad(const GeneratorBasis& basis, const ObservableCombo& a,
                        const ObservableCombo& b, const ObservableCombo& c) {
    const std::array<const ObservableCombo*, 3> x{&a, &b, &c};
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) {
            const double dot = x[i]->coeffs.dot(x[j]->coeffs);
            if (std::abs(dot - (i == j ? 1.0 : 0.0)) > 1e-8)
                throw NonOrthogonalBasis("triad members must be trace-orthonormal");
        }

    std::array<Mat3, 3> m;
    for (int i = 0; i < 3; ++i) m[static_cast<size_t>(i)] = x[i]->to_matrix(basis);
    // identity offsets drop out of every commutator; work with traceless parts
    for (auto& mi : m) mi -= (mi.trace() / 3.0) * Mat3::Identity();

    double lambda = 0.0;
    for (int i = 0; i < 3; ++i) {
        const int j = (i + 1) % 3, k = (i + 2) % 3;
        const Mat3 cij = -I1 * comm(m[i], m[j]);   // Hermitian iff the pair closes
        Mat3 rem = cij;
        double fk = 0.0;
        for (int l = 0; l < 3; ++l) {
            const double g = tr_dot(m[l], cij);
            rem -= g * m[l];
            if (l == k) fk = g;
            else if (std::abs(g) > 1e-8)
                throw NotClosed("commutator has a component along a non-cyclic member");
        }
        if (frob(rem) > 1e-8)
            throw NotClosed("commutator leaves the span of the triad");
        if (i == 0) lambda = fk;
        else if (std::abs(fk - lambda) > 1e-8)
            throw NotClosed("cyclic structure constants are inconsistent");
    }
    if (std::abs(lambda) < 1e-8)
        throw NotClosed("triad is abelian");
    return Su2Triad{a, b, c, std::abs(lambda)};
}

namespace {

// Build the triad generated by a raising operator R with [R, R^dag] != 0:
// normalize tr(R^dag R) = 2, split into Hermitian quadratures, and read the
// third axis off the commutator.
Su2Triad triad_from_raising(const GeneratorBasis& basis, Mat3 r) {
    const double den = (r.adjoint() * r).trace().real();
    r *= std::sqrt(2.0 / den);
    const Mat3 x1 = (r + Mat3(r.adjoint())) / SQ2;
    const Mat3 x2 = (r - Mat3(r.adjoint())) / (I1 * SQ2);
    const Mat3 c = -I1 * comm(x1, x2);
    const double lam = std::sqrt(0.5 * (c * c).trace().real());
    const Mat3 x3 = c / lam;
    return classify_triad(basis,
                          ObservableCombo::from_matrix(basis, x1),
                          ObservableCombo::from_matrix(basis, x2),
                          ObservableCombo::from_matrix(basis, x3));
}

} // namespace

std::vector<Su2Triad> enumerate_canonical_triads(
    const GeneratorBasis& basis,
    const std::vector<std::pair<RootVector, EigenOperator>>& diagram) {
    auto root_eq = [](const RootVector& a, double r1, double r2) {
        return std::abs(a.alpha1 - r1) < 1e-8 && std::abs(a.alpha2 - r2) < 1e-8;
    };
    auto is_root = [&](double r1, double r2) {
        for (const auto& [rv, e] : diagram)
            if (root_eq(rv, r1, r2)) return true;
        return false;
    };

    std::vector<Su2Triad> out;

    // type 2: opposite-root pairs; one representative per axis (upper half plane)
    for (const auto& [rv, e] : diagram) {
        if (rv.alpha2 < -1e-8 || (std::abs(rv.alpha2) < 1e-8 && rv.alpha1 < 0)) continue;
        out.push_back(triad_from_raising(basis, e.matrix));
    }

    // type 1: pairs of roots 120 degrees apart whose sum is again a root,
    // one representative per conjugate pair, sum and difference ladders
    std::vector<std::pair<size_t, size_t>> kept;
    for (size_t i = 0; i < diagram.size(); ++i)
        for (size_t j = i + 1; j < diagram.size(); ++j) {
            const auto& a = diagram[i].first;
            const auto& b = diagram[j].first;
            if (std::abs(a.alpha1 * b.alpha1 + a.alpha2 * b.alpha2 + 2.0) > 1e-8) continue;
            if (!is_root(a.alpha1 + b.alpha1, a.alpha2 + b.alpha2)) continue;
            bool dup = false;
            for (const auto& [pi, pj] : kept) {
                const auto& pa = diagram[pi].first;
                const auto& pb = diagram[pj].first;
                if ((root_eq(pa, -a.alpha1, -a.alpha2) && root_eq(pb, -b.alpha1, -b.alpha2)) ||
                    (root_eq(pa, -b.alpha1, -b.alpha2) && root_eq(pb, -a.alpha1, -a.alpha2)))
                    dup = true;
            }
            if (!dup) kept.push_back({i, j});
        }
    for (const auto& [i, j] : kept) {
        out.push_back(triad_from_raising(basis, Mat3(diagram[i].second.matrix + diagram[j].second.matrix)));
        out.push_back(triad_from_raising(basis, Mat3(diagram[i].second.matrix - diagram[j].second.matrix)));
    }
    return out;
}

// ---------------------------------------------------------------- rotations

Mat3 hermitian_exp(const Mat3& h, double angle) {
    if (frob(h - h.adjoint()) > 1e-12)
        throw NotHermitian("rotation generator must be Hermitian");
    Eigen::SelfAdjointEigenSolver<Mat3> es(h);
    const Eigen::Vector3d w = es.eigenvalues();
    Eigen::Vector3cd ph;
    for (int i = 0; i < 3; ++i) ph[i] = std::exp(-I1 * angle * w[i]);
    return es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
}

Su3Rotation Su3Rotation::identity() { return Su3Rotation{}; }

Su3Rotation Su3Rotation::from_generator(const GeneratorBasis& basis,
                                        const ObservableCombo& g, double angle) {
    Su3Rotation u;
    u.single_particle = hermitian_exp(g.to_matrix(basis), angle);
    u.generator_log = {{g, angle}};
    return u;
}

Su3Rotation Su3Rotation::then_after(const Su3Rotation& other) const {
    Su3Rotation u;
    u.single_particle = single_particle * other.single_particle;
    u.generator_log = generator_log;
    u.generator_log.insert(u.generator_log.end(), other.generator_log.begin(),
                           other.generator_log.end());
    return u;
}

Su3Rotation Su3Rotation::inverse() const {
    Su3Rotation u;
    u.single_particle = single_particle.adjoint();
    u.generator_log.reserve(generator_log.size());
    for (auto it = generator_log.rbegin(); it != generator_log.rend(); ++it)
        u.generator_log.emplace_back(it->first, -it->second);
    return u;
}

Su2Triad conjugate_triad(const GeneratorBasis& basis, const Su2Triad& t,
                         const Su3Rotation& u) {
    const Mat3& v = u.single_particle;
    if (frob(Mat3(v.adjoint() * v) - Mat3::Identity()) > 1e-12)
        throw Error("conjugate_triad requires a unitary rotation");
    auto rot = [&](const ObservableCombo& x) {
        return ObservableCombo::from_matrix(basis, Mat3(v * x.to_matrix(basis) * v.adjoint()));
    };
    return classify_triad(basis, rot(t.x1), rot(t.x2), rot(t.x3));
}

// ------------------------------------------------- raising-operator search

namespace {

// E+(c1, c2) = E_{1,sqrt3} + c1 E_{1,-sqrt3} + c2 E_{-2,0} from the diagram.
Mat3 appendix_b_raising(const GeneratorBasis& basis, double c1, double c2) {
    const auto f = structure_constants(basis);
    const auto diagram = root_diagram(f, basis);
    auto find = [&](double r1, double r2) -> const Mat3& {
        for (const auto& [rv, e] : diagram)
            if (std::abs(rv.alpha1 - r1) < 1e-8 && std::abs(rv.alpha2 - r2) < 1e-8)
                return e.matrix;
        throw DegenerateCartan("required root missing from diagram");
    };
    return Mat3(find(1.0, SQ3) + c1 * find(1.0, -SQ3) + c2 * find(-2.0, 0.0));
}

double proportionality_residual(const Mat3& ep) {
    const Mat3 em = ep.adjoint();
    const Mat3 c2m = comm(comm(ep, em), ep);
    const cplx den = (ep.adjoint() * ep).trace();
    const cplx pr = (ep.adjoint() * c2m).trace() / den;
    return frob(c2m - pr * ep);
}

} // namespace

double appendix_b_residual(const GeneratorBasis& basis, double c1, double c2) {
    return proportionality_residual(appendix_b_raising(basis, c1, c2));
}

std::vector<RaisingSolution> appendix_b_search(const GeneratorBasis& basis,
                                               double grid_resolution) {
    if (!(grid_resolution > 0.0) || grid_resolution > 0.01)
        throw Error("grid_resolution must lie in (0, 0.01]");

    const auto f = structure_constants(basis);
    const auto diagram = root_diagram(f, basis);
    auto find = [&](double r1, double r2) -> const Mat3& {
        for (const auto& [rv, e] : diagram)
            if (std::abs(rv.alpha1 - r1) < 1e-8 && std::abs(rv.alpha2 - r2) < 1e-8)
                return e.matrix;
        throw DegenerateCartan("required root missing from diagram");
    };
    const Mat3 ea = find(1.0, SQ3);     // fixed unit coefficient
    const Mat3 eb = find(1.0, -SQ3);    // coefficient c1
    const Mat3 ec = find(-2.0, 0.0);    // coefficient c2

    auto raising = [&](double c1, double c2) { return Mat3(ea + c1 * eb + c2 * ec); };
    auto resid = [&](const std::vector<double>& c) {
        return proportionality_residual(raising(c[0], c[1]));
    };

    // scan [-2, 2]^2, refine every local minimum, keep the true zeros
    const int n = static_cast<int>(std::lround(4.0 / grid_resolution)) + 1;
    std::vector<double> grid(static_cast<size_t>(n) * static_cast<size_t>(n));
    auto coord = [&](int i) { return -2.0 + 4.0 * i / (n - 1); };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            grid[static_cast<size_t>(i) * n + j] = resid({coord(i), coord(j)});

    std::vector<RaisingSolution> found;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double v = grid[static_cast<size_t>(i) * n + j];
            bool local_min = true;
            for (int di = -1; di <= 1 && local_min; ++di)
                for (int dj = -1; dj <= 1 && local_min; ++dj) {
                    const int ii = i + di, jj = j + dj;
                    if (ii < 0 || jj < 0 || ii >= n || jj >= n || (di == 0 && dj == 0)) continue;
                    if (grid[static_cast<size_t>(ii) * n + jj] < v - 1e-15) local_min = false;
                }
            if (!local_min) continue;

            auto r = detail::nelder_mead(resid, {coord(i), coord(j)}, grid_resolution, 800);
            if (r.fval >= 1e-8) continue;
            double c1 = r.x[0], c2 = r.x[1];

            // [E+, E-] = 0 marks an abelian (commuting) pair, not an su(2);
            // the proportionality is vacuous there
            const Mat3 ep = raising(c1, c2);
            if (frob(comm(ep, Mat3(ep.adjoint()))) < 1e-6) continue;

            // the Weyl reflection fixing (1, sqrt3) swaps the other two roots
            // and hence the coefficients; canonicalize to |c1| >= |c2|
            if (std::abs(c1) < std::abs(c2)) std::swap(c1, c2);

            bool dup = false;
            for (const auto& s : found)
                if (std::abs(s.c1 - c1) < 1e-4 && std::abs(s.c2 - c2) < 1e-4) dup = true;
            if (dup) continue;

            const Su2Triad t = triad_from_raising(basis, raising(c1, c2));
            found.push_back({c1, c2, t.lambda, r.fval});
        }

    // the admissible set is exactly {(0,0), (1,0), (-1,0)}
    const std::array<std::array<double, 2>, 3> expect{{{0.0, 0.0}, {1.0, 0.0}, {-1.0, 0.0}}};
    if (found.size() != expect.size())
        throw UnexpectedSolution("raising-operator search found " +
                                 std::to_string(found.size()) + " solutions, expected 3");
    std::sort(found.begin(), found.end(),
              [](const auto& a, const auto& b) { return a.c1 < b.c1; });
    std::vector<RaisingSolution> out;
    for (const auto& e : expect) {
        bool hit = false;
        for (const auto& s : found)
            if (std::abs(s.c1 - e[0]) < 1e-6 && std::abs(s.c2 - e[1]) < 1e-6) {
                out.push_back(s);
                hit = true;
            }
        if (!hit)
            throw UnexpectedSolution("converged minimum outside the known solution set");
    }
    return out;
}

} // namespace spinsq
