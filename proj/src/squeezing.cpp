#include "spinsq/squeezing.hpp"

#include <cmath>
#include <numbers>

#include "optimize.hpp"

namespace spinsq {

namespace {

const double PI = std::numbers::pi;

std::pair<double, double> min_eig_and_angle(double a, double b, double c) {
    // covariance block [[a, b], [b, c]] over (X2, X3)
    const double half_gap = 0.5 * (a - c);
    const double r = std::hypot(half_gap, b);
    const double vmin = 0.5 * (a + c) - r;
    if (r <= 1e-14 * std::max(1.0, std::abs(a) + std::abs(c)))
        return {vmin, 0.0};                       // isotropic tie-break
    double nu;
    if (std::abs(b) < 1e-300) {
        nu = (a < c) ? PI / 2.0 : 0.0;            // already diagonal
    } else {
        nu = std::atan2(b, vmin - a);             // eigenvector (b, vmin - a)
    }
    if (nu <= -PI / 2.0) nu += PI;                // direction is mod pi
    if (nu > PI / 2.0) nu -= PI;
    return {vmin, nu};
}

} // namespace

std::pair<double, double> transverse_min_variance(const ManyBodyState& state,
                                                  const SecondQuantizedOperator& x2,
                                                  const SecondQuantizedOperator& x3) {
    const Eigen::MatrixXd c = covariance_matrix(state, {&x2, &x3});
    return min_eig_and_angle(c(0, 0), c(0, 1), c(1, 1));
}

std::pair<double, double> transverse_min_variance(const ManyBodyState& state,
                                                  const Su2Triad& triad) {
    const GeneratorBasis basis;
    const auto x2 = second_quantize(state.basis, triad.x2.to_matrix(basis));
    const auto x3 = second_quantize(state.basis, triad.x3.to_matrix(basis));
    return transverse_min_variance(state, x2, x3);
}

namespace {

// diagonal twisting phases on a precomputed weight-squared table
ManyBodyState evolve_diagonal(const ManyBodyState& ref, const Eigen::VectorXd& d2,
                              double chi_t) {
    ManyBodyState s{ref.basis, Eigen::VectorXcd(ref.amplitudes.size())};
    for (Eigen::Index i = 0; i < ref.amplitudes.size(); ++i)
        s.amplitudes[i] = ref.amplitudes[i] * std::polar(1.0, -chi_t * d2[i]);
    return s;
}

} // namespace

SqueezeResult run_squeezing(int n_particles, const Spinor& s, SqueezeFamily family,
                            const TwistingSchedule* schedule, unsigned seed) {
    if (n_particles < 2)
        throw Error("squeezing run needs at least two particles");
    const GeneratorBasis basis;

    // reachability of the input spinor from the family reference; the run
    // itself is frame-invariant, so it proceeds in the co-rotated frame
    (void)solve_angles(basis, s, family, seed);

    TwistingSchedule sched = schedule ? *schedule : default_schedule(basis, n_particles);
    sched.validate();

    const auto fock = build_basis(n_particles);
    const Eigen::Vector3cd ref = reference_spinor(basis, family);
    const ManyBodyState psi0 =
        coherent_state(fock, Spinor{{ref[0], ref[1], ref[2]}});

    const int a2 = (family == SqueezeFamily::type1) ? kJy : kQxy;
    const auto x2 = second_quantize(fock, basis[a2]);
    const auto x3 = second_quantize(fock, basis[kJz]);

    Eigen::VectorXd d2(fock->dimension());
    for (int i = 0; i < fock->dimension(); ++i) {
        const Occupation& occ = fock->occupation(i);
        const double d = sched.twist_kernel(0, 0).real() * occ.n1 +
                         sched.twist_kernel(1, 1).real() * occ.n0 +
                         sched.twist_kernel(2, 2).real() * occ.nm1;
        d2[i] = d * d;
    }

    SqueezeResult res;
    res.n_particles = n_particles;
    res.squeeze_type = static_cast<int>(family);
    res.series.reserve(sched.chi_t_values.size());

    size_t argmin = 0;
    for (size_t i = 0; i < sched.chi_t_values.size(); ++i) {
        const double t = sched.chi_t_values[i];
        const auto [var, nu] = transverse_min_variance(evolve_diagonal(psi0, d2, t), x2, x3);
        res.series.push_back({t, var, nu});
        if (var < res.series[argmin].min_variance) argmin = i;
    }
    if (argmin == 0 || argmin + 1 == res.series.size())
        throw ScheduleMiss("variance minimum sits on a schedule endpoint");

    auto objective = [&](double t) {
        return transverse_min_variance(evolve_diagonal(psi0, d2, t), x2, x3).first;
    };
    const auto [t_opt, v_opt] = detail::golden_section(
        objective, res.series[argmin - 1].chi_t, res.series[argmin + 1].chi_t, 1e-6);

    res.chi_t_opt = t_opt;
    res.min_variance = v_opt;
    res.nu_opt = transverse_min_variance(evolve_diagonal(psi0, d2, t_opt), x2, x3).second;
    res.initial_variance = transverse_min_variance(psi0, x2, x3).first;
    res.squeezing_db =
        10.0 * std::log10(std::max(res.min_variance, 1e-300) / res.initial_variance);

    if (res.min_variance > res.initial_variance || res.squeezing_db > 0.0)
        throw Error("squeezing run produced no squeezing; result invariant violated");
    return res;
}

AsymptoticPrediction asymptotic_prediction(int n_particles, SqueezeFamily family) {
    if (n_particles < 10)
        throw Error("asymptotic formulas need N >= 10");
    const double n = n_particles;
    AsymptoticPrediction p;
    if (family == SqueezeFamily::type1) {
        p.min_variance = 0.25 * std::cbrt(9.0 * n / 4.0);
        p.chi_t_opt = std::pow(3.0 / (8.0 * n * n * n * n), 1.0 / 6.0);
    } else {
        p.min_variance = 0.5 * std::cbrt(9.0 * n);
        p.chi_t_opt = std::pow(6.0 / (n * n * n * n), 1.0 / 6.0);
    }
    p.nu_opt = nu_formula(n_particles, family, p.chi_t_opt);
    return p;
}

double nu_formula(int n_particles, SqueezeFamily family, double chi_t) {
    const double linear = (family == SqueezeFamily::type1) ? chi_t : 2.0 * chi_t;
    return 0.5 * (std::atan(n_particles * chi_t) - linear);
}

SweepResult sweep_scaling(const std::vector<int>& n_list, SqueezeFamily family,
                          const Spinor& s, unsigned seed) {
    if (n_list.size() < 4)
        throw Error("sweep needs at least four particle numbers");
    int prev = 0;
    for (int n : n_list) {
        if (n < 20) throw Error("sweep entries must be at least 20");
        if (n <= prev) throw Error("sweep entries must be ascending");
        prev = n;
    }

    SweepResult out;
    out.runs.reserve(n_list.size());
    for (int n : n_list) out.runs.push_back(run_squeezing(n, s, family, nullptr, seed));

    // least squares on log(min_variance) = slope log(N) + intercept
    const double m = static_cast<double>(n_list.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& r : out.runs) {
        const double x = std::log(static_cast<double>(r.n_particles));
        const double y = std::log(r.min_variance);
        sx += x; sy += y; sxx += x * x; sxy += x * y;
    }
    out.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    out.intercept = (sy - out.slope * sx) / m;
    double ss = 0;
    for (const auto& r : out.runs) {
        const double x = std::log(static_cast<double>(r.n_particles));
        const double y = std::log(r.min_variance);
        const double e = y - (out.slope * x + out.intercept);
        ss += e * e;
    }
    out.residual = std::sqrt(ss / m);
    return out;
}

} // namespace spinsq
