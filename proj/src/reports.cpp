#include "spinsq/reports.hpp"

#include <fmt/format.h>

namespace spinsq::reports {

std::string number(double x) { return fmt::format("{:.17g}", x); }

namespace {

std::string vec8_json(const Vec8& v) {
    std::string out = "[";
    for (int i = 0; i < 8; ++i) {
        if (i) out += ',';
        out += number(v[i]);
    }
    return out + "]";
}

} // namespace

std::string algebra_json(const AlgebraReport& r) {
    std::string out = fmt::format("{{\"antisymmetry_max\":{},\"jacobi_max\":{},\"roots\":[",
                                  number(r.antisymmetry_max), number(r.jacobi_max));
    for (size_t i = 0; i < r.diagram.size(); ++i) {
        if (i) out += ',';
        out += fmt::format("[{},{}]", number(r.diagram[i].first.alpha1),
                           number(r.diagram[i].first.alpha2));
    }
    out += "],\"triads\":[";
    for (size_t i = 0; i < r.triads.size(); ++i) {
        if (i) out += ',';
        const Su2Triad& t = r.triads[i];
        out += fmt::format("{{\"members\":[{},{},{}],\"lambda\":{}}}", vec8_json(t.x1.coeffs),
                           vec8_json(t.x2.coeffs), vec8_json(t.x3.coeffs), number(t.lambda));
    }
    out += "],\"appendix_b\":[";
    for (size_t i = 0; i < r.appendix_b.size(); ++i) {
        if (i) out += ',';
        const RaisingSolution& s = r.appendix_b[i];
        out += fmt::format("{{\"c1\":{},\"c2\":{},\"lambda\":{},\"residual\":{}}}", number(s.c1),
                           number(s.c2), number(s.lambda), number(s.residual));
    }
    return out + "]}";
}

std::string squeeze_json(const SqueezeResult& r) {
    std::string out = fmt::format(
        "{{\"N\":{},\"type\":{},\"chi_t_opt\":{},\"min_variance\":{},\"nu_opt\":{},"
        "\"initial_variance\":{},\"squeezing_db\":{},\"series\":[",
        r.n_particles, r.squeeze_type, number(r.chi_t_opt), number(r.min_variance),
        number(r.nu_opt), number(r.initial_variance), number(r.squeezing_db));
    for (size_t i = 0; i < r.series.size(); ++i) {
        if (i) out += ',';
        out += fmt::format("[{},{},{}]", number(r.series[i].chi_t),
                           number(r.series[i].min_variance), number(r.series[i].nu));
    }
    return out + "]}";
}

std::string sweep_json(const SweepResult& r) {
    std::string out = fmt::format("{{\"slope\":{},\"intercept\":{},\"residual\":{},\"runs\":[",
                                  number(r.slope), number(r.intercept), number(r.residual));
    for (size_t i = 0; i < r.runs.size(); ++i) {
        if (i) out += ',';
        const SqueezeResult& q = r.runs[i];
        out += fmt::format(
            "{{\"N\":{},\"type\":{},\"min_variance\":{},\"chi_t_opt\":{},\"nu_opt\":{},"
            "\"squeezing_db\":{}}}",
            q.n_particles, q.squeeze_type, number(q.min_variance), number(q.chi_t_opt),
            number(q.nu_opt), number(q.squeezing_db));
    }
    return out + "]}";
}

std::string series_csv(const SqueezeResult& r) {
    std::string out = "chi_t,min_variance,nu\n";
    for (const auto& s : r.series)
        out += fmt::format("{},{},{}\n", number(s.chi_t), number(s.min_variance), number(s.nu));
    return out;
}

std::string sweep_csv(const SweepResult& r) {
    std::string out = "N,min_variance,chi_t_opt\n";
    for (const SqueezeResult& q : r.runs)
        out += fmt::format("{},{},{}\n", q.n_particles, number(q.min_variance),
                           number(q.chi_t_opt));
    out += fmt::format("slope,{}\n", number(r.slope));
    return out;
}

std::string state_csv(const ManyBodyState& s) {
    std::string out = "n1,n0,nm1,re,im\n";
    for (int i = 0; i < s.basis->dimension(); ++i) {
        const Occupation& o = s.basis->occupation(i);
        out += fmt::format("{},{},{},{},{}\n", o.n1, o.n0, o.nm1, number(s.amplitudes[i].real()),
                           number(s.amplitudes[i].imag()));
    }
    return out;
}

std::string operator_csv(const SecondQuantizedOperator& op) {
    std::string out = "row,col,re,im\n";
    const Eigen::SparseMatrix<cplx>& m = op.matrix();
    for (int k = 0; k < m.outerSize(); ++k)
        for (Eigen::SparseMatrix<cplx>::InnerIterator it(m, k); it; ++it)
            out += fmt::format("{},{},{},{}\n", it.row(), it.col(), number(it.value().real()),
                               number(it.value().imag()));
    return out;
}

} // namespace spinsq::reports
