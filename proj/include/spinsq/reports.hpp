#ifndef SPINSQ_REPORTS_HPP
#define SPINSQ_REPORTS_HPP

// serialization of algebra and squeezing results to JSON and CSV

#include <string>
#include <utility>
#include <vector>

#include "spinsq/algebra.hpp"
#include "spinsq/fock.hpp"
#include "spinsq/squeezing.hpp"

namespace spinsq::reports {

// decimal form with 17 significant digits; re-parses to the identical double
std::string number(double x);

struct AlgebraReport {
    double antisymmetry_max = 0.0;
    double jacobi_max = 0.0;
    std::vector<std::pair<RootVector, EigenOperator>> diagram;
    std::vector<Su2Triad> triads;
    std::vector<RaisingSolution> appendix_b;
};

std::string algebra_json(const AlgebraReport& r);

std::string squeeze_json(const SqueezeResult& r);
std::string sweep_json(const SweepResult& r);

// header `chi_t,min_variance,nu`, one row per schedule point
std::string series_csv(const SqueezeResult& r);
// header `N,min_variance,chi_t_opt`, one row per run, then a `slope,<..>` line
std::string sweep_csv(const SweepResult& r);
// header `n1,n0,nm1,re,im`, one row per Fock amplitude
std::string state_csv(const ManyBodyState& s);
// header `row,col,re,im`, one row per stored sparse entry
std::string operator_csv(const SecondQuantizedOperator& op);

} // namespace spinsq::reports

#endif
