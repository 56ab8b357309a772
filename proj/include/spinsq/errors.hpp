#ifndef SPINSQ_ERRORS_HPP
#define SPINSQ_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace spinsq {

// Common base so callers can catch every library failure in one clause.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// algebra
struct NonOrthogonalBasis : Error { using Error::Error; };   // generator table fails tr(L_i L_j) = 2 delta_ij
struct DegenerateCartan   : Error { using Error::Error; };   // adjoint pair not simultaneously diagonalizable
struct NotClosed          : Error { using Error::Error; };   // triple does not close under commutation
struct UnexpectedSolution : Error { using Error::Error; };   // classification search found a stray minimum
struct NotHermitian       : Error { using Error::Error; };   // matrix expected Hermitian is not

// fock
struct SizeLimit          : Error { using Error::Error; };   // particle number outside supported range
struct ImaginaryResidual  : Error { using Error::Error; };   // expectation of a Hermitian operator came out complex

// dynamics
struct KernelNotDiagonal  : Error { using Error::Error; };   // twisting kernel must be diagonal in this basis
struct NoConvergence      : Error { using Error::Error; };   // angle solver failed to reach target fidelity

// squeezing
struct ScheduleMiss       : Error { using Error::Error; };   // variance minimum sits on a schedule endpoint

} // namespace spinsq

#endif
