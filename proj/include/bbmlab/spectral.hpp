#pragma once

#include <functional>

#include "bbmlab/field.hpp"
#include "bbmlab/trace.hpp"

namespace bbmlab {

/// Fourier multiplier m(xi), evaluated at every grid wavenumber.
using Multiplier = std::function<Complex(double)>;

/// Multiplies every mode by m(xi_k). The result is the real part of the
/// filtered field, which is the exact result when m(-xi) = conj(m(xi)).
/// Throws MultiplierDomainError if m is non-finite at a grid wavenumber.
Field apply_multiplier(const Field& f, const Multiplier& m);

/// Two-thirds rule: zeroes every mode with |k| > n/3.
Field dealias(const Field& f);

/// Trapezoidal L2 norm of the physical samples.
double l2_norm(const Field& f);

/// H^s norm by discrete Parseval, weighted so s = 0 equals l2_norm.
/// Throws OutOfScopeError for s < 0.
double sobolev_norm(const Field& f, double s);

/// Discrete mixed norm (int (int |f|^p dx)^{q/p} dt)^{1/q}, trapezoidal in
/// time and space. Requires finite q, p >= 1 and strictly increasing times.
double lp_tx_norm(const Trace& trace, double q, double p);

/// Smooth low-pass profile: 1 on |xi| <= 9/5, 0 on |xi| >= 2.
double lp_lowpass_profile(double xi);

/// Littlewood-Paley bump eta(xi) = phi(xi) - phi(2 xi). Equals 1 on
/// 6/5 <= |xi| <= 9/5, vanishes outside 1/2 < |xi| < 2, and its dyadic
/// dilates sum to 1 away from the origin.
double lp_cutoff(double xi);

enum class Projection {
    single_shell,  ///< P_N: modes times eta(xi/N)
    low_pass,      ///< P_{<=N}: modes times phi(xi/N); keeps the mean
    high_pass,     ///< sharp: zero every |xi| <= N
};

Field lp_project(const Field& f, double N, Projection mode);

}  // namespace bbmlab
