#pragma once

#include "mpt/config.hpp"

namespace mpt {

/// Duration of the control part of a frame carrying m streams: preamble,
/// M training sequences, m CSI reports and m ACKs, all sent at the lowest
/// rate. Independent of the data rate.
double control_duration(const ValidatedConfig& config, int m);

/// Total frame duration: control part plus the payload at the chosen rate.
double frame_duration(const ValidatedConfig& config, int m, double rate_bps);

/// Poisson pmf at v with the given mean, evaluated in log space so that
/// large means and counts neither overflow nor lose the exponent.
double poisson_pmf(double mean, int v);

/// Pr{V >= v} for V ~ Poisson(mean). Sums the small side of the
/// distribution, so tiny tails come out accurate instead of cancelling.
double poisson_tail(double mean, int v);

/// Probability of v Poisson arrivals of rate `lambda` during t seconds.
double arrivals_in_frame_pmf(double lambda, double t, int v);

}  // namespace mpt
