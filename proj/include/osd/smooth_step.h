#pragma once

#include "osd/jet.h"

namespace osd {

/// S(t) = f(t) / (f(t) + f(1-t)) with f(t) = exp(-1/t) for t > 0, else 0.
/// C-infinity, S = 0 for t <= 0, S = 1 for t >= 1, S(t) + S(1-t) = 1.
double smooth_step(double t);
Taylor1 smooth_step_taylor(double t, int order);

/// Integral of S over [0, t] for t in [0, 1]; equals 1/2 at t = 1.
double smooth_step_integral(double t);

/// Indicator of [a - margin, b + margin] convolved with the normalized kernel
/// S'(s/(2 radius) + 1/2) / (2 radius) of half-width radius, as Taylor data in x.
/// Equal to 1 on [a - margin + radius, b + margin - radius] and supported in
/// (a - margin - radius, b + margin + radius).
Taylor1 mollified_interval(double x, double a, double b, double margin,
                           double radius, int order);

}  // namespace osd
