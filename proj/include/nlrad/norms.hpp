#pragma once

#include <cstddef>
#include <span>

#include "nlrad/types.hpp"

namespace nlrad {

/// ||a - b||_p for p in {1, 2, inf}. Throws ArgumentError on dimension
/// mismatch.
double distance(std::span<const double> a, std::span<const double> b,
                Norm norm);

/// Volume of the d-dimensional unit ball in L_p:
///   L1 -> 2^d / d!,  L2 -> pi^(d/2) / Gamma(d/2 + 1),  Linf -> 2^d.
/// A ball of radius r has volume unit_ball_volume(norm, d) * r^d.
/// Exact integer factorials are used for L1 up to d = 20, log-Gamma beyond.
double unit_ball_volume(Norm norm, std::size_t d);

}  // namespace nlrad
