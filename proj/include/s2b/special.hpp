#pragma once

namespace s2b {

/// ln^-(t) = -ln t for t < 1, else 0 (non-negative, decreasing).
double ln_minus(double t);

/// ln^+(t) = ln t for t >= 1, else 0.
double ln_plus(double t);

/// Dilogarithm Li2(z) for z in [0, 1]. Power series for small z, the
/// standard reflection through 1 - z otherwise; relative accuracy ~1e-15.
double dilog(double z);

}  // namespace s2b
