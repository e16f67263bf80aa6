#pragma once

#include <cstddef>
#include <vector>

namespace s2b {

/// Kahan compensated accumulator. Used wherever a long reduction feeds an
/// identity that is checked at the 1e-10 .. 1e-14 level.
class KahanSum {
  public:
    void add(double x) {
        const double y = x - c_;
        const double t = s_ + y;
        c_ = (t - s_) - y;
        s_ = t;
    }
    double value() const { return s_; }

  private:
    double s_ = 0.0;
    double c_ = 0.0;
};

/// Pairwise reduction in fixed index order; deterministic for any thread
/// count because callers store partial sums per index before reducing.
inline double pairwise_sum(const double* v, std::size_t n) {
    if (n == 0) return 0.0;
    if (n <= 8) {
        KahanSum s;
        for (std::size_t i = 0; i < n; ++i) s.add(v[i]);
        return s.value();
    }
    const std::size_t half = n / 2;
    return pairwise_sum(v, half) + pairwise_sum(v + half, n - half);
}

inline double pairwise_sum(const std::vector<double>& v) {
    return pairwise_sum(v.data(), v.size());
}

}  // namespace s2b
