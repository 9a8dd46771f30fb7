#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <complex>
#include <functional>
#include <random>
#include <vector>

#include "qfo/modes.hpp"

namespace qfo::test {

/// Haar-ish random unitary via QR with a fixed phase convention
/// (deterministic for a given generator state).
inline Eigen::MatrixXcd random_unitary(std::mt19937_64& rng, int n) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXcd a(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) a(r, c) = cplx{gauss(rng), gauss(rng)};
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(a);
    Eigen::MatrixXcd q = qr.householderQ();
    Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < n; ++i) {
        cplx d = r(i, i);
        q.col(i) *= d / std::abs(d);
    }
    return q;
}

inline std::vector<cplx> random_unimodular(std::mt19937_64& rng, int n) {
    std::uniform_real_distribution<double> uni(-3.141592653589793,
                                               3.141592653589793);
    std::vector<cplx> d(n);
    for (auto& v : d) v = std::polar(1.0, uni(rng));
    return d;
}

/// O(n!) permanent by explicit permutation sum; oracle for Ryser.
inline cplx naive_permanent(const Eigen::MatrixXcd& a) {
    const int n = static_cast<int>(a.rows());
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    cplx total{};
    do {
        cplx prod{1.0, 0.0};
        for (int i = 0; i < n; ++i) prod *= a(i, perm[i]);
        total += prod;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

/// All occupation patterns with `photons` photons over `modes` modes.
inline std::vector<OccupationPattern> all_patterns(int modes, int photons) {
    std::vector<OccupationPattern> out;
    OccupationPattern p(modes, 0);
    // place photons one at a time, non-decreasing mode index
    std::function<void(int, int)> rec = [&](int from, int left) {
        if (left == 0) {
            out.push_back(p);
            return;
        }
        for (int m = from; m < modes; ++m) {
            ++p[m];
            rec(m, left - 1);
            --p[m];
        }
    };
    rec(0, photons);
    return out;
}

}  // namespace qfo::test
