#pragma once

#include <Eigen/Dense>
#include <variant>
#include <vector>

#include "qfo/modes.hpp"

namespace qfo {

/// Periodic phase-only pupil as a truncated Fourier series,
/// phi_p(theta) = sum_n S_n sin(n theta) + C_n cos(n theta) with
/// theta = kappa_x * x. kappa_x is carried for the continuous scenes;
/// the discrete layer math is dimensionless.
struct PupilProfile {
    int harmonics = 0;
    std::vector<double> sin_coeffs;  // S_1..S_R
    std::vector<double> cos_coeffs;  // C_1..C_R
    double kappa_x = 0.0;

    double phase_at(double theta) const;
    void validate() const;
};

/// Per-mode modulator phases, length M, internal index order.
struct DiagonalPhases {
    std::vector<double> phi;
};

enum class TransformKind { Circulant, Diagonal, Composite };

/// M x M unitary on lattice-mode creation operators, row = input mode,
/// column = output mode (creation operators transform as a row vector).
struct ModeTransform {
    Eigen::MatrixXcd matrix;
    TransformKind kind = TransformKind::Composite;

    int size() const { return static_cast<int>(matrix.rows()); }
};

/// Samples the pupil phase factor, d_j = exp(-i phi_p(2 pi j / M)).
/// Requires M >= 2R + 1.
std::vector<cplx> sample_pupil(const PupilProfile& profile, int modes);

/// Cyclic Fourier coefficients P_k = (1/M) sum_j d_j w^{jk}, w = exp(i 2 pi / M).
std::vector<cplx> fourier_coeffs(const std::vector<cplx>& samples);

/// Circulant layer T[n][r] = P_{(n+r) mod M}. Unitary whenever all |d_j| = 1.
ModeTransform circulant_from_samples(const std::vector<cplx>& samples);

/// Diagonal layer D[r][r] = exp(-i phi_r).
ModeTransform diagonal_transform(const DiagonalPhases& phases);

/// 8f stack: circulant(pupil1) * diagonal * circulant(pupil2).
ModeTransform compose_8f(const PupilProfile& pupil1, const DiagonalPhases& diag,
                         const PupilProfile& pupil2, int modes);

using Layer = std::variant<PupilProfile, DiagonalPhases>;

/// Ordered product of alternating circulant / diagonal layers.
ModeTransform layered_stack(const std::vector<Layer>& layers, int modes);

/// Largest |(T^dag T - I)| entry; the unitarity defect.
double unitarity_defect(const Eigen::MatrixXcd& m);

}  // namespace qfo
