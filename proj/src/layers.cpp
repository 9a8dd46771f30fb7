#include "qfo/layers.hpp"

#include <cmath>
#include <numbers>

namespace qfo {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kUnitarityTol = 1e-10;
}  // namespace

double PupilProfile::phase_at(double theta) const {
    double phi = 0.0;
    for (int n = 1; n <= harmonics; ++n)
        phi += sin_coeffs[n - 1] * std::sin(n * theta) +
               cos_coeffs[n - 1] * std::cos(n * theta);
    return phi;
}

void PupilProfile::validate() const {
    if (harmonics < 0) throw error("negative harmonic count");
    if (static_cast<int>(sin_coeffs.size()) != harmonics ||
        static_cast<int>(cos_coeffs.size()) != harmonics)
        throw error("pupil coefficient arrays do not match harmonic count");
}

std::vector<cplx> sample_pupil(const PupilProfile& profile, int modes) {
    profile.validate();
    if (modes < 2 * profile.harmonics + 1)
        throw error("mode count below the Nyquist bound 2R+1");
    std::vector<cplx> d(modes);
    for (int j = 0; j < modes; ++j) {
        double phi = profile.phase_at(kTwoPi * j / modes);
        d[j] = std::polar(1.0, -phi);
    }
    return d;
}

std::vector<cplx> fourier_coeffs(const std::vector<cplx>& samples) {
    const int m = static_cast<int>(samples.size());
    std::vector<cplx> p(m, cplx{});
    for (int k = 0; k < m; ++k) {
        cplx acc{};
        for (int j = 0; j < m; ++j)
            acc += samples[j] * std::polar(1.0, kTwoPi * j * k / m);
        p[k] = acc / static_cast<double>(m);
    }
    return p;
}

ModeTransform circulant_from_samples(const std::vector<cplx>& samples) {
    const int m = static_cast<int>(samples.size());
    if (m < 2) throw error("circulant layer needs at least 2 modes");
    for (const cplx& d : samples)
        if (std::abs(std::abs(d) - 1.0) > 1e-12)
            throw error("pupil samples must be unimodular");

    const std::vector<cplx> p = fourier_coeffs(samples);
    ModeTransform t;
    t.kind = TransformKind::Circulant;
    t.matrix.resize(m, m);
    for (int n = 0; n < m; ++n)
        for (int r = 0; r < m; ++r) t.matrix(n, r) = p[(n + r) % m];
    if (unitarity_defect(t.matrix) > kUnitarityTol)
        throw error("circulant layer failed the unitarity check");
    return t;
}

ModeTransform diagonal_transform(const DiagonalPhases& phases) {
    const int m = static_cast<int>(phases.phi.size());
    if (m < 2) throw error("diagonal layer needs at least 2 modes");
    ModeTransform t;
    t.kind = TransformKind::Diagonal;
    t.matrix = Eigen::MatrixXcd::Zero(m, m);
    for (int r = 0; r < m; ++r) t.matrix(r, r) = std::polar(1.0, -phases.phi[r]);
    return t;
}

ModeTransform compose_8f(const PupilProfile& pupil1, const DiagonalPhases& diag,
                         const PupilProfile& pupil2, int modes) {
    return layered_stack({pupil1, diag, pupil2}, modes);
}

ModeTransform layered_stack(const std::vector<Layer>& layers, int modes) {
    if (layers.empty()) throw error("empty layer stack");
    ModeTransform out;
    out.matrix = Eigen::MatrixXcd::Identity(modes, modes);
    bool want_pupil = std::holds_alternative<PupilProfile>(layers.front());
    for (const Layer& layer : layers) {
        if (std::holds_alternative<PupilProfile>(layer) != want_pupil)
            throw error("layer stack must alternate circulant and diagonal");
        want_pupil = !want_pupil;
        ModeTransform t;
        if (const auto* pupil = std::get_if<PupilProfile>(&layer)) {
            t = circulant_from_samples(sample_pupil(*pupil, modes));
        } else {
            const auto& d = std::get<DiagonalPhases>(layer);
            if (static_cast<int>(d.phi.size()) != modes)
                throw error("diagonal layer size mismatch");
            t = diagonal_transform(d);
        }
        out.matrix = out.matrix * t.matrix;
    }
    out.kind = layers.size() == 1 && std::holds_alternative<PupilProfile>(layers[0])
                   ? TransformKind::Circulant
                   : TransformKind::Composite;
    if (layers.size() == 1 && std::holds_alternative<DiagonalPhases>(layers[0]))
        out.kind = TransformKind::Diagonal;
    return out;
}

double unitarity_defect(const Eigen::MatrixXcd& m) {
    Eigen::MatrixXcd g = m.adjoint() * m;
    g -= Eigen::MatrixXcd::Identity(m.rows(), m.cols());
    return g.cwiseAbs().maxCoeff();
}

}  // namespace qfo
