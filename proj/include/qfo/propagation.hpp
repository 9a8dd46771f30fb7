#pragma once

#include <Eigen/Dense>
#include <map>
#include <variant>
#include <vector>

#include "qfo/layers.hpp"
#include "qfo/modes.hpp"

namespace qfo {

struct physics_error : error {
    using error::error;
};

/// Uniform 1D grid centered on the optical axis.
struct Grid {
    int points = 4096;
    double extent = 3.2e-3;  // meters

    double dx() const { return extent / points; }
    double x(int i) const { return (i - points / 2) * dx(); }
};

struct FreeSpace {
    double dz;
};
struct ThinLens {
    double focal;
};
/// Periodic pupil at a Fourier plane. The pupil axis is mirrored relative
/// to the lattice axis so that the realized circulant matches the discrete
/// layer's coefficient indexing (P_{n+r} with w^{+jk} coefficients).
struct PupilElement {
    PupilProfile profile;
    double kappa_x;
};
/// Lattice-cell step-phase modulator; cells outside the window pass through.
struct ModulatorElement {
    DiagonalPhases phases;
    double lattice;
    ModeWindow window;
};

using SceneElement = std::variant<FreeSpace, ThinLens, PupilElement, ModulatorElement>;

struct GaussianSource {
    double center;  // meters
    double waist;   // 1/e amplitude radius, meters
};

struct PropagationScene {
    Grid grid;
    double wavelength = 650e-9;
    std::vector<SceneElement> elements;
    std::map<int, GaussianSource> sources;  // internal mode index -> spot
    int z_samples = 64;                     // planes per free-space segment

    double wavenumber() const;
    /// Paraxial and coverage checks; throws physics_error on violation.
    void validate() const;
};

/// Intensity rows at sampled z planes.
struct IntensityMap {
    std::vector<double> z;
    std::vector<double> x;
    Eigen::MatrixXd intensity;  // z rows, x columns
};

/// Paraxial free-space transfer, unitary in the frequency domain.
/// Throws physics_error when edge energy exceeds the aliasing guard.
void angular_spectrum_step(std::vector<cplx>& field, double dz, double wavelength,
                           const Grid& grid);

/// Quadratic lens phase exp(-i k x^2 / (2 f)).
void thin_lens(std::vector<cplx>& field, double focal, double wavelength,
               const Grid& grid);

/// Runs one field through every element; no z sampling.
std::vector<cplx> propagate_field(const PropagationScene& scene,
                                  std::vector<cplx> field);

/// Normalized Gaussian source field for one mode.
std::vector<cplx> source_field(const Grid& grid, const GaussianSource& src);

/// Propagates one field per occupied mode and combines them with the
/// one-photon density matrix: I(x,z) = sum_{l,l'} rho[l][l'] u_l conj(u_l').
IntensityMap propagate_scene(const PropagationScene& scene,
                             const Eigen::MatrixXcd& rho1);

/// Scene construction from physical table-top parameters.
struct SceneParams {
    double lattice = 100e-6;
    double wavelength = 650e-9;
    double focal = 2.5e-2;
    double waist = 10e-6;
    Grid grid{4096, 3.2e-3};
    int z_samples = 64;
    ModeWindow window{16, 8};

    double pupil_kappa() const;  // lattice-matching condition k l_x / f
};

PropagationScene make_free_scene(const SceneParams& p, double dz);
PropagationScene make_4f_scene(const SceneParams& p, const PupilProfile& pupil);
PropagationScene make_8f_scene(const SceneParams& p, const PupilProfile& pupil1,
                               const DiagonalPhases& diag,
                               const PupilProfile& pupil2);

}  // namespace qfo
