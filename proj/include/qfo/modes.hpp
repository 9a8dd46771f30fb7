#pragma once

#include <complex>
#include <map>
#include <stdexcept>
#include <vector>

namespace qfo {

using cplx = std::complex<double>;

/// Maximum total photon number handled by the Fock-state machinery.
inline constexpr int kMaxPhotons = 3;

/// Amplitudes below this magnitude are dropped from pattern maps.
inline constexpr double kAmplitudeFloor = 1e-14;

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Window of M lattice modes. Mode arithmetic is cyclic on Z_M; signed
/// lattice labels map to internal indices 0..M-1 via `offset`
/// (label = internal - offset).
struct ModeWindow {
    int size = 0;
    int offset = 0;

    bool operator==(const ModeWindow&) const = default;

    int to_internal(int label) const {
        int i = (label + offset) % size;
        return i < 0 ? i + size : i;
    }
    int to_label(int internal) const { return internal - offset; }
    bool contains_label(int label) const {
        return label + offset >= 0 && label + offset < size;
    }
};

/// Per-mode photon counts, length M, internal index order.
using OccupationPattern = std::vector<int>;

int total_photons(const OccupationPattern& p);

/// n-photon state over a mode window as a sparse map from occupation
/// patterns to complex amplitudes. Sub-normalized states are legal
/// (post-selection outputs); constructors produce unit norm.
class PhotonicState {
  public:
    PhotonicState(ModeWindow window, int photon_number);

    const ModeWindow& window() const { return window_; }
    int photon_number() const { return photon_number_; }
    const std::map<OccupationPattern, cplx>& terms() const { return terms_; }

    /// Inserts or overwrites one amplitude; drops it when below the floor.
    void set_amplitude(const OccupationPattern& pattern, cplx amplitude);
    void add_amplitude(const OccupationPattern& pattern, cplx amplitude);
    cplx amplitude(const OccupationPattern& pattern) const;

    double norm_squared() const;

  private:
    ModeWindow window_;
    int photon_number_;
    std::map<OccupationPattern, cplx> terms_;
};

/// Dual-rail qubit layout: qubit b occupies lattice labels 2b (down)
/// and 2b+1 (up).
struct QubitLayout {
    ModeWindow window;
    std::vector<int> qubits;

    int mode_down(int b) const { return 2 * b; }
    int mode_up(int b) const { return 2 * b + 1; }
    bool has_qubit(int b) const;
    void validate() const;
};

/// Single-photon state xi_down |1>_{2b} + xi_up |1>_{2b+1}.
/// Requires |xi_down|^2 + |xi_up|^2 = 1 within 1e-9.
PhotonicState make_qubit_state(const QubitLayout& layout, int b, cplx xi_down,
                               cplx xi_up);

/// Tensor product of single-photon factors with pairwise-disjoint supports.
PhotonicState product_state(const std::vector<PhotonicState>& factors);

/// Per-mode expectation <n_l>, internal index order.
std::vector<double> mode_intensities(const PhotonicState& state);

}  // namespace qfo
