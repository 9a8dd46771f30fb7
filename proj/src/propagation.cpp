#include "qfo/propagation.hpp"

#include <fftw3.h>

#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>

namespace qfo {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kEdgeEnergyTol = 1e-6;
constexpr double kParaxialBound = 0.01;  // (kappa/k)^2 limit

class FftPlans {
  public:
    explicit FftPlans(int n) : n_(n) {
        buf_ = fftw_alloc_complex(n);
        fwd_ = fftw_plan_dft_1d(n, buf_, buf_, FFTW_FORWARD, FFTW_ESTIMATE);
        bwd_ = fftw_plan_dft_1d(n, buf_, buf_, FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    ~FftPlans() {
        fftw_destroy_plan(fwd_);
        fftw_destroy_plan(bwd_);
        fftw_free(buf_);
    }
    FftPlans(const FftPlans&) = delete;
    FftPlans& operator=(const FftPlans&) = delete;

    void forward(std::vector<cplx>& v) { run(fwd_, v); }
    void backward(std::vector<cplx>& v) { run(bwd_, v); }

  private:
    void run(fftw_plan plan, std::vector<cplx>& v) {
        auto* data = reinterpret_cast<fftw_complex*>(v.data());
        fftw_execute_dft(plan, data, data);
    }
    int n_;
    fftw_complex* buf_;
    fftw_plan fwd_;
    fftw_plan bwd_;
};

FftPlans& plans_for(int n) {
    static std::mutex mu;
    static std::map<int, std::unique_ptr<FftPlans>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[n];
    if (!slot) slot = std::make_unique<FftPlans>(n);
    return *slot;
}

double total_power(const std::vector<cplx>& field) {
    double p = 0.0;
    for (const cplx& v : field) p += std::norm(v);
    return p;
}

void check_edge_energy(const std::vector<cplx>& field) {
    const int n = static_cast<int>(field.size());
    double edge = 0.0;
    for (int i = 0; i < 2; ++i)
        edge += std::norm(field[i]) + std::norm(field[n - 1 - i]);
    double total = total_power(field);
    if (total > 0.0 && edge > kEdgeEnergyTol * total)
        throw physics_error("field energy reached the grid boundary");
}

}  // namespace

double PropagationScene::wavenumber() const { return kTwoPi / wavelength; }

void PropagationScene::validate() const {
    const double k = wavenumber();
    const double half = grid.extent / 2.0;
    for (const auto& el : elements) {
        if (const auto* lens = std::get_if<ThinLens>(&el)) {
            if (lens->focal == 0.0) throw physics_error("zero focal length");
            double ratio = half / std::abs(lens->focal);
            if (ratio * ratio >= kParaxialBound)
                throw physics_error("lens phase violates the paraxial bound");
        } else if (const auto* pupil = std::get_if<PupilElement>(&el)) {
            double kappa_max = pupil->profile.harmonics * pupil->kappa_x;
            if ((kappa_max / k) * (kappa_max / k) >= kParaxialBound)
                throw physics_error("pupil frequency violates the paraxial bound");
        } else if (const auto* fs = std::get_if<FreeSpace>(&el)) {
            if (fs->dz < 0.0) throw physics_error("negative propagation step");
        }
    }
    for (const auto& [mode, src] : sources) {
        double spectral = 2.0 / (src.waist * k);
        if (spectral * spectral >= kParaxialBound)
            throw physics_error("source waist violates the paraxial bound");
        if (std::abs(src.center) + 4.0 * src.waist > half)
            throw physics_error("grid does not cover a source plus 4 waists");
    }
}

void angular_spectrum_step(std::vector<cplx>& field, double dz, double wavelength,
                           const Grid& grid) {
    if (dz < 0.0) throw physics_error("negative propagation step");
    if (dz == 0.0) return;
    check_edge_energy(field);
    const int n = grid.points;
    const double k = kTwoPi / wavelength;
    auto& fft = plans_for(n);
    fft.forward(field);
    for (int j = 0; j < n; ++j) {
        int m = j < (n + 1) / 2 ? j : j - n;
        double kx = kTwoPi * m / grid.extent;
        field[j] *= std::polar(1.0 / n, -kx * kx * dz / (2.0 * k));
    }
    fft.backward(field);
}

void thin_lens(std::vector<cplx>& field, double focal, double wavelength,
               const Grid& grid) {
    if (focal == 0.0) throw physics_error("zero focal length");
    const double k = kTwoPi / wavelength;
    for (int i = 0; i < grid.points; ++i) {
        double x = grid.x(i);
        field[i] *= std::polar(1.0, -k * x * x / (2.0 * focal));
    }
}

std::vector<cplx> source_field(const Grid& grid, const GaussianSource& src) {
    std::vector<cplx> field(grid.points);
    double norm = 0.0;
    for (int i = 0; i < grid.points; ++i) {
        double u = (grid.x(i) - src.center) / src.waist;
        field[i] = std::exp(-u * u);
        norm += std::norm(field[i]);
    }
    double scale = 1.0 / std::sqrt(norm);
    for (auto& v : field) v *= scale;
    return field;
}

namespace {

void apply_element(std::vector<cplx>& field, const SceneElement& el,
                   const PropagationScene& scene) {
    if (const auto* lens = std::get_if<ThinLens>(&el)) {
        thin_lens(field, lens->focal, scene.wavelength, scene.grid);
    } else if (const auto* pupil = std::get_if<PupilElement>(&el)) {
        for (int i = 0; i < scene.grid.points; ++i) {
            double theta = -pupil->kappa_x * scene.grid.x(i);  // mirrored axis
            field[i] *= std::polar(1.0, -pupil->profile.phase_at(theta));
        }
    } else if (const auto* mod = std::get_if<ModulatorElement>(&el)) {
        for (int i = 0; i < scene.grid.points; ++i) {
            int label = static_cast<int>(std::lround(scene.grid.x(i) / mod->lattice));
            if (!mod->window.contains_label(label)) continue;
            double phi = mod->phases.phi[mod->window.to_internal(label)];
            field[i] *= std::polar(1.0, -phi);
        }
    }
}

}  // namespace

std::vector<cplx> propagate_field(const PropagationScene& scene,
                                  std::vector<cplx> field) {
    scene.validate();
    for (const auto& el : scene.elements) {
        if (const auto* fs = std::get_if<FreeSpace>(&el))
            angular_spectrum_step(field, fs->dz, scene.wavelength, scene.grid);
        else
            apply_element(field, el, scene);
    }
    return field;
}

IntensityMap propagate_scene(const PropagationScene& scene,
                             const Eigen::MatrixXcd& rho1) {
    scene.validate();
    const int m = static_cast<int>(rho1.rows());
    const int nx = scene.grid.points;

    std::vector<int> occupied;
    for (int l = 0; l < m; ++l)
        if (rho1.row(l).cwiseAbs().maxCoeff() > 1e-15 ||
            rho1.col(l).cwiseAbs().maxCoeff() > 1e-15)
            occupied.push_back(l);

    std::vector<std::vector<cplx>> fields;
    for (int l : occupied) {
        auto it = scene.sources.find(l);
        if (it == scene.sources.end())
            throw physics_error("occupied mode has no source definition");
        fields.push_back(source_field(scene.grid, it->second));
    }

    int rows = 1;
    for (const auto& el : scene.elements)
        if (std::holds_alternative<FreeSpace>(el)) rows += scene.z_samples;

    IntensityMap map;
    map.x.resize(nx);
    for (int i = 0; i < nx; ++i) map.x[i] = scene.grid.x(i);
    map.z.reserve(rows);
    map.intensity.resize(rows, nx);

    auto record = [&](double z, int row) {
        map.z.push_back(z);
        for (int i = 0; i < nx; ++i) {
            cplx acc{};
            for (size_t a = 0; a < occupied.size(); ++a)
                for (size_t b = 0; b < occupied.size(); ++b)
                    acc += rho1(occupied[a], occupied[b]) * fields[a][i] *
                           std::conj(fields[b][i]);
            map.intensity(row, i) = acc.real();
        }
    };

    double z = 0.0;
    int row = 0;
    record(z, row++);
    for (const auto& el : scene.elements) {
        if (const auto* fs = std::get_if<FreeSpace>(&el)) {
            double dz = fs->dz / scene.z_samples;
            for (int s = 0; s < scene.z_samples; ++s) {
                for (auto& f : fields)
                    angular_spectrum_step(f, dz, scene.wavelength, scene.grid);
                z += dz;
                record(z, row++);
            }
        } else {
            for (auto& f : fields) apply_element(f, el, scene);
        }
    }
    return map;
}

double SceneParams::pupil_kappa() const {
    return (kTwoPi / wavelength) * lattice / focal;
}

PropagationScene make_free_scene(const SceneParams& p, double dz) {
    PropagationScene scene;
    scene.grid = p.grid;
    scene.wavelength = p.wavelength;
    scene.z_samples = p.z_samples;
    scene.elements = {FreeSpace{dz}};
    for (int i = 0; i < p.window.size; ++i)
        scene.sources[i] =
            GaussianSource{p.window.to_label(i) * p.lattice, p.waist};
    return scene;
}

PropagationScene make_4f_scene(const SceneParams& p, const PupilProfile& pupil) {
    PropagationScene scene = make_free_scene(p, p.focal);
    scene.elements = {FreeSpace{p.focal}, ThinLens{p.focal}, FreeSpace{p.focal},
                      PupilElement{pupil, p.pupil_kappa()},
                      FreeSpace{p.focal}, ThinLens{p.focal}, FreeSpace{p.focal}};
    return scene;
}

PropagationScene make_8f_scene(const SceneParams& p, const PupilProfile& pupil1,
                               const DiagonalPhases& diag,
                               const PupilProfile& pupil2) {
    PropagationScene scene = make_free_scene(p, p.focal);
    const double f = p.focal;
    const double kappa = p.pupil_kappa();
    scene.elements = {FreeSpace{f}, ThinLens{f}, FreeSpace{f},
                      PupilElement{pupil1, kappa},
                      FreeSpace{f}, ThinLens{f}, FreeSpace{f},
                      ModulatorElement{diag, p.lattice, p.window},
                      FreeSpace{f}, ThinLens{f}, FreeSpace{f},
                      PupilElement{pupil2, kappa},
                      FreeSpace{f}, ThinLens{f}, FreeSpace{f}};
    return scene;
}

}  // namespace qfo
