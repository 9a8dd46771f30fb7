#include "qfo/evolution.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>

namespace qfo {

namespace {

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

double pattern_factorial(const OccupationPattern& p) {
    double f = 1.0;
    for (int c : p) f *= factorial(c);
    return f;
}

}  // namespace

CoincidenceProjector CoincidenceProjector::for_qubits(const QubitLayout& layout,
                                                      int control, int target) {
    if (!layout.has_qubit(control) || !layout.has_qubit(target))
        throw error("projector qubit not present in layout");
    CoincidenceProjector p;
    p.control_down = layout.mode_down(control);
    p.control_up = layout.mode_up(control);
    p.target_down = layout.mode_down(target);
    p.target_up = layout.mode_up(target);
    p.validate();
    return p;
}

void CoincidenceProjector::validate() const {
    std::set<int> modes{control_down, control_up, target_down, target_up};
    if (modes.size() != 4) throw error("projector modes must be distinct");
}

PhotonicState evolve(const PhotonicState& state, const ModeTransform& t) {
    const int m = state.window().size;
    if (t.size() != m) throw error("transform dimension does not match state");

    PhotonicState out(state.window(), state.photon_number());
    for (const auto& [pattern, amp] : state.terms()) {
        // Monomial coefficient of the input creation-operator product.
        cplx base = amp / std::sqrt(pattern_factorial(pattern));
        // Expand photon by photon: multiply by row n of T per photon in mode n.
        std::map<OccupationPattern, cplx> poly{
            {OccupationPattern(m, 0), base}};
        for (int n = 0; n < m; ++n) {
            for (int rep = 0; rep < pattern[n]; ++rep) {
                std::map<OccupationPattern, cplx> next;
                for (const auto& [q, coeff] : poly)
                    for (int l = 0; l < m; ++l) {
                        cplx w = t.matrix(n, l);
                        if (std::abs(w) < kAmplitudeFloor) continue;
                        OccupationPattern q2 = q;
                        ++q2[l];
                        next[q2] += coeff * w;
                    }
                poly = std::move(next);
            }
        }
        for (const auto& [q, coeff] : poly)
            out.add_amplitude(q, coeff * std::sqrt(pattern_factorial(q)));
    }
    return out;
}

cplx permanent(const Eigen::MatrixXcd& a) {
    const int n = static_cast<int>(a.rows());
    if (n != a.cols()) throw error("permanent needs a square matrix");
    if (n == 0) return cplx{1.0, 0.0};
    if (n > 12) throw error("permanent dimension cap (12) exceeded");

    // Ryser with Gray-code subset updates.
    Eigen::VectorXcd row_sums = Eigen::VectorXcd::Zero(n);
    cplx total{};
    uint32_t gray = 0;
    const uint32_t count = 1u << n;
    for (uint32_t i = 1; i < count; ++i) {
        uint32_t next_gray = i ^ (i >> 1);
        uint32_t changed = gray ^ next_gray;
        int j = std::countr_zero(changed);
        double sign = (next_gray & changed) ? 1.0 : -1.0;
        row_sums += sign * a.col(j);
        gray = next_gray;

        cplx prod{1.0, 0.0};
        for (int r = 0; r < n; ++r) prod *= row_sums(r);
        total += (std::popcount(next_gray) % 2 == n % 2 ? 1.0 : -1.0) * prod;
    }
    return total;
}

cplx transition_amplitude(const OccupationPattern& in,
                          const OccupationPattern& out, const ModeTransform& t) {
    const int m = t.size();
    if (static_cast<int>(in.size()) != m || static_cast<int>(out.size()) != m)
        throw error("pattern length does not match transform");
    const int n = total_photons(in);
    if (n != total_photons(out)) throw error("photon-number mismatch");
    if (n == 0) return cplx{1.0, 0.0};

    Eigen::MatrixXcd sub(n, n);
    int row = 0;
    for (int i = 0; i < m; ++i)
        for (int rep = 0; rep < in[i]; ++rep, ++row) {
            int col = 0;
            for (int l = 0; l < m; ++l)
                for (int rep2 = 0; rep2 < out[l]; ++rep2, ++col)
                    sub(row, col) = t.matrix(i, l);
        }
    return permanent(sub) /
           std::sqrt(pattern_factorial(in) * pattern_factorial(out));
}

PhotonicState coincidence_project(const PhotonicState& state,
                                  const CoincidenceProjector& proj) {
    if (state.photon_number() != 2)
        throw error("coincidence projection expects a two-photon state");
    proj.validate();
    const ModeWindow& w = state.window();
    const int cd = w.to_internal(proj.control_down);
    const int cu = w.to_internal(proj.control_up);
    const int td = w.to_internal(proj.target_down);
    const int tu = w.to_internal(proj.target_up);

    PhotonicState out(w, 2);
    for (const auto& [pattern, amp] : state.terms()) {
        if (pattern[cd] + pattern[cu] == 1 && pattern[td] + pattern[tu] == 1)
            out.set_amplitude(pattern, amp);
    }
    return out;
}

GateOperator extract_single_qubit_operator(const ModeTransform& t,
                                           const QubitLayout& layout, int b) {
    if (!layout.has_qubit(b)) throw error("qubit not present in layout");
    if (t.size() != layout.window.size)
        throw error("transform dimension does not match layout window");
    const int up = layout.window.to_internal(layout.mode_up(b));
    const int dn = layout.window.to_internal(layout.mode_down(b));
    GateOperator op;
    op.matrix.resize(2, 2);
    op.matrix << t.matrix(up, up), t.matrix(up, dn),
                 t.matrix(dn, up), t.matrix(dn, dn);
    return op;
}

GateOperator extract_two_qubit_operator(const ModeTransform& t,
                                        const QubitLayout& layout, int control,
                                        int target) {
    if (control == target) throw error("control and target must differ");
    auto proj = CoincidenceProjector::for_qubits(layout, control, target);
    if (t.size() != layout.window.size)
        throw error("transform dimension does not match layout window");
    const ModeWindow& w = layout.window;
    // Basis order uu, ud, du, dd; first symbol is the control qubit.
    const int ctrl_mode[2] = {w.to_internal(proj.control_up),
                              w.to_internal(proj.control_down)};
    const int tgt_mode[2] = {w.to_internal(proj.target_up),
                             w.to_internal(proj.target_down)};

    GateOperator op;
    op.matrix.resize(4, 4);
    for (int out = 0; out < 4; ++out) {
        const int i = ctrl_mode[out / 2];
        const int j = tgt_mode[out % 2];
        for (int in = 0; in < 4; ++in) {
            const int n = ctrl_mode[in / 2];
            const int m = tgt_mode[in % 2];
            op.matrix(out, in) =
                t.matrix(n, i) * t.matrix(m, j) + t.matrix(n, j) * t.matrix(m, i);
        }
    }
    return op;
}

Eigen::MatrixXcd reduced_one_photon_density(const PhotonicState& state) {
    if (state.photon_number() < 1)
        throw error("reduced density needs at least one photon");
    const int m = state.window().size;
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(m, m);
    for (const auto& [pattern, amp] : state.terms()) {
        for (int l = 0; l < m; ++l) {
            if (pattern[l] == 0) continue;
            for (int lp = 0; lp < m; ++lp) {
                // <q| a_{l'}^dag a_l |pattern>, q = pattern - e_l + e_{l'}
                OccupationPattern q = pattern;
                --q[l];
                ++q[lp];
                cplx other = state.amplitude(q);
                if (other == cplx{}) continue;
                rho(l, lp) += std::conj(other) * amp *
                              std::sqrt(static_cast<double>(pattern[l]) *
                                        static_cast<double>(q[lp]));
            }
        }
    }
    return rho;
}

}  // namespace qfo
