#include "qfo/modes.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace qfo {

int total_photons(const OccupationPattern& p) {
    int n = 0;
    for (int c : p) n += c;
    return n;
}

PhotonicState::PhotonicState(ModeWindow window, int photon_number)
    : window_(window), photon_number_(photon_number) {
    if (window_.size < 2) throw error("mode window needs at least 2 modes");
    if (photon_number_ < 0 || photon_number_ > kMaxPhotons)
        throw error("photon number outside supported range");
}

void PhotonicState::set_amplitude(const OccupationPattern& pattern,
                                  cplx amplitude) {
    if (static_cast<int>(pattern.size()) != window_.size)
        throw error("pattern length does not match mode window");
    if (total_photons(pattern) != photon_number_)
        throw error("pattern photon number mismatch");
    for (int c : pattern)
        if (c < 0) throw error("negative occupation count");
    if (std::abs(amplitude) < kAmplitudeFloor) {
        terms_.erase(pattern);
        return;
    }
    terms_[pattern] = amplitude;
}

void PhotonicState::add_amplitude(const OccupationPattern& pattern,
                                  cplx amplitude) {
    auto it = terms_.find(pattern);
    cplx sum = amplitude + (it == terms_.end() ? cplx{} : it->second);
    if (it != terms_.end()) terms_.erase(it);
    set_amplitude(pattern, sum);
}

cplx PhotonicState::amplitude(const OccupationPattern& pattern) const {
    auto it = terms_.find(pattern);
    return it == terms_.end() ? cplx{} : it->second;
}

double PhotonicState::norm_squared() const {
    double s = 0.0;
    for (const auto& [pattern, amp] : terms_) s += std::norm(amp);
    return s;
}

bool QubitLayout::has_qubit(int b) const {
    return std::find(qubits.begin(), qubits.end(), b) != qubits.end();
}

void QubitLayout::validate() const {
    std::set<int> used;
    for (int b : qubits) {
        for (int m : {mode_down(b), mode_up(b)}) {
            if (!window.contains_label(m))
                throw error("qubit mode outside the mode window");
            if (!used.insert(m).second)
                throw error("qubit mode pairs overlap");
        }
    }
}

PhotonicState make_qubit_state(const QubitLayout& layout, int b, cplx xi_down,
                               cplx xi_up) {
    if (!layout.has_qubit(b)) throw error("qubit not present in layout");
    double n2 = std::norm(xi_down) + std::norm(xi_up);
    if (std::abs(n2 - 1.0) > 1e-9)
        throw error("qubit amplitudes are not normalized");
    layout.validate();

    PhotonicState state(layout.window, 1);
    OccupationPattern p(layout.window.size, 0);
    if (std::abs(xi_down) > 0.0) {
        p[layout.window.to_internal(layout.mode_down(b))] = 1;
        state.set_amplitude(p, xi_down);
        p[layout.window.to_internal(layout.mode_down(b))] = 0;
    }
    if (std::abs(xi_up) > 0.0) {
        p[layout.window.to_internal(layout.mode_up(b))] = 1;
        state.set_amplitude(p, xi_up);
    }
    return state;
}

PhotonicState product_state(const std::vector<PhotonicState>& factors) {
    if (factors.empty()) throw error("product_state needs at least one factor");
    const ModeWindow window = factors.front().window();
    int n_total = 0;
    std::vector<bool> support(window.size, false);
    for (const auto& f : factors) {
        if (f.window() != window)
            throw error("product factors disagree on the mode window");
        if (f.photon_number() != 1)
            throw error("product factors must be single-photon states");
        n_total += 1;
        for (const auto& [pattern, amp] : f.terms())
            for (int l = 0; l < window.size; ++l)
                if (pattern[l] > 0) {
                    if (support[l])
                        throw error("product factors have overlapping supports");
                }
        // mark after checking, so a factor may use several modes itself
        for (const auto& [pattern, amp] : f.terms())
            for (int l = 0; l < window.size; ++l)
                if (pattern[l] > 0) support[l] = true;
    }
    if (n_total > kMaxPhotons) throw error("photon-number cap exceeded");

    std::map<OccupationPattern, cplx> acc{
        {OccupationPattern(window.size, 0), cplx{1.0, 0.0}}};
    for (const auto& f : factors) {
        std::map<OccupationPattern, cplx> next;
        for (const auto& [p0, a0] : acc)
            for (const auto& [p1, a1] : f.terms()) {
                OccupationPattern p = p0;
                for (int l = 0; l < window.size; ++l) p[l] += p1[l];
                next[p] += a0 * a1;
            }
        acc = std::move(next);
    }

    PhotonicState state(window, n_total);
    for (const auto& [pattern, amp] : acc) state.set_amplitude(pattern, amp);
    return state;
}

std::vector<double> mode_intensities(const PhotonicState& state) {
    std::vector<double> intensity(state.window().size, 0.0);
    for (const auto& [pattern, amp] : state.terms()) {
        double w = std::norm(amp);
        for (int l = 0; l < state.window().size; ++l)
            intensity[l] += w * pattern[l];
    }
    return intensity;
}

}  // namespace qfo
