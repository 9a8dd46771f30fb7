#include <numbers>

#include "doctest.h"
#include "qfo/layers.hpp"
#include "test_util.hpp"

using namespace qfo;
using qfo::test::random_unimodular;

namespace {
constexpr double pi = std::numbers::pi;

std::vector<cplx> roots_of_unity(int m, int power) {
    std::vector<cplx> d(m);
    for (int j = 0; j < m; ++j)
        d[j] = std::polar(1.0, 2.0 * pi * power * j / m);
    return d;
}
}  // namespace

TEST_CASE("pupil phase evaluation and sampling") {
    PupilProfile flat{0, {}, {}, 0.0};
    auto d = sample_pupil(flat, 8);
    for (auto v : d) CHECK(std::abs(v - cplx{1.0, 0.0}) < 1e-15);

    PupilProfile p{2, {0.5, -0.3}, {0.1, 0.2}, 0.0};
    double theta = 1.2345;
    double expected = 0.5 * std::sin(theta) - 0.3 * std::sin(2 * theta) +
                      0.1 * std::cos(theta) + 0.2 * std::cos(2 * theta);
    CHECK(p.phase_at(theta) == doctest::Approx(expected).epsilon(1e-14));

    auto s = sample_pupil(p, 8);
    for (int j = 0; j < 8; ++j) {
        double th = 2.0 * pi * j / 8;
        CHECK(std::abs(s[j] - std::polar(1.0, -p.phase_at(th))) < 1e-14);
    }

    // Nyquist precondition M >= 2R + 1
    CHECK_THROWS_AS(sample_pupil(p, 4), error);
    PupilProfile bad{2, {0.5}, {0.1, 0.2}, 0.0};
    CHECK_THROWS_AS(bad.validate(), error);
}

TEST_CASE("fourier coefficients of reference samples") {
    // flat pupil: P_0 = 1, all others 0
    auto c = fourier_coeffs(std::vector<cplx>(8, cplx{1.0, 0.0}));
    CHECK(std::abs(c[0] - cplx{1.0, 0.0}) < 1e-14);
    for (int k = 1; k < 8; ++k) CHECK(std::abs(c[k]) < 1e-14);

    // blazed grating d_j = w^j puts all weight on P_{M-1}
    auto g = fourier_coeffs(roots_of_unity(8, 1));
    for (int k = 0; k < 8; ++k) {
        double want = (k == 7) ? 1.0 : 0.0;
        CHECK(std::abs(g[k] - cplx{want, 0.0}) < 1e-13);
    }
}

TEST_CASE("cyclic orthogonality of unimodular samples") {
    // sum_k P_k conj(P_{k+s}) = delta_{s,0} whenever |d_j| = 1
    std::mt19937_64 rng(11);
    for (int m : {5, 8, 16}) {
        auto c = fourier_coeffs(random_unimodular(rng, m));
        for (int s = 0; s < m; ++s) {
            cplx acc{};
            for (int k = 0; k < m; ++k) acc += c[k] * std::conj(c[(k + s) % m]);
            CHECK(std::abs(acc - (s == 0 ? cplx{1.0, 0.0} : cplx{})) < 1e-12);
        }
    }
}

TEST_CASE("circulant layer structure and unitarity") {
    std::mt19937_64 rng(3);
    for (int m : {4, 6, 16}) {
        auto samples = random_unimodular(rng, m);
        auto t = circulant_from_samples(samples);
        REQUIRE(t.size() == m);
        CHECK(t.kind == TransformKind::Circulant);
        CHECK(unitarity_defect(t.matrix) < 1e-12);

        // constant along anti-diagonals: T[n][r] depends on (n+r) mod M
        auto c = fourier_coeffs(samples);
        for (int n = 0; n < m; ++n)
            for (int r = 0; r < m; ++r)
                CHECK(std::abs(t.matrix(n, r) - c[(n + r) % m]) < 1e-13);
    }

    std::vector<cplx> lossy(6, cplx{0.5, 0.0});
    CHECK_THROWS_AS(circulant_from_samples(lossy), error);
}

TEST_CASE("flat pupil gives the inversion permutation") {
    const int m = 8;
    auto t = circulant_from_samples(std::vector<cplx>(m, cplx{1.0, 0.0}));
    for (int n = 0; n < m; ++n)
        for (int r = 0; r < m; ++r) {
            double want = ((n + r) % m == 0) ? 1.0 : 0.0;
            CHECK(std::abs(t.matrix(n, r) - cplx{want, 0.0}) < 1e-13);
        }
}

TEST_CASE("blazed grating shifts the inversion by one cell") {
    const int m = 8;
    auto t = circulant_from_samples(roots_of_unity(m, 1));
    for (int n = 0; n < m; ++n)
        for (int r = 0; r < m; ++r) {
            double want = ((n + r + 1) % m == 0) ? 1.0 : 0.0;
            CHECK(std::abs(t.matrix(n, r) - cplx{want, 0.0}) < 1e-12);
        }
}

TEST_CASE("diagonal layer") {
    DiagonalPhases d{{0.0, pi / 2, pi, -pi / 2}};
    auto t = diagonal_transform(d);
    CHECK(t.kind == TransformKind::Diagonal);
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
            cplx want = (r == c) ? std::polar(1.0, -d.phi[r]) : cplx{};
            CHECK(std::abs(t.matrix(r, c) - want) < 1e-15);
        }
    }
}

TEST_CASE("8f composition against a direct matrix product oracle") {
    std::mt19937_64 rng(21);
    const int m = 16;
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    PupilProfile p1{3, {uni(rng), uni(rng), uni(rng)},
                    {uni(rng), uni(rng), uni(rng)}, 0.0};
    PupilProfile p2{2, {uni(rng), uni(rng)}, {uni(rng), uni(rng)}, 0.0};
    DiagonalPhases diag;
    for (int i = 0; i < m; ++i) diag.phi.push_back(pi * uni(rng));

    auto stacked = compose_8f(p1, diag, p2, m);
    Eigen::MatrixXcd oracle =
                  circulant_from_samples(sample_pupil(p1, m)).matrix *
                  diagonal_transform(diag).matrix *
                  circulant_from_samples(sample_pupil(p2, m)).matrix;
    CHECK((stacked.matrix - oracle).cwiseAbs().maxCoeff() < 1e-13);
    CHECK(unitarity_defect(stacked.matrix) < 1e-12);
}

TEST_CASE("flat 8f stack is the identity") {
    const int m = 16;
    PupilProfile flat{0, {}, {}, 0.0};
    DiagonalPhases zero{std::vector<double>(m, 0.0)};
    auto t = compose_8f(flat, zero, flat, m);
    CHECK((t.matrix - Eigen::MatrixXcd::Identity(m, m)).cwiseAbs().maxCoeff() <
          1e-12);
}

TEST_CASE("layered stack enforces alternation") {
    PupilProfile flat{0, {}, {}, 0.0};
    DiagonalPhases zero{std::vector<double>(8, 0.0)};
    CHECK_NOTHROW(layered_stack({flat, zero, flat}, 8));
    CHECK_THROWS_AS(layered_stack({flat, flat}, 8), error);
    CHECK_THROWS_AS(layered_stack({zero, zero}, 8), error);
    CHECK_THROWS_AS(layered_stack({}, 8), error);

    DiagonalPhases short_phi{std::vector<double>(4, 0.0)};
    CHECK_THROWS_AS(layered_stack({flat, short_phi, flat}, 8), error);
}
