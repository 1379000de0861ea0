#include <catch_amalgamated.hpp>

#include <numbers>
#include <random>

#include "opevo/core/grid.hpp"
#include "opevo/core/wavefunction.hpp"

using namespace opevo;

namespace {

WaveFunction random_state(const Grid1D& g, unsigned seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> dist(0.0, 1.0);
    WaveFunction psi;
    psi.grid = g;
    psi.amplitudes.resize(g.n_points);
    for (auto& z : psi.amplitudes) z = {dist(rng), dist(rng)};
    const double n = norm(psi);
    for (auto& z : psi.amplitudes) z /= n;
    return psi;
}

} // namespace

TEST_CASE("build_grid basic cases") {
    auto g = build_grid(8, -1.0, 1.0);
    CHECK(g.dq == Catch::Approx(0.25));
    CHECK(g.dk == Catch::Approx(std::numbers::pi));

    auto g2 = build_grid(1024, -20.0, 20.0);
    CHECK(std::abs(g2.dq * g2.dk * 1024 - 2 * std::numbers::pi) < 1e-12);

    CHECK_THROWS_AS(build_grid(7, -1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(build_grid(4, -1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(build_grid(64, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("grid momentum pairing") {
    auto g = build_grid(64, -5.0, 3.0);
    CHECK(g.k_at(0) == 0.0);
    CHECK(g.k_at(1) == Catch::Approx(g.dk));
    CHECK(g.k_at(63) == Catch::Approx(-g.dk));
    CHECK(g.k_at(32) == Catch::Approx(-32 * g.dk));
}

TEST_CASE("make_gaussian normalization and moments") {
    auto g = build_grid(1024, -20.0, 20.0);

    auto psi = make_gaussian(g, 0.0, 1.0, 0.0);
    CHECK(std::abs(norm(psi) - 1.0) < 1e-12);
    auto obs = observables(psi);
    CHECK(std::abs(obs.mean_q) < 1e-10);
    CHECK(std::abs(obs.mean_p) < 1e-10);
    CHECK(obs.var_q == Catch::Approx(0.5).margin(1e-8));
    CHECK(obs.var_p == Catch::Approx(0.5).margin(1e-8));

    auto packet = make_gaussian(g, 2.0, 0.5, 3.0, 1.0);
    auto obs2 = observables(packet);
    CHECK(std::abs(obs2.mean_q - 2.0) < 1e-8);
    CHECK(std::abs(obs2.mean_p - 3.0) < 1e-8);

    CHECK_THROWS_AS(make_gaussian(g, 19.0, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(make_gaussian(g, 0.0, -1.0, 0.0), std::invalid_argument);
    // packet too wide for the box
    CHECK_THROWS_AS(make_gaussian(g, 0.0, 4.5, 0.0), std::invalid_argument);
}

TEST_CASE("fourier transform roundtrip and conventions") {
    auto g = build_grid(512, -15.0, 15.0);
    auto psi = make_gaussian(g, 1.0, 0.8, 2.0);

    auto mom = fourier_transform(psi, Representation::Momentum);
    CHECK_THROWS_AS(fourier_transform(mom, Representation::Momentum), std::invalid_argument);

    auto back = fourier_transform(mom, Representation::Position);
    double max_err = 0.0;
    for (std::size_t j = 0; j < g.n_points; ++j)
        max_err = std::max(max_err, std::abs(back.amplitudes[j] - psi.amplitudes[j]));
    CHECK(max_err < 1e-12);

    // minimum-uncertainty product
    auto obs = observables(psi);
    CHECK(obs.var_q * obs.var_p == Catch::Approx(0.25).margin(1e-8));

    // carrier translates the momentum density
    auto carrier = make_gaussian(g, 0.0, 1.0, 3.0);
    auto cobs = observables(carrier);
    CHECK(std::abs(cobs.mean_p - 3.0) <= g.dk);
    auto cmom = fourier_transform(carrier, Representation::Momentum);
    std::size_t peak = 0;
    for (std::size_t j = 1; j < g.n_points; ++j)
        if (std::norm(cmom.amplitudes[j]) > std::norm(cmom.amplitudes[peak])) peak = j;
    CHECK(std::abs(g.k_at(peak) - 3.0) <= g.dk);
}

TEST_CASE("parseval and unitarity on random states") {
    auto g = build_grid(256, -10.0, 10.0);
    for (unsigned seed : {11u, 12u, 13u}) {
        auto psi = random_state(g, seed);
        auto mom = fourier_transform(psi, Representation::Momentum);
        CHECK(std::abs(norm(mom) - norm(psi)) < 1e-12);
        auto back = fourier_transform(mom, Representation::Position);
        double max_err = 0.0;
        for (std::size_t j = 0; j < g.n_points; ++j)
            max_err = std::max(max_err, std::abs(back.amplitudes[j] - psi.amplitudes[j]));
        CHECK(max_err < 1e-12);
    }
}

TEST_CASE("observables invariants") {
    auto g = build_grid(512, -12.0, 12.0);

    // translation shifts mean_q by exactly the offset
    auto a = make_gaussian(g, 0.0, 1.0, 0.5);
    auto b = make_gaussian(g, 1.5, 1.0, 0.5);
    CHECK(std::abs(observables(b).mean_q - observables(a).mean_q - 1.5) < 1e-9);

    // uncertainty bound for assorted states
    for (unsigned seed : {21u, 22u}) {
        auto psi = random_state(g, seed);
        auto obs = observables(psi);
        CHECK(obs.var_q * obs.var_p >= 0.25 * (1.0 - 1e-9));
    }

    WaveFunction zero;
    zero.grid = g;
    zero.amplitudes.assign(g.n_points, {0.0, 0.0});
    CHECK_THROWS_AS(observables(zero), std::invalid_argument);
}

TEST_CASE("compare distances and fidelity") {
    auto g = build_grid(512, -12.0, 12.0);
    auto psi = make_gaussian(g, 0.0, 1.0, 1.0);

    auto self = compare(psi, psi);
    CHECK(self.l2_distance == 0.0);
    CHECK(self.fidelity == Catch::Approx(1.0).margin(1e-14));

    // global phase: fidelity blind, l2 not
    WaveFunction rotated = psi;
    for (auto& z : rotated.amplitudes) z *= std::complex<double>(0.0, 1.0);
    auto r = compare(psi, rotated);
    CHECK(r.fidelity == Catch::Approx(1.0).margin(1e-14));
    CHECK(r.l2_distance > 0.1);

    // parity-orthogonal pair
    WaveFunction odd = psi;
    for (std::size_t j = 0; j < g.n_points; ++j) odd.amplitudes[j] *= g.q_at(j);
    auto o = compare(psi, odd);
    CHECK(o.fidelity <= 1e-10);

    // symmetry in the arguments
    auto other = make_gaussian(g, 0.5, 1.2, 0.0);
    auto ab = compare(psi, other);
    auto ba = compare(other, psi);
    CHECK(ab.l2_distance == Catch::Approx(ba.l2_distance));
    CHECK(ab.fidelity == Catch::Approx(ba.fidelity));

    auto g2 = build_grid(256, -12.0, 12.0);
    auto small = make_gaussian(g2, 0.0, 1.0, 0.0);
    CHECK_THROWS_AS(compare(psi, small), std::invalid_argument);
}
