#include <doctest.h>

#include <cmath>

#include "satq/channel.hpp"
#include "satq/errors.hpp"
#include "satq/qkpc.hpp"
#include "satq/rng.hpp"

using namespace satq;
using namespace satq::qkpc;

namespace {
QkpcParams noiseless() {
    QkpcParams p;
    p.p_dark = 0.0;
    p.stray_mean = 0.0;
    return p;
}
}  // namespace

TEST_CASE("click complements") {
    auto p = noiseless();
    double e0 = 0, e1 = 0;

    click_complements(0.0, 0.5, p, e0, e1);
    CHECK(e0 == e1);  // vacuum ON pulse degenerates

    click_complements(3.5, 1.0, p, e0, e1);
    CHECK(e0 == 1.0);
    CHECK(e1 == doctest::Approx(0.0301973834).epsilon(1e-9));

    p.p_dark = 0.01;
    p.stray_mean = 0.2;
    click_complements(1.0, 0.5, p, e0, e1);
    CHECK(e0 == doctest::Approx(0.99 * std::exp(-0.2)).epsilon(1e-12));
    CHECK(e1 == doctest::Approx(0.99 * std::exp(-0.7)).epsilon(1e-12));
}

TEST_CASE("eavesdropper discrimination error") {
    auto p = noiseless();

    p.q = 1.0 - 1e-15;  // degenerate prior
    CHECK(eve_optimal_error(1.0, 1.0, p) == doctest::Approx(0.0).epsilon(1e-7));

    p.q = 0.5;
    CHECK(eve_optimal_error(0.0, 1.0, p) == doctest::Approx(0.5));
    // eta gamma mu = 0.35
    CHECK(eve_optimal_error(3.5, 1.0, p) == doctest::Approx(0.2282869573).epsilon(1e-9));

    Rng rng(31);
    for (int i = 0; i < 500; ++i) {
        const double x1 = rng.uniform(0.0, 5.0);
        const double x2 = x1 + rng.uniform(0.01, 5.0);
        // decreasing in the product eta*gamma*mu
        CHECK(eve_optimal_error(x2 / 0.1, 1.0, p) < eve_optimal_error(x1 / 0.1 + 1e-12, 1.0, p));
    }
}

TEST_CASE("private capacity") {
    auto p = noiseless();
    CHECK(private_capacity(0.0, 1.0, p) == 0.0);
    // eta mu = 3.5 with gamma = 0.1
    CHECK(private_capacity(3.5, 1.0, p) == doctest::Approx(0.6766648470).epsilon(1e-9));
}

TEST_CASE("devetak-winter rate") {
    auto p = noiseless();
    CHECK(devetak_winter_rate(0.0, 1.0, p) == 0.0);
    // raw value at eta mu = 3.5 is about -0.0604, clipped
    CHECK(devetak_winter_rate(3.5, 1.0, p) == 0.0);
    // eta mu = 10 with gamma eta mu = 1 is one of the few positive spots
    CHECK(devetak_winter_rate(10.0, 1.0, p) == doctest::Approx(0.0072272844).epsilon(1e-8));
}

TEST_CASE("range properties") {
    Rng rng(47);
    for (int i = 0; i < 2000; ++i) {
        QkpcParams p;
        p.q = rng.uniform(0.05, 0.95);
        p.gamma = rng.uniform(0.01, 0.99);
        p.p_dark = rng.uniform(0.0, 1e-3);
        p.stray_mean = rng.uniform(0.0, 0.1);
        const double eta = std::pow(10.0, -rng.uniform(0.0, 6.0));
        const double mu = rng.uniform(0.0, 50.0) / eta;
        double e0 = 0, e1 = 0;
        click_complements(mu, eta, p, e0, e1);
        const double es = eve_optimal_error(mu, eta, p);
        CHECK(es >= 0.0);
        CHECK(es <= 0.5);
        CHECK(e1 <= e0 + 1e-15);
        const double cp = private_capacity(mu, eta, p);
        const double rdw = devetak_winter_rate(mu, eta, p);
        CHECK(cp >= 0.0);
        CHECK(cp <= 1.0);
        CHECK(rdw >= 0.0);
        CHECK(rdw <= 1.0);
    }
}

TEST_CASE("optimized point hits the reference photon budget") {
    QkpcParams p;  // gamma = 0.1, default noise
    const auto res = optimize_point(3.5e-6, p, 1e9, 5);
    CHECK(res.optimum_found);
    CHECK(res.c_p == doctest::Approx(0.6808830398).epsilon(1e-4));
    CHECK(3.5e-6 * res.mu_opt > 3.0);
    CHECK(3.5e-6 * res.mu_opt < 4.5);
    CHECK(0.1 * 3.5e-6 * res.mu_opt > 0.3);
    CHECK(0.1 * 3.5e-6 * res.mu_opt < 0.45);
    CHECK(res.mu_opt > 0.7e6);
    CHECK(res.mu_opt < 1.4e6);
    CHECK(res.rate_bps == doctest::Approx(res.c_p * 1e9));

    // the balanced prior is optimal up to grid resolution
    QkpcParams sweep = p;
    double best_q = 0.5, best_v = -1.0;
    for (double q = 0.05; q <= 0.9501; q += 0.05) {
        sweep.q = q;
        const double v = private_capacity(res.mu_opt, 3.5e-6, sweep);
        if (v > best_v) {
            best_v = v;
            best_q = q;
        }
    }
    sweep.q = 0.5;
    CHECK(private_capacity(res.mu_opt, 3.5e-6, sweep) >= best_v - 1e-6);
    CHECK(std::fabs(best_q - 0.5) <= 0.051);
}

TEST_CASE("scale invariance of the optimum") {
    QkpcParams p;
    const auto a = optimize_point(1e-4, p, 1e9, 5);
    const auto b = optimize_point(1e-5, p, 1e9, 5);
    CHECK(std::fabs(1e-4 * a.mu_opt / (1e-5 * b.mu_opt) - 1.0) <= 0.01);
    CHECK(std::fabs(a.c_p - b.c_p) <= 1e-4);
}

TEST_CASE("noise robustness at the reference scale") {
    QkpcParams quiet;
    quiet.p_dark = 0.0;
    QkpcParams noisy;
    noisy.p_dark = 1e-8;
    const auto a = optimize_point(1e-4, quiet, 1e9, 5);
    const auto b = optimize_point(1e-4, noisy, 1e9, 5);
    CHECK(std::fabs(a.c_p - b.c_p) < 1e-3);
}

TEST_CASE("profile over a flat loss series") {
    channel::LossProfile profile;
    for (int i = 0; i < 4; ++i) {
        channel::LossSample s;
        s.t_s = i;
        s.loss_total_db = 30.0 + 10.0 * i;  // 30..60 dB
        s.eta_total = channel::eta_from_db(s.loss_total_db);
        profile.samples.push_back(s);
    }
    QkpcParams p;
    const auto results = qkpc_profile(profile, p, 1e9, 5);
    REQUIRE(results.size() == 4);
    for (const auto& r : results) {
        CHECK(r.rate_bps > 0.63e9);
        CHECK(r.rate_bps < 0.77e9);
    }
}

TEST_CASE("600 second pass at the plateau rate") {
    channel::LossProfile profile;
    for (int i = 0; i < 600; ++i) {
        channel::LossSample s;
        s.t_s = i;
        s.loss_total_db = 45.0;
        s.eta_total = channel::eta_from_db(45.0);
        profile.samples.push_back(s);
    }
    QkpcParams p;
    const auto results = qkpc_profile(profile, p, 1e9, 5);
    double total = 0.0;
    for (const auto& r : results) total += r.rate_bps;  // 1 s per sample
    CHECK(total > 3.8e11);
    CHECK(total < 4.7e11);
}

TEST_CASE("no divergence on a lossless channel") {
    QkpcParams p;
    const auto res = optimize_point(1.0, p, 1e9, 5);
    CHECK(res.mu_opt <= 50.0 + 1e-9);  // eta mu bound binds
    CHECK(res.c_p <= 1.0);
}

TEST_CASE("hopeless channel returns a flagged zero-rate result") {
    QkpcParams p;
    p.p_dark = 0.999;  // detector fires almost always, no signal survives
    p.stray_mean = 50.0;
    const auto res = optimize_point(1e-3, p, 1e9, 5);
    CHECK(!res.optimum_found);
    CHECK(res.c_p == 0.0);
    CHECK(res.rate_bps == 0.0);
}
