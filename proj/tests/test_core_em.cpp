#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "locwave/core_em.hpp"
#include "support/ode_oracle.hpp"

using namespace locwave;

namespace {

const MediumConfig kBaseline{2.0, 1.0, 0.6, std::nullopt};
const MediumConfig kOptimal{2.15, 0.50, 0.87, std::nullopt};
const WaveParams kWave{6.18, 2.0};

// Reference values from an independent numpy evaluation of the same closed
// forms (double precision, np.linalg-free 2x2 algebra).
constexpr double kBaselineLambda1 = -0.5995925411690783;
constexpr double kBaselineKappa = 0.7516466113358387;
constexpr double kBaselineC0 = 3.3344435851622407;
constexpr double kOptimalLambda1 = -0.17415156144171284;
constexpr double kOptimalKappa = 0.4936657169743918;

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

TEST_CASE("layer wave numbers") {
    SUBCASE("propagating A layer at the baseline wave point") {
        const auto s = layer_wave_numbers({2.0, 1.0, 0.5, {}}, kWave);
        CHECK(s.sigma_a.propagating);
        CHECK(s.sigma_a.magnitude == doctest::Approx(2.3554405108174565).epsilon(1e-14));
    }
    SUBCASE("zero is tagged evanescent") {
        const auto s = layer_wave_numbers({1.0, 1.0, 0.5, {}}, {1.0, 1.0});
        CHECK_FALSE(s.sigma_a.propagating);
        CHECK(s.sigma_a.magnitude == 0.0);
    }
    SUBCASE("evanescent magnitude") {
        const auto s = layer_wave_numbers({4.0, 1.0, 0.5, {}}, {2.0, 2.0});
        CHECK_FALSE(s.sigma_a.propagating);
        CHECK(s.sigma_a.magnitude == doctest::Approx(1.9364916731037085).epsilon(1e-14));
        CHECK(s.sigma_b.magnitude == 0.0);
    }
}

TEST_CASE("layer propagator branches") {
    const WaveNumber prop{2.3554405108174565, true};

    CHECK(layer_propagator(prop, 0.0) == Mat2{});
    CHECK(layer_propagator({1.7, false}, 0.0) == Mat2{});

    const Mat2 full = layer_propagator({1.0, true}, 2.0 * std::numbers::pi);
    CHECK(std::abs(full.m11 - 1.0) < 1e-12);
    CHECK(std::abs(full.m12) < 1e-12);
    CHECK(std::abs(full.m21) < 1e-12);
    CHECK(std::abs(full.m22 - 1.0) < 1e-12);

    const Mat2 shear = layer_propagator({0.0, false}, 0.75);
    CHECK(shear == Mat2{1.0, 0.75, 0.0, 1.0});

    SUBCASE("matches ODE integration over an A layer") {
        const Mat2 t = layer_propagator(prop, 0.6);
        const double k2 = prop.magnitude * prop.magnitude;
        const auto c1 = oracle::integrate_layer({1.0, 0.0}, k2, 0.6);
        const auto c2 = oracle::integrate_layer({0.0, 1.0}, k2, 0.6);
        CHECK(std::abs(t.m11 - c1[0]) < 1e-8);
        CHECK(std::abs(t.m21 - c1[1]) < 1e-8);
        CHECK(std::abs(t.m12 - c2[0]) < 1e-8);
        CHECK(std::abs(t.m22 - c2[1]) < 1e-8);
    }
    SUBCASE("evanescent continuation solves u'' = s^2 u") {
        const Mat2 t = layer_propagator({1.3, false}, 0.8);
        const auto c1 = oracle::integrate_layer({1.0, 0.0}, -1.69, 0.8);
        const auto c2 = oracle::integrate_layer({0.0, 1.0}, -1.69, 0.8);
        CHECK(std::abs(t.m11 - c1[0]) < 1e-9);
        CHECK(std::abs(t.m21 - c1[1]) < 1e-9);
        CHECK(std::abs(t.m12 - c2[0]) < 1e-9);
        CHECK(std::abs(t.m22 - c2[1]) < 1e-9);
    }
    SUBCASE("negative length is rejected") {
        CHECK_THROWS_AS(layer_propagator(prop, -0.1), Error);
    }
}

TEST_CASE("propagator determinant is one on every branch") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> mag(0.0, 10.0), len(0.0, 1.0);
    for (int k = 0; k < 2000; ++k) {
        const WaveNumber s{k % 7 == 0 ? 0.0 : mag(rng), k % 2 == 0};
        const double l = len(rng);
        const Mat2 t = layer_propagator(s, l);
        // hyperbolic entries grow like e^{sl}; compare relative to their size
        const double scale = std::max(1.0, std::abs(t.m11 * t.m22));
        CHECK(std::abs(t.det() - 1.0) <= 1e-12 * scale);
    }
}

TEST_CASE("cell matrix") {
    SUBCASE("homogeneous medium equals one unit-length layer") {
        const MediumConfig m{1.7, 1.7, 0.37, {}};
        const WaveParams w{5.0, 1.0};
        const Mat2 cell = cell_matrix(m, w).entries;
        const Mat2 single = layer_propagator(WaveNumber::from_speed(1.7, w), 1.0);
        CHECK(cell.m11 == doctest::Approx(single.m11).epsilon(1e-12));
        CHECK(cell.m12 == doctest::Approx(single.m12).epsilon(1e-12));
        CHECK(cell.m21 == doctest::Approx(single.m21).epsilon(1e-12));
        CHECK(cell.m22 == doctest::Approx(single.m22).epsilon(1e-12));
    }
    SUBCASE("theta endpoints reduce to a single material") {
        const auto s = layer_wave_numbers(kBaseline, kWave);
        CHECK(cell_matrix(s, 0.0).entries == layer_propagator(s.sigma_b, 1.0));
        CHECK(cell_matrix(s, 1.0).entries == layer_propagator(s.sigma_a, 1.0));
    }
    SUBCASE("baseline trace and determinant") {
        const CellMatrix c = cell_matrix(kBaseline, kWave);
        CHECK(std::abs(c.entries.det() - 1.0) < 1e-10);
        CHECK(c.trace == doctest::Approx(-2.26739180706757).epsilon(1e-12));
    }
    SUBCASE("depends on the layer wave numbers only") {
        const WaveParams w2{2.0 * 6.18, 2.0};
        const MediumConfig m2{4.0, 2.0, 0.6, {}};
        const auto s1 = layer_wave_numbers(kBaseline, kWave);
        const auto s2 = layer_wave_numbers(m2, w2);
        REQUIRE(s1.sigma_a.magnitude == s2.sigma_a.magnitude);
        REQUIRE(s1.sigma_b.magnitude == s2.sigma_b.magnitude);
        CHECK(cell_matrix(kBaseline, kWave).entries == cell_matrix(m2, w2).entries);
    }
}

TEST_CASE("eigen decomposition") {
    SUBCASE("identity is degenerate") {
        try {
            (void)eigen_decompose(CellMatrix(Mat2{}));
            FAIL("expected DegenerateEigenvector");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::DegenerateEigenvector);
        }
    }
    SUBCASE("baseline pair") {
        const EigenPair p = eigen_decompose(cell_matrix(kBaseline, kWave));
        CHECK(p.real_flag);
        CHECK(p.lambda1.real() == doctest::Approx(kBaselineLambda1).epsilon(1e-12));
        CHECK(std::abs(std::abs(p.lambda1) - 0.5996) < 1e-3);
        CHECK(std::abs(p.lambda1 * p.lambda2 - 1.0) < 1e-8);
        const Mat2 t = cell_matrix(kBaseline, kWave).entries;
        const auto tv = t.apply(p.v1);
        CHECK(std::abs(tv[0] - p.lambda1.real() * p.v1[0]) < 1e-8);
        CHECK(std::abs(tv[1] - p.lambda1.real() * p.v1[1]) < 1e-8);
        CHECK(std::hypot(p.v1[0], p.v1[1]) == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(p.v1[0] > 0.0);
    }
    SUBCASE("inside a band the pair is unimodular") {
        const EigenPair p = eigen_decompose(cell_matrix({1.7, 1.7, 0.5, {}}, {5.0, 1.0}));
        CHECK_FALSE(p.real_flag);
        CHECK(std::abs(std::abs(p.lambda1) - 1.0) < 1e-10);
        CHECK(p.lambda2 == std::conj(p.lambda1));
    }
}

TEST_CASE("half-space matching") {
    EigenPair p;
    p.real_flag = true;
    p.lambda1 = 0.5;
    p.lambda2 = 2.0;

    p.v1 = {1.0, 0.0};
    auto r = match_half_space(p, {3.0, 2.0});
    REQUIRE(std::holds_alternative<MatchFailure>(r));
    CHECK(std::get<MatchFailure>(r) == MatchFailure::KappaNonpositive);

    p.v1 = {1.0 / std::sqrt(5.0), -2.0 / std::sqrt(5.0)};
    r = match_half_space(p, {3.0, 2.0});
    REQUIRE(std::holds_alternative<MatchFailure>(r));
    CHECK(std::get<MatchFailure>(r) == MatchFailure::KappaNonpositive);

    p.v1 = {0.0, 1.0};
    r = match_half_space(p, {3.0, 2.0});
    REQUIRE(std::holds_alternative<MatchFailure>(r));
    CHECK(std::get<MatchFailure>(r) == MatchFailure::V11Zero);

    p.v1 = {1.0 / std::sqrt(10.0), 3.0 / std::sqrt(10.0)};
    r = match_half_space(p, {3.0, 2.0});
    REQUIRE(std::holds_alternative<MatchFailure>(r));
    CHECK(std::get<MatchFailure>(r) == MatchFailure::C0Imaginary);

    SUBCASE("baseline") {
        const EigenPair bp = eigen_decompose(cell_matrix(kBaseline, kWave));
        const auto m = match_half_space(bp, kWave);
        REQUIRE(std::holds_alternative<HalfSpaceMatch>(m));
        const auto ok = std::get<HalfSpaceMatch>(m);
        CHECK(ok.kappa > 0.0);
        CHECK(ok.kappa < 2.0);
        CHECK(ok.kappa == doctest::Approx(kBaselineKappa).epsilon(1e-10));
        CHECK(ok.c0 == doctest::Approx(kBaselineC0).epsilon(1e-10));
        CHECK(ok.c0 == doctest::Approx(6.18 / std::sqrt(4.0 - ok.kappa * ok.kappa)).epsilon(1e-15));
        // (1, kappa) parallel to v1
        const double cross = bp.v1[0] * ok.kappa - bp.v1[1] * 1.0;
        CHECK(std::abs(cross) < 1e-8);
    }
    SUBCASE("complex pair is rejected") {
        EigenPair c;
        c.real_flag = false;
        CHECK_THROWS_AS(match_half_space(c, kWave), Error);
    }
}

TEST_CASE("classify") {
    const auto base = classify(kBaseline, kWave);
    CHECK(base.region == Region::Localized);
    CHECK(std::abs(base.lambda1_abs - 0.5996) < 1e-3);
    REQUIRE(base.c0);
    CHECK(*base.c0 == doctest::Approx(kBaselineC0).epsilon(1e-10));

    const auto opt = classify(kOptimal, kWave);
    CHECK(opt.region == Region::Localized);
    CHECK(std::abs(opt.lambda1_abs - 0.1742) < 1e-3);
    CHECK(opt.lambda1_abs == doctest::Approx(-kOptimalLambda1).epsilon(1e-12));
    CHECK(*opt.kappa == doctest::Approx(kOptimalKappa).epsilon(1e-10));

    const auto homog = classify({1.5, 1.5, 0.4, {}}, {6.0, 2.0});
    CHECK(homog.region == Region::NoRightDecay);
    CHECK(homog.lambda1_abs == 1.0);
    CHECK_FALSE(homog.kappa);
    CHECK_FALSE(homog.c0);
}

TEST_CASE("field profile") {
    ProfileOptions opts;
    opts.n_periods = 10;
    opts.samples_per_layer = 40;
    opts.x_min = -2.0;
    const FieldProfile prof = field_profile(kBaseline, kWave, opts);
    REQUIRE(prof.x.size() == prof.u.size());
    REQUIRE(prof.x.size() == prof.du.size());
    for (std::size_t i = 1; i < prof.x.size(); ++i) CHECK(prof.x[i] > prof.x[i - 1]);
    CHECK(prof.x.front() == -2.0);
    CHECK(prof.x.back() == 10.0);

    SUBCASE("interface state from both sides") {
        std::size_t i0 = 0;
        while (prof.x[i0] != 0.0) ++i0;
        CHECK(prof.u[i0] == 1.0);
        CHECK(prof.du[i0] == prof.kappa);
        // right-hand limit of the left formula
        CHECK(std::exp(prof.kappa * 0.0) == prof.u[i0]);
        // first A sample propagated back must land on (1, kappa)
        const auto s = layer_wave_numbers(kBaseline, kWave);
        const double h = prof.x[i0 + 1];
        const auto back = layer_propagator(s.sigma_a, h);
        const Mat2 inv{back.m22, -back.m12, -back.m21, back.m11};
        const auto st = inv.apply({prof.u[i0 + 1], prof.du[i0 + 1]});
        CHECK(st[0] == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(st[1] == doctest::Approx(prof.kappa).epsilon(1e-12));
    }
    SUBCASE("left half-space is exp(kappa x)") {
        for (std::size_t i = 0; prof.x[i] < 0.0; ++i) {
            CHECK(rel(prof.u[i], std::exp(prof.kappa * prof.x[i])) < 1e-9);
        }
    }
    SUBCASE("decay over ten periods") {
        CHECK(rel(std::abs(prof.u.back()), std::pow(0.5995925411690783, 10)) < 1e-6);
        CHECK(std::abs(prof.u.back()) == doctest::Approx(6.0e-3).epsilon(0.02));
    }
    SUBCASE("multiplicative decay and continuity at every cell boundary") {
        const Mat2 cell = cell_matrix(kBaseline, kWave).entries;
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < prof.x.size(); ++i) {
            if (prof.x[i] >= 0.0 && prof.x[i] == std::floor(prof.x[i])) idx.push_back(i);
        }
        REQUIRE(idx.size() == 11);
        for (std::size_t m = 0; m + 1 < idx.size(); ++m) {
            CHECK(rel(std::abs(prof.u[idx[m + 1]]), std::abs(prof.lambda1) * std::abs(prof.u[idx[m]])) < 1e-8);
            const auto adv = cell.apply({prof.u[idx[m]], prof.du[idx[m]]});
            const double scale = std::abs(prof.u[idx[m]]);
            CHECK(std::abs(adv[0] - prof.u[idx[m + 1]]) < 1e-9 * scale);
            CHECK(std::abs(adv[1] - prof.du[idx[m + 1]]) < 1e-9 * scale);
        }
    }
    SUBCASE("optimal medium decays by the third period") {
        const FieldProfile p2 = field_profile(kOptimal, kWave, {3, 20, -1.0});
        CHECK(std::abs(p2.u.back()) == doctest::Approx(std::pow(0.17415156144171284, 3)).epsilon(1e-8));
        CHECK(std::abs(p2.u.back()) < 0.01);
    }
    SUBCASE("x_min = 0 yields no negative samples") {
        const FieldProfile p0 = field_profile(kBaseline, kWave, {2, 5, 0.0});
        CHECK(p0.x.front() == 0.0);
    }
    SUBCASE("non-localized input") {
        try {
            (void)field_profile({1.5, 1.5, 0.4, {}}, {6.0, 2.0}, opts);
            FAIL("expected NotLocalized");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::NotLocalized);
        }
    }
}

TEST_CASE("profile satisfies the ODE with second-order finite differences") {
    auto max_residual = [](int spl) {
        const FieldProfile p = field_profile(kBaseline, kWave, {2, spl, -1.0});
        const auto s = layer_wave_numbers(kBaseline, kWave);
        const double ka = s.sigma_a.magnitude * s.sigma_a.magnitude;
        const double kb = s.sigma_b.magnitude * s.sigma_b.magnitude;
        double worst = 0.0;
        for (std::size_t i = 1; i + 1 < p.x.size(); ++i) {
            const double xl = p.x[i - 1], xc = p.x[i], xr = p.x[i + 1];
            if (xl < 0.0) continue;
            const double fl = xl - std::floor(xc), fr = xr - std::floor(xc);
            const bool in_a = fl >= 0.0 && fr <= 0.6 + 1e-12;
            const bool in_b = fl >= 0.6 - 1e-12 && fr <= 1.0 + 1e-12;
            if (!(in_a || in_b) || std::abs((xc - xl) - (xr - xc)) > 1e-12) continue;
            const double h = xc - xl;
            const double upp = (p.u[i - 1] - 2.0 * p.u[i] + p.u[i + 1]) / (h * h);
            worst = std::max(worst, std::abs(upp + (in_a ? ka : kb) * p.u[i]));
        }
        return worst;
    };
    const double r1 = max_residual(20);
    const double r2 = max_residual(40);
    const double r3 = max_residual(80);
    CHECK(r1 > 0.0);
    CHECK(r1 / r2 == doctest::Approx(4.0).epsilon(0.05));
    CHECK(r2 / r3 == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("field 2d") {
    const FieldProfile prof = field_profile(kBaseline, kWave, {3, 8, -1.0});
    const std::vector<double> y{0.0, std::numbers::pi / (2.0 * kWave.eta), 0.3};
    const Field2D f = field_2d(prof, kWave, y);
    REQUIRE(f.values.size() == prof.x.size() * 3);
    for (std::size_t i = 0; i < prof.x.size(); ++i) {
        CHECK(f.at(i, 0) == 0.0);
        CHECK(f.at(i, 1) == doctest::Approx(prof.u[i]).epsilon(1e-15));
        CHECK(f.at(i, 2) == prof.u[i] * std::sin(kWave.eta * 0.3));
    }
}

TEST_CASE("type invariants are enforced") {
    CHECK_THROWS_AS(WaveParams({0.0, 1.0}).validate(), Error);
    CHECK_THROWS_AS(WaveParams({1.0, -1.0}).validate(), Error);
    CHECK_THROWS_AS(MediumConfig({0.0, 1.0, 0.5, {}}).validate(), Error);
    CHECK_THROWS_AS(MediumConfig({1.0, 1.0, 1.5, {}}).validate(), Error);
    CHECK_THROWS_AS(MediumConfig({1.0, 1.0, 0.5, -1.0}).validate(), Error);
    CHECK_NOTHROW(kBaseline.validate());
}
