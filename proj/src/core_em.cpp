#include "locwave/core_em.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace locwave {

namespace {

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorCode::InvalidArgument, what); }

}  // namespace

void WaveParams::validate() const {
    if (!(omega > 0.0) || !std::isfinite(omega)) invalid("omega must be a finite value > 0");
    if (!(eta >= 0.0) || !std::isfinite(eta)) invalid("eta must be a finite value >= 0");
}

void MediumConfig::validate() const {
    if (!(c_a > 0.0) || !std::isfinite(c_a)) invalid("c_a must be a finite value > 0");
    if (!(c_b > 0.0) || !std::isfinite(c_b)) invalid("c_b must be a finite value > 0");
    if (!(theta >= 0.0 && theta <= 1.0)) invalid("theta must lie in [0, 1]");
    if (c0 && (!(*c0 > 0.0) || !std::isfinite(*c0))) invalid("c0 must be a finite value > 0");
}

WaveNumber WaveNumber::from_speed(double c, const WaveParams& wave) {
    const double k = wave.omega / c;
    const double s2 = k * k - wave.eta * wave.eta;
    return {std::sqrt(std::abs(s2)), s2 > 0.0};
}

std::string_view region_name(Region r) {
    switch (r) {
        case Region::NoRightDecay: return "NO_RIGHT_DECAY";
        case Region::RightDecayNoMatch: return "RIGHT_DECAY_NO_MATCH";
        case Region::Localized: return "LOCALIZED";
    }
    return "UNKNOWN";
}

std::string_view match_failure_name(MatchFailure f) {
    switch (f) {
        case MatchFailure::V11Zero: return "V11_ZERO";
        case MatchFailure::KappaNonpositive: return "KAPPA_NONPOSITIVE";
        case MatchFailure::C0Imaginary: return "C0_IMAGINARY";
    }
    return "UNKNOWN";
}

LayerWaveNumbers layer_wave_numbers(const MediumConfig& medium, const WaveParams& wave) {
    return {WaveNumber::from_speed(medium.c_a, wave), WaveNumber::from_speed(medium.c_b, wave)};
}

Mat2 layer_propagator(const WaveNumber& sigma, double length) {
    if (!(length >= 0.0)) invalid("layer length must be >= 0");
    const double s = sigma.magnitude;
    if (s == 0.0) return {1.0, length, 0.0, 1.0};
    const double phase = s * length;
    if (sigma.propagating) {
        const double c = std::cos(phase);
        const double sn = std::sin(phase);
        return {c, sn / s, -s * sn, c};
    }
    // exact solution for u'' = s^2 u
    const double ch = std::cosh(phase);
    const double sh = std::sinh(phase);
    return {ch, sh / s, s * sh, ch};
}

CellMatrix cell_matrix(const LayerWaveNumbers& sigmas, double theta) {
    const Mat2 ta = layer_propagator(sigmas.sigma_a, theta);
    const Mat2 tb = layer_propagator(sigmas.sigma_b, 1.0 - theta);
    return CellMatrix(tb * ta);
}

CellMatrix cell_matrix(const MediumConfig& medium, const WaveParams& wave) {
    return cell_matrix(layer_wave_numbers(medium, wave), medium.theta);
}

EigenPair eigen_decompose(const CellMatrix& cell) {
    const double tr = cell.trace;
    const double gap = std::abs(tr) - 2.0;
    if (std::abs(gap) <= kBandEdgeTol) {
        throw Error(ErrorCode::DegenerateEigenvector,
                    "double eigenvalue at band edge (trace = " + std::to_string(tr) + ")");
    }

    EigenPair out;
    if (gap < 0.0) {
        // complex conjugate pair on the unit circle
        const double re = 0.5 * tr;
        const double im = 0.5 * std::sqrt(4.0 - tr * tr);
        out.lambda1 = {re, -im};
        out.lambda2 = {re, im};
        out.real_flag = false;
        return out;
    }

    // lambda^2 - tr*lambda + 1 = 0; take the large root without cancellation,
    // then lambda1 = 1 / lambda2 pins the product to 1.
    const double big = 0.5 * (tr + std::copysign(std::sqrt(tr * tr - 4.0), tr));
    const double small = 1.0 / big;
    out.lambda1 = small;
    out.lambda2 = big;
    out.real_flag = true;

    const Mat2& m = cell.entries;
    // Null vector of (T - lambda1 I) from either row; pick the better conditioned.
    std::array<double, 2> a{m.m12, small - m.m11};
    std::array<double, 2> b{small - m.m22, m.m21};
    const double na = std::hypot(a[0], a[1]);
    const double nb = std::hypot(b[0], b[1]);
    auto v = na >= nb ? a : b;
    const double n = std::max(na, nb);
    v[0] /= n;
    v[1] /= n;
    const double lead = v[0] != 0.0 ? v[0] : v[1];
    if (lead < 0.0) {
        v[0] = -v[0];
        v[1] = -v[1];
    }
    out.v1 = v;
    return out;
}

MatchResult match_half_space(const EigenPair& pair, const WaveParams& wave) {
    if (!pair.real_flag || !(std::abs(pair.lambda1) < 1.0)) {
        invalid("match_half_space requires a real eigenpair with |lambda1| < 1");
    }
    const double v11 = pair.v1[0];
    const double v21 = pair.v1[1];
    if (std::abs(v11) <= 1e-14) return MatchFailure::V11Zero;
    const double kappa = v21 / v11;
    if (!(kappa > 0.0)) return MatchFailure::KappaNonpositive;
    const double denom = wave.eta * wave.eta - kappa * kappa;
    if (!(denom > 0.0)) return MatchFailure::C0Imaginary;
    return HalfSpaceMatch{kappa, wave.omega / std::sqrt(denom)};
}

LocalizationReport classify(const MediumConfig& medium, const WaveParams& wave) {
    const CellMatrix cell = cell_matrix(medium, wave);
    LocalizationReport rep;
    if (std::abs(cell.trace) <= 2.0 + kBandEdgeTol) return rep;

    const EigenPair pair = eigen_decompose(cell);
    rep.lambda1_abs = std::abs(pair.lambda1.real());
    rep.region = Region::RightDecayNoMatch;
    if (std::abs(pair.v1[0]) > 1e-14) rep.kappa = pair.v1[1] / pair.v1[0];

    const MatchResult m = match_half_space(pair, wave);
    if (const auto* ok = std::get_if<HalfSpaceMatch>(&m)) {
        rep.region = Region::Localized;
        rep.kappa = ok->kappa;
        rep.c0 = ok->c0;
    }
    return rep;
}

FieldProfile field_profile(const MediumConfig& medium, const WaveParams& wave,
                           const ProfileOptions& opts) {
    if (opts.n_periods < 1) invalid("n_periods must be >= 1");
    if (opts.samples_per_layer < 1) invalid("samples_per_layer must be >= 1");
    if (!(opts.x_min <= 0.0) || !std::isfinite(opts.x_min)) invalid("x_min must be <= 0");

    const LocalizationReport rep = classify(medium, wave);
    if (rep.region != Region::Localized) {
        throw Error(ErrorCode::NotLocalized,
                    "medium is not localized at this wave point (" +
                        std::string(region_name(rep.region)) + ")");
    }
    const CellMatrix cell = cell_matrix(medium, wave);
    const double lambda1 = eigen_decompose(cell).lambda1.real();
    const double kappa = *rep.kappa;

    FieldProfile prof;
    prof.kappa = kappa;
    prof.lambda1 = lambda1;

    // x < 0: u = exp(kappa x), one block of samples per unit length
    if (opts.x_min < 0.0) {
        const auto n_neg = static_cast<std::size_t>(
            std::ceil(-opts.x_min) * static_cast<double>(opts.samples_per_layer));
        for (std::size_t k = 0; k < n_neg; ++k) {
            const double x = opts.x_min * (1.0 - static_cast<double>(k) / static_cast<double>(n_neg));
            const double e = std::exp(kappa * x);
            prof.x.push_back(x);
            prof.u.push_back(e);
            prof.du.push_back(kappa * e);
        }
    }

    const LayerWaveNumbers sig = layer_wave_numbers(medium, wave);
    const double theta = medium.theta;
    const int spl = opts.samples_per_layer;

    prof.x.push_back(0.0);
    prof.u.push_back(1.0);
    prof.du.push_back(kappa);

    // The state at x = m is lambda1^m (1, kappa) exactly; propagating from that
    // anchor keeps the v2 component from being amplified across periods.
    double amp = 1.0;
    for (int m = 0; m < opts.n_periods; ++m) {
        const std::array<double, 2> start{amp, amp * kappa};
        const double x0 = static_cast<double>(m);
        std::array<double, 2> mid = start;
        if (theta > 0.0) {
            for (int k = 1; k <= spl; ++k) {
                const double dx = theta * static_cast<double>(k) / spl;
                const auto s = layer_propagator(sig.sigma_a, dx).apply(start);
                prof.x.push_back(x0 + dx);
                prof.u.push_back(s[0]);
                prof.du.push_back(s[1]);
            }
            mid = layer_propagator(sig.sigma_a, theta).apply(start);
        }
        const double len_b = 1.0 - theta;
        amp *= lambda1;
        if (len_b > 0.0) {
            for (int k = 1; k < spl; ++k) {
                const double dx = len_b * static_cast<double>(k) / spl;
                const auto s = layer_propagator(sig.sigma_b, dx).apply(mid);
                prof.x.push_back(x0 + theta + dx);
                prof.u.push_back(s[0]);
                prof.du.push_back(s[1]);
            }
        } else {
            prof.x.pop_back();
            prof.u.pop_back();
            prof.du.pop_back();
        }
        prof.x.push_back(x0 + 1.0);
        prof.u.push_back(amp);
        prof.du.push_back(amp * kappa);
    }
    return prof;
}

Field2D field_2d(const FieldProfile& profile, const WaveParams& wave,
                 std::span<const double> y_grid) {
    Field2D out;
    out.x = profile.x;
    out.y.assign(y_grid.begin(), y_grid.end());
    out.values.resize(out.x.size() * out.y.size());
    std::vector<double> s(out.y.size());
    for (std::size_t j = 0; j < s.size(); ++j) s[j] = std::sin(wave.eta * out.y[j]);
    for (std::size_t i = 0; i < out.x.size(); ++i) {
        for (std::size_t j = 0; j < s.size(); ++j) out.values[i * s.size() + j] = profile.u[i] * s[j];
    }
    return out;
}

}  // namespace locwave
