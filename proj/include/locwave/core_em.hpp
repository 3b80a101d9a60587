// Transfer-matrix machinery for TM waves in a periodic two-layer half-space
// joined to a homogeneous half-space.
//
// The governing ODE is u'' + (omega^2 / c(x)^2 - eta^2) u = 0 with the period
// normalised to 1: material A on [m, m + theta), material B on
// [m + theta, m + 1), homogeneous speed c0 for x < 0.

#pragma once

#include <array>
#include <complex>
#include <optional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "locwave/error.hpp"

namespace locwave {

struct WaveParams {
    double omega = 0.0;  // angular frequency
    double eta = 0.0;    // transverse wave number along y

    void validate() const;
};

struct MediumConfig {
    double c_a = 1.0;
    double c_b = 1.0;
    double theta = 0.5;  // volume fraction of A
    std::optional<double> c0;

    void validate() const;
};

/// Longitudinal wave number in one layer. `magnitude` is sqrt|omega^2/c^2 - eta^2|;
/// the zero case is tagged evanescent.
struct WaveNumber {
    double magnitude = 0.0;
    bool propagating = false;

    static WaveNumber from_speed(double c, const WaveParams& wave);
};

struct LayerWaveNumbers {
    WaveNumber sigma_a;
    WaveNumber sigma_b;
};

/// Row-major 2x2 real matrix acting on the state (u, u').
struct Mat2 {
    double m11 = 1.0, m12 = 0.0, m21 = 0.0, m22 = 1.0;

    [[nodiscard]] double det() const { return m11 * m22 - m12 * m21; }
    [[nodiscard]] double trace() const { return m11 + m22; }
    [[nodiscard]] std::array<double, 2> apply(std::array<double, 2> v) const {
        return {m11 * v[0] + m12 * v[1], m21 * v[0] + m22 * v[1]};
    }
    friend Mat2 operator*(const Mat2& a, const Mat2& b) {
        return {a.m11 * b.m11 + a.m12 * b.m21, a.m11 * b.m12 + a.m12 * b.m22,
                a.m21 * b.m11 + a.m22 * b.m21, a.m21 * b.m12 + a.m22 * b.m22};
    }
    friend bool operator==(const Mat2&, const Mat2&) = default;
};

/// Single-period transfer matrix T = T_B(1 - theta) * T_A(theta).
struct CellMatrix {
    Mat2 entries;
    double trace = 2.0;

    explicit CellMatrix(const Mat2& m) : entries(m), trace(m.trace()) {}
};

struct EigenPair {
    std::complex<double> lambda1;  // smaller modulus
    std::complex<double> lambda2;
    std::array<double, 2> v1{};  // unit length, first nonzero component positive; real pairs only
    bool real_flag = false;
};

enum class Region : int {
    NoRightDecay = 0,
    RightDecayNoMatch = 1,
    Localized = 2,
};

std::string_view region_name(Region r);

struct LocalizationReport {
    Region region = Region::NoRightDecay;
    double lambda1_abs = 1.0;
    std::optional<double> kappa;  // left decay rate v21 / v11
    std::optional<double> c0;     // matched homogeneous speed
};

enum class MatchFailure { V11Zero, KappaNonpositive, C0Imaginary };

std::string_view match_failure_name(MatchFailure f);

struct HalfSpaceMatch {
    double kappa = 0.0;
    double c0 = 0.0;
};

using MatchResult = std::variant<HalfSpaceMatch, MatchFailure>;

struct FieldProfile {
    std::vector<double> x;
    std::vector<double> u;
    std::vector<double> du;
    double kappa = 0.0;
    double lambda1 = 0.0;
    // u(0) = 1 normalisation
    static constexpr double interface_value = 1.0;
};

/// Row i follows profile.x[i], column j follows y_grid[j].
struct Field2D {
    std::vector<double> x;
    std::vector<double> y;
    std::vector<double> values;  // row-major, x.size() * y.size()

    [[nodiscard]] double at(std::size_t i, std::size_t j) const { return values[i * y.size() + j]; }
};

// Tolerances shared across the classification path.
inline constexpr double kBandEdgeTol = 1e-9;

LayerWaveNumbers layer_wave_numbers(const MediumConfig& medium, const WaveParams& wave);

Mat2 layer_propagator(const WaveNumber& sigma, double length);

/// Depends only on (sigma_a, sigma_b, theta).
CellMatrix cell_matrix(const LayerWaveNumbers& sigmas, double theta);
CellMatrix cell_matrix(const MediumConfig& medium, const WaveParams& wave);

/// Throws Error{ErrorCode::DegenerateEigenvector} when |trace| is within
/// kBandEdgeTol of 2.
EigenPair eigen_decompose(const CellMatrix& cell);

/// Requires a real pair with |lambda1| < 1.
MatchResult match_half_space(const EigenPair& pair, const WaveParams& wave);

LocalizationReport classify(const MediumConfig& medium, const WaveParams& wave);

struct ProfileOptions {
    int n_periods = 10;
    int samples_per_layer = 50;
    double x_min = -2.0;
};

/// Reconstructs u and u' on [x_min, n_periods]. Throws
/// Error{ErrorCode::NotLocalized} unless the medium localizes at `wave`.
FieldProfile field_profile(const MediumConfig& medium, const WaveParams& wave,
                           const ProfileOptions& opts);

Field2D field_2d(const FieldProfile& profile, const WaveParams& wave,
                 std::span<const double> y_grid);

}  // namespace locwave
