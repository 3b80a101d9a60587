// Localization objective over a design point (c_a, c_b, theta) at fixed (omega, eta).
#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "locwave/core_em.hpp"

namespace locwave {

/// Value assigned to non-localizing or infeasible designs.
inline constexpr double kSentinel = 2.0;

using Vec3 = std::array<double, 3>;  // (c_a, c_b, theta)

enum class Violation : std::uint8_t {
    EqualSpeeds = 1u << 0,
    SigmaANonpos = 1u << 1,
    SigmaBNonpos = 1u << 2,
    NotRightDecaying = 1u << 3,
    NoC0Match = 1u << 4,
    KappaTooSmall = 1u << 5,
};

struct FeasibilityResult {
    std::uint8_t violations = 0;

    [[nodiscard]] bool feasible() const { return violations == 0; }
    [[nodiscard]] bool has(Violation v) const { return (violations & static_cast<std::uint8_t>(v)) != 0; }
    void add(Violation v) { violations |= static_cast<std::uint8_t>(v); }
};

const char* violation_name(Violation v);

struct ObjectiveConstraints {
    double kappa_min = 0.5;
    double distinct_eps = 1e-6;

    /// Bare localization objective: only the half-space match is required.
    static ObjectiveConstraints localization_only() { return {0.0, 0.0}; }
};

struct ObjectiveResult {
    double value = kSentinel;
    FeasibilityResult feasibility;
    std::optional<LocalizationReport> report;
};

/// Constraints are checked cheap-to-expensive and evaluation stops at the
/// first failure, so `violations` holds exactly one code when infeasible.
ObjectiveResult evaluate_objective(const Vec3& position, const WaveParams& wave,
                                   const ObjectiveConstraints& constraints);

}  // namespace locwave
