#include "locwave/objective.hpp"

#include <cmath>

namespace locwave {

const char* violation_name(Violation v) {
    switch (v) {
        case Violation::EqualSpeeds: return "EQUAL_SPEEDS";
        case Violation::SigmaANonpos: return "SIGMA_A_NONPOS";
        case Violation::SigmaBNonpos: return "SIGMA_B_NONPOS";
        case Violation::NotRightDecaying: return "NOT_RIGHT_DECAYING";
        case Violation::NoC0Match: return "NO_C0_MATCH";
        case Violation::KappaTooSmall: return "KAPPA_TOO_SMALL";
    }
    return "UNKNOWN";
}

ObjectiveResult evaluate_objective(const Vec3& position, const WaveParams& wave,
                                   const ObjectiveConstraints& constraints) {
    ObjectiveResult out;
    const MediumConfig medium{position[0], position[1], position[2], std::nullopt};

    if (std::abs(medium.c_a - medium.c_b) < constraints.distinct_eps ||
        medium.c_a == medium.c_b) {
        out.feasibility.add(Violation::EqualSpeeds);
        return out;
    }
    const LayerWaveNumbers sig = layer_wave_numbers(medium, wave);
    if (!sig.sigma_a.propagating) {
        out.feasibility.add(Violation::SigmaANonpos);
        return out;
    }
    if (!sig.sigma_b.propagating) {
        out.feasibility.add(Violation::SigmaBNonpos);
        return out;
    }

    const LocalizationReport rep = classify(medium, wave);
    out.report = rep;
    if (rep.region == Region::NoRightDecay) {
        out.feasibility.add(Violation::NotRightDecaying);
        return out;
    }
    if (rep.region != Region::Localized) {
        out.feasibility.add(Violation::NoC0Match);
        return out;
    }
    if (!(*rep.kappa > constraints.kappa_min)) {
        out.feasibility.add(Violation::KappaTooSmall);
        return out;
    }
    out.value = rep.lambda1_abs;
    return out;
}

}  // namespace locwave
