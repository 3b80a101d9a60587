// Grid sweeps over the wave plane (eta, omega) and over design space.
//
// Each kernel has an OpenMP version in `locwave` and a plain loop in
// `locwave::serial`; both write cells in canonical row-major order and must
// agree bit for bit.
#pragma once

#include <cstddef>
#include <vector>

#include "locwave/core_em.hpp"
#include "locwave/objective.hpp"

namespace locwave {

struct ScanGrid {
    std::vector<double> eta_axis;
    std::vector<double> omega_axis;

    void validate() const;

    /// Cell-centred samples: min + (k + 1/2) * (max - min) / count.
    static ScanGrid centred(double eta_min, double eta_max, std::size_t eta_count,
                            double omega_min, double omega_max, std::size_t omega_count);
};

std::vector<double> centred_axis(double lo, double hi, std::size_t count);

struct RegionCell {
    Region region = Region::NoRightDecay;
    double lambda1_abs = 1.0;

    friend bool operator==(const RegionCell&, const RegionCell&) = default;
};

struct RegionMap {
    ScanGrid grid;
    MediumConfig medium;
    std::vector<RegionCell> cells;  // cells[i * omega.size() + j] <-> (eta_i, omega_j)

    [[nodiscard]] const RegionCell& at(std::size_t i, std::size_t j) const {
        return cells[i * grid.omega_axis.size() + j];
    }
};

struct DesignAxes {
    std::vector<double> c_a;
    std::vector<double> c_b;
    std::vector<double> theta;
};

/// values[(i * c_b.size() + j) * theta.size() + k] <-> (c_a_i, c_b_j, theta_k)
struct ObjectiveField {
    DesignAxes axes;
    WaveParams wave;
    std::vector<double> values;

    [[nodiscard]] double at(std::size_t i, std::size_t j, std::size_t k) const {
        return values[(i * axes.c_b.size() + j) * axes.theta.size() + k];
    }
};

RegionMap scan_wave_plane(const MediumConfig& medium, const ScanGrid& grid);

ObjectiveField scan_design_slice(const WaveParams& wave, const DesignAxes& axes,
                                 const ObjectiveConstraints& constraints);

namespace serial {

RegionMap scan_wave_plane(const MediumConfig& medium, const ScanGrid& grid);

ObjectiveField scan_design_slice(const WaveParams& wave, const DesignAxes& axes,
                                 const ObjectiveConstraints& constraints);

}  // namespace serial

}  // namespace locwave
