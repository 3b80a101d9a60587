#include "locwave/band_scan.hpp"

#include <cmath>
#include <cstdint>

namespace locwave {

namespace {

void check_axis(const std::vector<double>& axis, const char* name) {
    if (axis.empty()) throw Error(ErrorCode::InvalidArgument, std::string(name) + " axis is empty");
    for (std::size_t k = 0; k < axis.size(); ++k) {
        if (!std::isfinite(axis[k])) {
            throw Error(ErrorCode::InvalidArgument, std::string(name) + " axis has a non-finite value");
        }
        if (k > 0 && !(axis[k] > axis[k - 1])) {
            throw Error(ErrorCode::InvalidArgument, std::string(name) + " axis is not strictly increasing");
        }
    }
}

void check_design_axes(const DesignAxes& axes) {
    check_axis(axes.c_a, "c_a");
    check_axis(axes.c_b, "c_b");
    check_axis(axes.theta, "theta");
    if (!(axes.c_a.front() > 0.0) || !(axes.c_b.front() > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "design speeds must be > 0");
    }
    if (!(axes.theta.front() >= 0.0) || !(axes.theta.back() <= 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "theta axis must lie in [0, 1]");
    }
}

RegionCell classify_cell(const MediumConfig& medium, double eta, double omega) {
    const LocalizationReport rep = classify(medium, WaveParams{omega, eta});
    return {rep.region, rep.lambda1_abs};
}

}  // namespace

void ScanGrid::validate() const {
    check_axis(eta_axis, "eta");
    check_axis(omega_axis, "omega");
    if (!(eta_axis.front() >= 0.0)) throw Error(ErrorCode::InvalidArgument, "eta axis must be >= 0");
    if (!(omega_axis.front() > 0.0)) throw Error(ErrorCode::InvalidArgument, "omega axis must be > 0");
}

std::vector<double> centred_axis(double lo, double hi, std::size_t count) {
    if (count == 0 || !(hi > lo)) {
        throw Error(ErrorCode::InvalidArgument, "axis needs count >= 1 and max > min");
    }
    std::vector<double> axis(count);
    const double step = (hi - lo) / static_cast<double>(count);
    for (std::size_t k = 0; k < count; ++k) axis[k] = lo + (static_cast<double>(k) + 0.5) * step;
    return axis;
}

ScanGrid ScanGrid::centred(double eta_min, double eta_max, std::size_t eta_count,
                           double omega_min, double omega_max, std::size_t omega_count) {
    return {centred_axis(eta_min, eta_max, eta_count), centred_axis(omega_min, omega_max, omega_count)};
}

RegionMap scan_wave_plane(const MediumConfig& medium, const ScanGrid& grid) {
    medium.validate();
    grid.validate();
    RegionMap map{grid, medium, {}};
    const auto n_eta = static_cast<std::int64_t>(grid.eta_axis.size());
    const auto n_omega = static_cast<std::int64_t>(grid.omega_axis.size());
    map.cells.resize(static_cast<std::size_t>(n_eta * n_omega));

#pragma omp parallel for collapse(2) schedule(static)
    for (std::int64_t i = 0; i < n_eta; ++i) {
        for (std::int64_t j = 0; j < n_omega; ++j) {
            map.cells[static_cast<std::size_t>(i * n_omega + j)] = classify_cell(
                medium, grid.eta_axis[static_cast<std::size_t>(i)], grid.omega_axis[static_cast<std::size_t>(j)]);
        }
    }
    return map;
}

ObjectiveField scan_design_slice(const WaveParams& wave, const DesignAxes& axes,
                                 const ObjectiveConstraints& constraints) {
    wave.validate();
    check_design_axes(axes);
    ObjectiveField field{axes, wave, {}};
    const auto na = static_cast<std::int64_t>(axes.c_a.size());
    const auto nb = static_cast<std::int64_t>(axes.c_b.size());
    const auto nt = static_cast<std::int64_t>(axes.theta.size());
    field.values.resize(static_cast<std::size_t>(na * nb * nt));

#pragma omp parallel for collapse(3) schedule(static)
    for (std::int64_t i = 0; i < na; ++i) {
        for (std::int64_t j = 0; j < nb; ++j) {
            for (std::int64_t k = 0; k < nt; ++k) {
                const Vec3 p{axes.c_a[static_cast<std::size_t>(i)], axes.c_b[static_cast<std::size_t>(j)],
                             axes.theta[static_cast<std::size_t>(k)]};
                field.values[static_cast<std::size_t>((i * nb + j) * nt + k)] =
                    evaluate_objective(p, wave, constraints).value;
            }
        }
    }
    return field;
}

namespace serial {

RegionMap scan_wave_plane(const MediumConfig& medium, const ScanGrid& grid) {
    medium.validate();
    grid.validate();
    RegionMap map{grid, medium, {}};
    map.cells.reserve(grid.eta_axis.size() * grid.omega_axis.size());
    for (double eta : grid.eta_axis) {
        for (double omega : grid.omega_axis) map.cells.push_back(classify_cell(medium, eta, omega));
    }
    return map;
}

ObjectiveField scan_design_slice(const WaveParams& wave, const DesignAxes& axes,
                                 const ObjectiveConstraints& constraints) {
    wave.validate();
    check_design_axes(axes);
    ObjectiveField field{axes, wave, {}};
    field.values.reserve(axes.c_a.size() * axes.c_b.size() * axes.theta.size());
    for (double ca : axes.c_a) {
        for (double cb : axes.c_b) {
            for (double th : axes.theta) {
                field.values.push_back(evaluate_objective({ca, cb, th}, wave, constraints).value);
            }
        }
    }
    return field;
}

}  // namespace serial

}  // namespace locwave
