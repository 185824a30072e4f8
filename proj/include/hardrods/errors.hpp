#pragma once
#include <stdexcept>
#include <string>

namespace hardrods {

// Enumeration work exceeded the configured node budget.
struct BudgetExceeded : std::runtime_error {
    explicit BudgetExceeded(const std::string& m) : std::runtime_error(m) {}
};

// Multiset size above the supported cap for exact coefficients.
struct SizeLimit : std::runtime_error {
    explicit SizeLimit(const std::string& m) : std::runtime_error(m) {}
};

// Box side incompatible with the coarse paving (L must be a multiple of 4*ell).
struct DivisibilityError : std::runtime_error {
    explicit DivisibilityError(const std::string& m) : std::runtime_error(m) {}
};

// A tile holds rods of both orientations.
struct MixedTile : std::runtime_error {
    explicit MixedTile(const std::string& m) : std::runtime_error(m) {}
};

// Spin configuration violates the forced boundary band.
struct NotInThetaQ : std::runtime_error {
    explicit NotInThetaQ(const std::string& m) : std::runtime_error(m) {}
};

// Boundary layer of a contour support carries a non-uniform or zero label.
struct NonUniformPeel : std::runtime_error {
    explicit NonUniformPeel(const std::string& m) : std::runtime_error(m) {}
};

// A smoothing square of a contour support has no defect witness inside it.
struct NoBadStructure : std::runtime_error {
    explicit NoBadStructure(const std::string& m) : std::runtime_error(m) {}
};

// Invalid run configuration or inconsistent inputs.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& m) : std::runtime_error(m) {}
};

} // namespace hardrods
