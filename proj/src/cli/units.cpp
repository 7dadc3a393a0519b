#include <cmath>
#include <string>

#include "exciton/cli.hpp"

namespace exciton::cli {

Radius convert_radius(double r_angstrom, const PhysicalParams& phys)
{
    if (!(r_angstrom > 0.0) || !(phys.epsilon > 0.0) || !(phys.mu > 0.0) || !std::isfinite(r_angstrom) ||
        !std::isfinite(phys.epsilon) || !std::isfinite(phys.mu)) {
        throw UsageError("convert-units: radius, epsilon and mu must be positive");
    }
    const double bohr = kBohrAngstrom * phys.epsilon / phys.mu;
    return Radius(r_angstrom / bohr);
}

std::optional<std::string> radius_note(Radius r)
{
    if (r.value() >= 0.05 && r.value() <= 0.2) {
        return std::string("r ≈ 0.1 a_B* (typical nanotube)");
    }
    return std::nullopt;
}

} // namespace exciton::cli
