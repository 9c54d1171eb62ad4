#include "needle/constants.hpp"

#include "needle/errors.hpp"

namespace needle {

void PhysicalConstants::validate() const
{
    require(hbar > 0 && mu_B > 0 && k_B > 0 && c > 0 && h > 0 && amu > 0 && zeta3 > 0 && eV > 0,
            "physical constants must be positive");
}

double ohm_cm_per_gaussian_second(const PhysicalConstants& k)
{
    // 1 Ohm = 1e9 / c^2 s/cm in Gaussian units.
    return 1e9 / (k.c * k.c);
}

double resistivity_from_ohm_cm(double ohm_cm, const PhysicalConstants& k)
{
    return ohm_cm * ohm_cm_per_gaussian_second(k);
}

double resistivity_to_ohm_cm(double seconds, const PhysicalConstants& k)
{
    return seconds / ohm_cm_per_gaussian_second(k);
}

}  // namespace needle
