#pragma once

// Physical constants in Gaussian-cgs units (erg, G, cm, s, K, g).
// Everything in this library is evaluated in cgs; SI only appears at the
// config boundary.

#include <numbers>

namespace needle {

struct PhysicalConstants {
    double hbar;   // erg s
    double mu_B;   // erg/G
    double k_B;    // erg/K
    double c;      // cm/s
    double h;      // erg s
    double amu;    // g
    double zeta3;  // Riemann zeta(3)
    double eV;     // erg per electron-volt

    // CODATA 2018 values.
    static constexpr PhysicalConstants cgs()
    {
        constexpr double h = 6.62607015e-27;
        return {h / (2.0 * std::numbers::pi), 9.2740100783e-21, 1.380649e-16, 2.99792458e10,
                h, 1.66053906660e-24, 1.2020569031595942, 1.602176634e-12};
    }

    void validate() const;
};

// 1 Ohm cm expressed in Gaussian seconds: 1e9 / c^2 with c in cm/s.
double ohm_cm_per_gaussian_second(const PhysicalConstants& k = PhysicalConstants::cgs());
double resistivity_from_ohm_cm(double ohm_cm, const PhysicalConstants& k = PhysicalConstants::cgs());
double resistivity_to_ohm_cm(double seconds, const PhysicalConstants& k = PhysicalConstants::cgs());

}  // namespace needle
