#pragma once

// Unit system used throughout: lengths in Bohr radii (a0), energies in eV,
// times in fs. The dimensionless radial coordinate of the continuum modes is
// x = 2 r / a0 and the dimensionless momentum is kappa = k a0, so that
// E(kappa) = 2 E_h kappa^2 and each mode evolves as exp(-i omega0 kappa^2 t).

namespace whitpack {

inline constexpr double E_H_EV = 27.211386245988;      // Hartree
inline constexpr double HBAR_EV_FS = 0.6582119569;     // hbar
inline constexpr double A0_NM = 0.052917721067;        // Bohr radius
inline constexpr double OMEGA0_FS = 2.0 * E_H_EV / HBAR_EV_FS;  // 2 E_h/hbar, ~82.69 fs^-1
inline constexpr double ALPHA_FS = 7.2973525693e-3;    // fine structure constant

// SI values, kept only for the radiative prefactor cross-check
inline constexpr double SI_C = 2.99792458e8;           // m/s
inline constexpr double SI_E = 1.602176634e-19;        // C
inline constexpr double SI_ME = 9.1093837015e-31;      // kg
inline constexpr double SI_EPS0 = 8.8541878128e-12;    // F/m
inline constexpr double SI_HBAR = 1.054571817e-34;     // J s
inline constexpr double SI_A0 = 5.29177210903e-11;     // m

struct PhysicalConstants {
  double bohr_radius_nm = A0_NM;
  double hartree_eV = E_H_EV;
  double hbar_eV_fs = HBAR_EV_FS;
  double omega0_per_fs = OMEGA0_FS;
  double fine_structure = ALPHA_FS;
  double light_speed_m_s = SI_C;
  double electron_mass_kg = SI_ME;
  double electron_charge_C = SI_E;
  double vacuum_permittivity_F_m = SI_EPS0;
};

// Smallest kappa the mode evaluator accepts. Below this the energy is under
// 0.05 meV, outside every regime the packet pipelines touch.
inline constexpr double KAPPA_MIN = 1e-3;

// Packet windows are clipped at this floor instead of crossing kappa <= 0
// (modes are undefined there and vanish linearly as kappa -> 0).
inline constexpr double KAPPA_FLOOR = 2e-3;

// Half-width of the Gaussian momentum window in units of sigma.
inline constexpr double WINDOW_SIGMAS = 5.0;

}  // namespace whitpack
