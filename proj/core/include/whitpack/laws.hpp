#pragma once

#include <string>
#include <vector>

namespace whitpack {

// Calibrated trade-off constants: spatial spread delta_r = C_R / sqrt(dE)
// in a0 (dE in eV), diffraction lifetime delta_t = C_T / sqrt(E dE) in fs.
inline constexpr double C_R_A0_SQRT_EV = 2.471;
inline constexpr double C_T_EV_FS = 0.136;

double spread_law_a0(double spread_eV);
double lifetime_law_fs(double energy_eV, double spread_eV);

// One cell of the spread-lifetime trade-off table: a reference value quoted
// at two significant figures and the corresponding closed-form evaluation.
struct TradeOffCell {
  std::string block;     // which quantity is held fixed, e.g. "dt=53as"
  std::string quantity;  // "dE_eV", "dr_nm", or "dt_as"
  double energy_eV;      // column energy (0 for energy-independent cells)
  double reference;      // quoted value
  double computed;       // closed-form value, unrounded chaining
  double rel_error;      // |computed - reference| / |reference|
};

// Recomputes every derived cell of the trade-off table from the two scaling
// laws, carrying unrounded intermediate values within each block.
std::vector<TradeOffCell> trade_off_table();

}  // namespace whitpack
