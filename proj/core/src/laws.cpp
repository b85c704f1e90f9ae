#include "whitpack/laws.hpp"

#include <cmath>
#include <string>

#include "whitpack/constants.hpp"
#include "whitpack/errors.hpp"

namespace whitpack {

double spread_law_a0(double spread_eV) {
  if (!(spread_eV > 0.0)) {
    throw DomainError("spread_law_a0: spread must be positive");
  }
  return C_R_A0_SQRT_EV / std::sqrt(spread_eV);
}

double lifetime_law_fs(double energy_eV, double spread_eV) {
  if (!(energy_eV > 0.0) || !(spread_eV > 0.0)) {
    throw DomainError("lifetime_law_fs: energy and spread must be positive");
  }
  return C_T_EV_FS / std::sqrt(energy_eV * spread_eV);
}

namespace {

void push(std::vector<TradeOffCell>& out, const std::string& block,
          const std::string& quantity, double energy_eV, double reference,
          double computed) {
  out.push_back({block, quantity, energy_eV, reference, computed,
                 std::abs(computed - reference) / std::abs(reference)});
}

}  // namespace

std::vector<TradeOffCell> trade_off_table() {
  const double energies[3] = {1.0, 200.0, 10000.0};
  std::vector<TradeOffCell> out;

  // fixed lifetime blocks: dE determined by dt and E, then dr by dE
  struct FixedDt {
    const char* label;
    double dt_fs;
    double ref_dE[3];
    double ref_dr_nm[3];
  };
  const FixedDt dt_blocks[2] = {
      {"dt=53as", 0.053, {6.6, 3.3e-2, 6.6e-4}, {5.1e-2, 7.2e-1, 5.1}},
      {"dt=100as", 0.100, {1.9, 9.3e-3, 1.9e-4}, {9.6e-2, 1.4, 9.6}},
  };
  for (const auto& b : dt_blocks) {
    const double ct_over_dt = C_T_EV_FS / b.dt_fs;
    for (int c = 0; c < 3; ++c) {
      const double dE = ct_over_dt * ct_over_dt / energies[c];
      push(out, b.label, "dE_eV", energies[c], b.ref_dE[c], dE);
      push(out, b.label, "dr_nm", energies[c], b.ref_dr_nm[c],
           spread_law_a0(dE) * A0_NM);
    }
  }

  // fixed spread blocks: dE determined by dr (energy-independent), then dt
  struct FixedDr {
    const char* label;
    double dr_nm;
    double ref_dE;
    double ref_dt_as[3];
  };
  const FixedDr dr_blocks[2] = {
      {"dr=143nm", 143.0, 8.4e-7, {1.5e5, 1.1e4, 1.5e3}},
      {"dr=10nm", 10.0, 1.7e-4, {1.0e4, 7.4e2, 1.0e2}},
  };
  for (const auto& b : dr_blocks) {
    const double cr_nm = C_R_A0_SQRT_EV * A0_NM;
    const double dE = (cr_nm / b.dr_nm) * (cr_nm / b.dr_nm);
    push(out, b.label, "dE_eV", 0.0, b.ref_dE, dE);
    for (int c = 0; c < 3; ++c) {
      push(out, b.label, "dt_as", energies[c], b.ref_dt_as[c],
           lifetime_law_fs(energies[c], dE) * 1000.0);
    }
  }
  return out;
}

}  // namespace whitpack
