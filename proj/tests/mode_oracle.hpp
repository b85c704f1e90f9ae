// Reference values for the continuum mode w(kappa, x) and its x-derivative,
// computed independently with 30-digit arbitrary-precision arithmetic from the
// confluent hypergeometric representation w = 2*i*kappa*exp(-i*kappa*x)*M(1+i/(2*kappa), 2, 2*i*kappa*x).
// The real part is identically zero; im_w / im_dw are the imaginary parts.
#pragma once

#include <array>

namespace wptest {

struct ModeOracleRow {
  double kappa;
  double x;
  double im_w;
  double im_dw;
};

inline constexpr std::array<ModeOracleRow, 50> mode_oracle = {{
    {0.05, 0.0, 0.10000000000000000, -0.050000000000000000},
    {0.05, 0.3, 0.085728139711796144, -0.045205228847307801},
    {0.05, 1.0, 0.057643081944752375, -0.035331448326158642},
    {0.05, 5.0, -0.010086919213766894, -0.0044969598623815297},
    {0.05, 10.0, -0.0061357213662243895, 0.0029785245454260024},
    {0.05, 27.2, -0.0017013190521919629, -0.00081036849333164865},
    {0.05, 50.0, 0.0026065048079182260, 0.00015516949613089086},
    {0.05, 120.0, -0.00028991195171674413, -0.00014665258389102063},
    {0.05, 200.0, -0.00095103946076418321, -6.5338165698392157e-6},
    {0.05, 350.0, -0.00038459079960475880, -3.2355974102328155e-5},
    {0.1356, 0.0, 0.27120000000000000, -0.13560000000000000},
    {0.1356, 0.3, 0.23243631614417508, -0.12296589445018092},
    {0.1356, 1.0, 0.15582186831481447, -0.096645040676810977},
    {0.1356, 5.0, -0.028885102610354334, -0.011436958198199085},
    {0.1356, 10.0, -0.012489911728119508, 0.0088476439369591442},
    {0.1356, 27.2, -0.010200715554370153, -0.00099148387928871954},
    {0.1356, 50.0, 0.0025936269842557038, -0.0013002878360216063},
    {0.1356, 120.0, 0.0019540169367740230, -0.00041964783546094976},
    {0.1356, 200.0, 0.0011785024176719107, -0.00024437590235564587},
    {0.1356, 350.0, -0.00037326093179196079, 0.00015881447636444492},
    {0.5, 0.0, 1.0000000000000000, -0.50000000000000000},
    {0.5, 0.3, 0.85393040271050124, -0.47321983640604614},
    {0.5, 1.0, 0.54771998043680772, -0.39941508716520581},
    {0.5, 5.0, -0.13717677122065540, 0.013969233635125675},
    {0.5, 10.0, 0.072492652602972046, -0.00017188017859503607},
    {0.5, 27.2, -0.028300651176740402, 0.00044175260784491591},
    {0.5, 50.0, -0.012805202201034201, -0.0044137916751991874},
    {0.5, 120.0, 0.0050611858647094718, -0.0021858475332966652},
    {0.5, 200.0, -0.0037095350691786656, 0.00072697398612765161},
    {0.5, 350.0, -0.0019699231509087299, 0.00057389966387580443},
    {1.917, 0.0, 3.8340000000000000, -1.9170000000000000},
    {1.917, 0.3, 3.0991706710500865, -2.8984774835812501},
    {1.917, 1.0, 0.85692958277628929, -2.9881465624710466},
    {1.917, 5.0, -0.24391931620724124, -0.20941579121423558},
    {1.917, 10.0, 0.13766353782783216, 0.027745139302033906},
    {1.917, 27.2, -0.0047128835685330453, -0.098495852615578756},
    {1.917, 50.0, 0.00068493313930902158, -0.053839183506570821},
    {1.917, 120.0, -0.0074780970894159304, 0.017281932852660043},
    {1.917, 200.0, 0.0063682832940143310, -0.0056511058690252722},
    {1.917, 350.0, 0.0024918849878873616, 0.0060084673746546981},
    {5.0, 0.0, 10.000000000000000, -5.0000000000000000},
    {5.0, 0.3, 5.5543069962369304, -21.248566250876990},
    {5.0, 1.0, -1.4304023237628696, 6.1639636794500330},
    {5.0, 5.0, 0.10690614446307465, 1.6199248259553719},
    {5.0, 10.0, 0.043005084974452253, 0.83089183509587262},
    {5.0, 27.2, -0.063280774299782099, -0.010771308071122712},
    {5.0, 50.0, -0.020816488215121869, 0.13778118637814720},
    {5.0, 120.0, -0.0094918594183470838, -0.053807939910305985},
    {5.0, 200.0, 0.0084083067907122663, -0.0094512605776961732},
    {5.0, 350.0, -0.0041597422191297836, -0.013160142234208202},
}};

}  // namespace wptest
