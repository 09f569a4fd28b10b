#pragma once

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstddef>
#include <vector>

#include "frankfit/types.hpp"

namespace ref {

// Bundled 25-point dataset used across the estimator suites. The pairs are
// already on the unit square, so tests can feed them to the estimators with
// no rank transformation.
inline constexpr double kSample25[25][2] = {
    {0.2876, 0.7468}, {0.4090, 0.8699}, {0.9405, 0.0713}, {0.5281, 0.8920},
    {0.5514, 0.4700}, {0.9568, 0.5657}, {0.6776, 0.6132}, {0.1029, 0.8543},
    {0.2461, 0.0342}, {0.3279, 0.9445}, {0.8895, 0.7651}, {0.6405, 0.9948},
    {0.6557, 0.7358}, {0.5441, 0.6027}, {0.2892, 0.1259}, {0.9630, 0.9340},
    {0.6907, 0.8209}, {0.0246, 0.3652}, {0.7585, 0.2672}, {0.3182, 0.2048},
    {0.1428, 0.3343}, {0.4137, 0.3518}, {0.1524, 0.1053}, {0.2330, 0.4025},
    {0.2660, 0.8230}};

inline frankfit::BivariateSample sample25() {
    frankfit::BivariateSample s;
    for (const auto& row : kSample25)
        s.push_back(frankfit::UnitPair{row[0], row[1]});
    return s;
}

// ---- reference values, frozen from 40-digit evaluations -----------------

// cdf / density / score / conditional spot values
inline constexpr double kCdf_05_05_t10 = 0.43135681679291729987;
inline constexpr double kCdf_03_07_tm5 = 0.11289465477168149163;
inline constexpr double kCdf_04_05_t1em4 = 0.200002999999999675;
inline constexpr double kPdf_02_08_t10 = 0.024697019824565581255;
inline constexpr double kLogPdf_01_09_t50 = -36.08797699457185395;
inline constexpr double kLogPdf_02_08_t2 = -0.43576172715967555375;
inline constexpr double kLogPdf_03_035_t700 = -28.448919664956596588;
inline constexpr double kLogPdf_062_035_tm45 = 1.9956454065386086139;
inline constexpr double kLogPdf_05_05_tm700 = 5.1647859739235140543;
inline constexpr double kLogPdf_03_06_t1em4 = -3.9999126673386939364e-6;
inline constexpr double kLogPdf_03_06_tm9em5 = 3.6000707404898701083e-6;
inline constexpr double kScore_03_07_t2 = -0.0896764775353569837;
inline constexpr double kScore_03_06_t1em4 = -0.039998253353494424121;
inline constexpr double kCond_04_06_t3 = 0.31481561700698160705;
inline constexpr double kCond_04_06_t45 = 0.00012339457410739862695;
inline constexpr double kCond_04_06_tm45 = 0.49999999619297491703;

// conditional-quantile spot values (u1, v, theta) -> u2
inline constexpr double kInv_025_066_t3 = 0.48164983001440607257;
inline constexpr double kInv_09_005_tm8 = 0.013840868116204684643;
inline constexpr double kInv_045_099_t50 = 0.54190239700046879442;
inline constexpr double kInv_02_03_tm600 = 0.79858783689935466064;
inline constexpr double kInv_07_0123_t05 = 0.13508438036617951855;

// Debye ratios D1, D2
inline constexpr double kD1_1 = 0.77750463411224827642;
inline constexpr double kD2_1 = 0.70787847562782928288;
inline constexpr double kD1_2 = 0.60694728460981007205;
inline constexpr double kD2_2 = 0.49308264399053185014;
inline constexpr double kD1_5 = 0.32087619770014613885;
inline constexpr double kD2_5 = 0.17232915939014139334;
inline constexpr double kD1_10 = 0.16444346567994603476;
inline constexpr double kD2_10 = 0.047971498020121872621;
inline constexpr double kD1_30 = 0.054831135561510851684;
inline constexpr double kD2_30 = 0.0053424751249537071906;
inline constexpr double kD1_35 = 0.046998116195662962477;
inline constexpr double kD2_35 = 0.0039250837654177483858;
inline constexpr double kD1_50 = 0.032898681336964529414;
inline constexpr double kD2_50 = 0.0019232910450553509484;
inline constexpr double kD1_100 = 0.016449340668482264707;
inline constexpr double kD2_100 = 0.0004808227612638377372;
inline constexpr double kD1_700 = 0.0023499058097831806215;
inline constexpr double kD2_700 = 9.8127094135477076757e-6;

// concordance maps
inline constexpr double kTau_03 = 0.033303379171492674398;
inline constexpr double kTau_1 = 0.11001853644899310567;
inline constexpr double kTau_5 = 0.45670095816011688092;
inline constexpr double kTau_10 = 0.66577738627197839535;
inline constexpr double kTau_700 = 0.99429914231891304675;
inline constexpr double kRho_03 = 0.04994010312384220971;
inline constexpr double kRho_1 = 0.16448609818697207758;
inline constexpr double kRho_5 = 0.64348710805598862397;
inline constexpr double kRho_10 = 0.86023363880821101061;
inline constexpr double kRho_700 = 0.99995988411827937772;

// dataset statistics for sample25
inline constexpr double kSample25Tau = 46.0 / 300.0;
inline constexpr double kSample25Rho = 0.22230769230769231;  // 1 - 6*2022/(25*624)
inline constexpr double kSample25H600 = -0.28562133326894939211;
inline constexpr double kSample25Hm600 = 0.3784365344104611629;
inline constexpr double kSample25H1em3 = 0.036606625686633360973;
inline constexpr double kSample25Hm1em3 = 0.036666437845570305082;
inline constexpr double kSample25H1 = 0.0072608279399154801301;
inline constexpr double kSample25ThetaMl = 1.2524533782353088064;
inline constexpr double kSample25ThetaMm1 = 1.4069476350554150385;
inline constexpr double kSample25ThetaMm2 = 1.3667135572305529281;
inline constexpr double kSample25LoglikAtMl = 0.56946415558787401937;
inline constexpr double kSample25Loglik05 = 0.365076641327;
inline constexpr double kSample25Loglik3 = -0.500199245444;

// information terms i1, i2 and their difference
inline constexpr double kI1_01 = 199.916708316804727;
inline constexpr double kI1_1 = 1.92067359420779232;
inline constexpr double kI1_2 = 0.431015415241577617;
inline constexpr double kI1_5 = 0.0468296728801920574;
inline constexpr double kI1_10 = 0.0100454040523504756;
inline constexpr double kI1_50 = 0.00040000000000000000019;
inline constexpr double kI2_01 = 199.888935168435871;
inline constexpr double kI2_1 = 1.89335634002443327;
inline constexpr double kI2_2 = 0.405041576340902934;
inline constexpr double kI2_5 = 0.0281074416439288057;
inline constexpr double kI2_10 = 0.00112603052501460799;
inline constexpr double kI_01 = 0.02777314836885588;
inline constexpr double kI_1 = 0.02731725418335905;
inline constexpr double kI_2 = 0.02597383890067468;
inline constexpr double kI_5 = 0.01872223123626325;
inline constexpr double kI_10 = 0.008919373527335868;

// integrand ratio spot values
inline constexpr double kJ_03_06_t2 = 0.21521772447071806412;
inline constexpr double kJ_02_07_t4 = 0.021383495054071907337;
inline constexpr double kJ_09_01_tm3 = 0.064629146778390178167;
inline constexpr double kJ_001_099_t700 = -1.1366546036606075294e-298;
inline constexpr double kJ_05_05_t700 = 2.4823975990662448241e-153;
inline constexpr double kJ_062_035_tm45 = -0.00014713483285141983505;

inline bool close(double a, double b, double tol) {
    return std::fabs(a - b) <= tol;
}

inline bool close_rel(double a, double b, double rel) {
    return std::fabs(a - b) <= rel * std::fmax(std::fabs(a), std::fabs(b));
}

}  // namespace ref
