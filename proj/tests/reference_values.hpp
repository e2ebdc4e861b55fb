// High-precision reference constants for the test suites.
//
// Generated by tests/reference/gen_reference.py (mpmath at 40 significant
// digits, bisection-only root solving, adaptive quadrature) -- a code path
// that shares nothing with the library under test.  Rerun that script to
// audit; hand-edit never.
#pragma once

#include <cstddef>

namespace refvals {

// ---- special functions -----------------------------------------------------
inline constexpr double erf_1 = 0.84270079294971487;
inline constexpr double erf_0_1 = 0.11246291601828489;
inline constexpr double erf_0_5 = 0.52049987781304654;
inline constexpr double erf_2 = 0.99532226501895273;
inline constexpr double erf_3 = 0.99997790950300141;
inline constexpr double erf_5 = 0.99999999999846254;
inline constexpr double erfc_0_5 = 0.47950012218695346;
inline constexpr double erfc_1 = 0.15729920705028513;
inline constexpr double erfc_2 = 0.0046777349810472658;
inline constexpr double erfc_4 = 1.5417257900280019e-8;
inline constexpr double erfc_6 = 2.1519736712498913e-17;
inline constexpr double erfc_8 = 1.1224297172982927e-29;
inline constexpr double erfc_10 = 2.0884875837625448e-45;
inline constexpr double erfinv_0_5 = 0.47693627620446987;
inline constexpr double erfinv_0_99 = 1.8213863677184495;
inline constexpr double erfinv_0_9 = 1.1630871536766742;
inline constexpr double erfinv_0_1 = 0.088855990494257692;
inline constexpr double erfinv_1e8 = 8.8622692545275806e-9;
inline constexpr double erfinv_0_999999 = 3.4589107372754988;
inline constexpr double erfinv_m0_73 = -0.77998301356170257;
inline constexpr double q_of_1_6448536269514722 = 0.050000000000000053;
inline constexpr double q_of_10 = 7.6198530241605261e-24;

// ---- rate-function tables --------------------------------------------------
// One row per alpha: {alpha, beta_w, beta_0, nu, a0, c3, gamma, rate}.
struct RateRow {
    double alpha, beta_w, beta_0, nu, a0, c3, gamma, rate;
};

// Signed family at beta = 0.19284.
inline constexpr RateRow signed_rows[] = {
    {0.35, 0.10989282637143446, -0.6420159569610046, 1.1036364849223222,
     2.1287278033201002, -0.98145613500585044, 0.13895810854427981,
     -0.051742330628302457},
    {0.40, 0.13493039459045742, -0.24239259065072714, 1.0227751004149977,
     1.5786425753830952, -0.59778872328436134, 0.2003162533102832,
     -0.021733957567644796},
    {0.45, 0.16250874146184195, 0.012111798146454691, 0.94771074857941681,
     1.2360824039360162, -0.28649051994842737, 0.2713493821746292,
     -0.005191902639818022},
    {0.50, 0.19284483309074046, 0.19286371491136281, 0.87690098555286205,
     0.99996957800103745, 4.3023857973179099e-5, 0.35356414672137852,
     -1.155800472892463e-10},
    {0.55, 0.22622613586316468, 0.33127528913987677, 0.8091397989142549,
     0.82563790155995956, 0.28592916362060884, 0.44911930963219492,
     -0.0048569848384954153},
    {0.60, 0.26303432608160891, 0.44332825619886742, 0.74340935998045736,
     0.69020690203495721, 0.58763538019551333, 0.561133673799637,
     -0.018954186847915413},
    {0.65, 0.30378423494599334, 0.53800686308232092, 0.67877208632046944,
     0.58065489424751216, 0.92033772943329877, 0.69423833572837338,
     -0.041828204414380586},
};
inline constexpr double signed_beta = 0.19284;

// Nonnegative family at beta = 0.27911.
inline constexpr RateRow nonneg_rows[] = {
    {0.40, 0.19211296656091103, 0.030253540312638781, 0.65162391316917162,
     2.1568621041258832, -1.0708898994130665, 0.14661473508757128,
     -0.035731617960472398},
    {0.45, 0.23355201630294956, 0.16462014730993138, 0.57571472747097686,
     1.4108774306612027, -0.47098208534535277, 0.23773163375912792,
     -0.0083720529441822949},
    {0.50, 0.27911384565708976, 0.27911859746388277, 0.50605446898918076,
     0.99997426105888006, 3.640082807835754e-5, 0.35356249091740971,
     -5.1909469681638959e-11},
    {0.55, 0.32894780842950153, 0.37924209235735098, 0.44153925408741583,
     0.73895155781449855, 0.45558977199012678, 0.50180545725010676,
     -0.0076877902866259245},
    {0.60, 0.38321585231246595, 0.46867624033996163, 0.38134158078374158,
     0.55797096740586028, 0.9560358506994931, 0.69411915179276038,
     -0.029896228952504278},
};
inline constexpr double nonneg_beta = 0.27911;

// ---- breaking points -------------------------------------------------------
inline constexpr double alpha_w_signed_019284 = 0.49999240168302852;
inline constexpr double alpha_w_nonneg_027911 = 0.49999596652302497;

// ---- off-grid weak transition points ---------------------------------------
inline constexpr double beta_w_signed_025 = 0.066845888101939272;
inline constexpr double beta_w_signed_075 = 0.40028375760335159;
inline constexpr double beta_w_nonneg_030 = 0.12108016165678768;
inline constexpr double beta_w_nonneg_070 = 0.50575880810367338;

// ---- sphere exponent -------------------------------------------------------
inline constexpr double i_sph_09203_065 = -0.56874444755342752;   // c3=0.9203, alpha=0.65
inline constexpr double i_sph_m09815_035 = 0.88249818780456184;   // c3=-0.9815, alpha=0.35

// ---- w1/w2 closed forms (cross-checked against quadrature to 17 digits) ----
struct W12Row {
    double nu, a0, w1, w2;
};
inline constexpr W12Row w12_rows[] = {
    {0.9, 0.7, 1.0642188425473589, 2.1775612461824755},
    {0.6788, 0.5807, 1.1593213150497364, 2.7083502549834243},
    {1.2, 0.45, 1.0599458370924366, 37.866365027847484},
};

// ---- geometric decomposition spot values -----------------------------------
// (alpha=0.65, beta=0.19284, signed)
inline constexpr double hdg_s_psi_com = 0.86922542194983271;
inline constexpr double hdg_s_y_int = 0.82659140544978014;
inline constexpr double hdg_s_psi_int = -0.52061161141011477;
inline constexpr double hdg_s_y_ext = 0.47996434511734453;
inline constexpr double hdg_s_psi_ext = 0.39044201495409852;
inline constexpr double hdg_s_psi_net = -0.041828204414380586;
inline constexpr double hdg_s_donoho_s = 1.1689767761281169;
inline constexpr double hdg_s_psi_int_donoho = 0.52061161141011477;
// (alpha=0.45, beta=0.27911, nonnegative)
inline constexpr double hdg_n_psi_com = 0.39480298248586769;
inline constexpr double hdg_n_y_int = 0.28853802532861465;
inline constexpr double hdg_n_psi_int = -0.14608265413590833;
inline constexpr double hdg_n_y_ext = 0.40709178782369287;
inline constexpr double hdg_n_psi_ext = 0.25709238129414166;
inline constexpr double hdg_n_psi_net = -0.0083720529441822949;
inline constexpr double hdg_n_donoho_s = 0.40805438868007845;
inline constexpr double hdg_n_psi_int_donoho = 0.14608265413590833;
// (alpha=0.5, beta=0.19284, signed)
inline constexpr double hdg_psi_com_05_019284 = 0.74912759087518182;

// ---- objective and its derivatives at a non-stationary point ---------------
// alpha=0.6, c3=0.5, nu=0.8, a0=0.75; beta = family default above.
inline constexpr double zeta_signed_spot = -0.015951638818421122;
inline constexpr double zeta_signed_d_c3 = 0.078916113052157538;
inline constexpr double zeta_signed_d_nu = 0.0092669536787883846;
inline constexpr double zeta_signed_d_a0 = 0.20569575004170788;
inline constexpr double zeta_nonneg_spot = 0.0023201285671994448;
inline constexpr double zeta_nonneg_d_c3 = 0.078916113052157538;
inline constexpr double zeta_nonneg_d_nu = 0.12265412868614413;
inline constexpr double zeta_nonneg_d_a0 = 0.080712751021972214;

// ---- finite-n exponent bounds ----------------------------------------------
inline constexpr double finite_n_300_57_150_signed = -4.0313890160363055e-5;
inline constexpr double finite_n_137_26_89_signed = -0.044272027655864389;
inline constexpr double finite_n_150_42_90_nonneg = -0.029375123863930037;

}  // namespace refvals
