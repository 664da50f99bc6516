#pragma once
// Generated by tests/oracles/generate_oracles.py; do not edit.
#include <complex>
namespace oracle {
using C = std::complex<double>;
inline const C gamma_3p2i = C{-0.42263728631120216673, 0.87181425569650686075};
inline const C gamma_m2p5_0p5i = C{-0.3338752035224323374, -0.20645730796360841492};
inline const C gamma_20p7 = C{985243024089015404.6, 0.0};
inline const C gamma_30p40i = C{1874199767303780188000.0, -1510844503332867868600.0};
inline const C gamma_m20p5p30i = C{0.00000000000000000000000000000000000000000000000000012766629344400745206, 0.00000000000000000000000000000000000000000000000000012900163642727413559};
inline const C gamma_m45p3 = C{0.000000000000000000000000000000000000000000000000000000010316817830592607724, 0.0};
inline const C digamma_1p5p2i = C{0.79983375817295367991, 1.1001971357298586774};
inline const C digamma_m0p3p1i = C{0.25548511967944314715, 2.2670944931589370686};
inline const C zeta_0p5p14i = C{0.022241142609993589246, -0.1032581232664500579};
inline const C zeta_2p3m5i = C{0.87222221583182672718, -0.081601617564825470402};
inline const C zeta_m3p5p1i = C{0.0045506714838067845639, 0.012344456932855457653};
inline const C zeta_0p5p37i = C{0.26094115117394468723, -1.12433669816952829};
inline const C completed_zeta_0p3p7i = C{-0.0061331197611644539944, 0.00078860118996813614896};
inline const double laurent_const_zeta_hat = -0.97690429103387896619;
inline const double whittaker_w_1_0p3_5 = 0.39747776724840243545;
inline const C whittaker_w_m1_0p4p2i_2p5 = C{0.020555923388283270078, 0.010208427635347460512};
inline const C whittaker_w_2_1p5i_0p7 = C{0.0061005491096320678278, -0.00000000000000000000022314356060581372994};
inline const C whittaker_w_m2_1p2_8 = C{0.00018105077260576683398, 0.0};
inline const C whittaker_d2_1_0p2p0p1i_3 = C{0.42640092663815207866, 0.014329953216680443407};
inline const C whittaker_d3_m1_0p6_1p7 = C{0.10642464016445792519, 0.0};
inline const C m_plus_0_0p3_2 = C{3.0100467218915585626, 0.20404403257090277375};
inline const C m_plus_1_0p3_6 = C{-5.815037466353578932, -1.0684919731268696708};
inline const C e4_i_2_lattice = C{1.8808830130829122, 2.326601091067744e-19};
inline const double e4_i_2_lattice_tail = 1.636246173744684e-20;
inline const C e4_i_2_fourier = C{1.8808830130829151509, 0.0};
inline const C completed_4_2p5_z0p3p1p1i = C{2.2926494465032034786, 0.41600578849320404634};
inline const C completed_m2_0p3p0p4i_z0p1p0p9i = C{-0.058420947227586717036, 0.028746847924616603868};
inline const C completed_0_0p5p3i_zi = C{-0.02026517751397153155, -0.0000000000000000000000000000000000000000000000027755921477286356953};
inline const C completed_2_m1p3_z0p4p1p3i = C{0.14785511345079770056, -0.0021389484720911448093};
}  // namespace oracle
