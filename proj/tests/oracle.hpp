#pragma once

// Reference values frozen from a 40-digit arithmetic session; used as
// independent cross-checks of the double-precision code paths.

namespace oracle {

// q = 8
inline constexpr double kLambda8 = 1.8477590650225735;
inline constexpr double kMu8 = 4.8284271247461901;
inline constexpr double kQ18 = 5.0273394921258481;  // cot(pi/16)
inline constexpr double kAlpha8 = 1.3203772410170407;
inline constexpr double kGamma8 = 4.4142135623730950;
inline constexpr double kPhi8[4] = {-0.92387953251128676, -0.76536686473017954,
                                    -0.54119610014619698, 0.0};
inline constexpr double kDelta8[3] = {-2.8477590650225735, -1.4966057626654890,
                                      -1.1795804271032746};
inline constexpr double kD8[4] = {-2.4142135623730950, -0.41421356237309505, 0.41421356237309505,
                                  2.4142135623730950};
inline constexpr double kC8[3] = {-1.0, 0.0, 1.0};
inline constexpr double kAreaV8 = 3.8421887157189220;   // 2 log(8 cos^2 pi/8)
inline constexpr double kAreaR8 = 3.2297818323461906;   // 2 log cot(pi/16)
inline constexpr double kAreaBar8 = 1.1503402906663546; // 2 log(cos pi/8 (1+cos pi/8))
inline constexpr double kRho8 = 0.91760779970760603;
inline constexpr double kUQ18 = 1.4966057626654890;     // U.(Q.1) = mu/2 - rho

// q = 12
inline constexpr double kAreaV12 = 4.0202101549695240;
inline constexpr double kAreaR12 = 4.0551788436002637;
inline constexpr double kAreaBar12 = 1.2825901213604825;

// q = 100 ratio endpoints
inline constexpr double kRatioV100 = 0.333135459988;
inline constexpr double kRatioR100 = 0.166704224665;

// Map examples at q = 8
inline constexpr double kRosenImage8 = 0.76120467488713244;  // f(-0.1) = h(-0.1) = 10 - 5 lambda
inline constexpr double kConjStart8 = 2.1529009693978197;    // Q.(-0.1)
inline constexpr double kConjImage8 = -0.42508988857651498;  // k(Q.(-0.1)) = Q.h(-0.1) - mu
inline constexpr double kTauT2 = -1.3862943611198906;        // -2 log 2

}  // namespace oracle
