#pragma once

// Default numerical settings. Everything here is overridable per call or per
// scenario; this table is the single place the defaults live.

namespace copolar::defaults {

// Finite differences
inline constexpr int kRichardsonLevels = 2;

// Direction search over spherical caps
inline constexpr int kScanPoints2D = 96;    // ambient n = 2 (arc)
inline constexpr int kScanPoints3D = 400;   // ambient n = 3
inline constexpr int kScanPointsND = 1200;  // ambient n >= 4
inline constexpr int kRestarts = 3;
inline constexpr double kCapTolerance = 1e-12;
inline constexpr int kSimplexMaxIterations = 6000;

// Angular margins (radians). Sample grids stay kGridMargin inside the cone
// footprint; suprema are searched up to kSearchMargin from its boundary.
inline constexpr double kGridMargin = 0.05;
inline constexpr double kSearchMargin = 1e-10;

// Radial bisection for fields without a closed form
inline constexpr double kBisectionLower = 1e-8;
inline constexpr double kBisectionRelTol = 1e-12;

// Legendre search
inline constexpr double kLegendreRadius = 4.0;
inline constexpr int kLegendreRadialScan = 64;
inline constexpr int kLegendreDoublings = 2;

// Derivative-noise budgets
inline constexpr double kAnalyticBudget = 1e-8;
inline constexpr double kFdCurvatureBudget = 1e-4;
inline constexpr double kFdProductBudget = 5e-3;

inline constexpr double kPairTolerance = 1e-10;
inline constexpr double kDegenerateDet = 1e-12;

}  // namespace copolar::defaults
