#pragma once

namespace tracemetric::tol {

// Global numeric tolerances. Relative ones are scaled at the point of use.
inline constexpr double kOrtho = 1e-12;       // ||Q^T Q - I||_F
inline constexpr double kRecon = 1e-10;       // relative reconstruction residual
inline constexpr double kPdRel = 1e-12;       // |lambda| <= kPdRel * max|lambda| is "zero"
inline constexpr double kLog = 1e-9;          // exp(LOG(M)) = M
inline constexpr double kDet = 1e-9;          // unit-determinant slice membership
inline constexpr double kTraceRel = 1e-10;    // |tr(Q^-1 V)| <= kTraceRel * ||V||_F
inline constexpr double kCurv = 1e-8;         // curvature identities, absolute
inline constexpr double kPlaneRel = 1e-10;    // non-degenerate 2-plane
inline constexpr double kSymmetry = 1e-12;    // accepted asymmetry on SymMatrix construction
inline constexpr double kIdentify = 1e-6;     // black-box isometry probe

inline constexpr double kJacobiRel = 1e-14;
inline constexpr int kJacobiMaxSweeps = 50;

inline constexpr double kExpmScaleNorm = 0.5;
inline constexpr double kExpmTermNorm = 1e-18;

}  // namespace tracemetric::tol
