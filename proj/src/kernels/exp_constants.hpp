#pragma once

// Shared constants of the polynomial exponential. Scalar and vector code
// evaluate the same expression tree with these values.

namespace exciton::kernels::detail {

inline constexpr double kLog2e = 1.4426950408889634074;
// Cody-Waite split of ln 2: the high part has trailing zero bits so that
// n * kLn2Hi is exact for |n| < 2^11.
inline constexpr double kLn2Hi = 6.93147180369123816490e-01;
inline constexpr double kLn2Lo = 1.90821492927058770002e-10;
inline constexpr double kExpFloor = -700.0;
inline constexpr int kExpDegree = 13;

// 1/k!, k = 13 down to 2 (Horner order).
inline constexpr double kExpCoeff[] = {
    1.0 / 6227020800.0, 1.0 / 479001600.0, 1.0 / 39916800.0, 1.0 / 3628800.0,
    1.0 / 362880.0,     1.0 / 40320.0,     1.0 / 5040.0,     1.0 / 720.0,
    1.0 / 120.0,        1.0 / 24.0,        1.0 / 6.0,        1.0 / 2.0};

inline constexpr int kAgmIterations = 12;

} // namespace exciton::kernels::detail
