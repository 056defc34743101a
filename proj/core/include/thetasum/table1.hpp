#pragma once

#include <array>

namespace thetasum {

/// Published reference row for S(a;4): the expansion with m = 2, only the
/// n = 1 tail term, and the tail series cut at its least term j0.
struct PublishedRow {
  double a;
  double sum;    // S(a;4), 6 decimals
  double error;  // absolute error of the expansion
  int j0;
};

inline constexpr std::array<PublishedRow, 8> kPublishedRows{{
    {0.10, 0.952696, 9.662e-86, 96},
    {0.20, 0.849025, 9.768e-43, 46},
    {0.25, 0.803169, 4.045e-34, 36},
    {0.50, 0.615128, 7.769e-17, 17},
    {0.75, 0.475493, 4.656e-11, 10},
    {1.00, 0.369026, 3.642e-8, 6},
    {1.50, 0.223285, 2.856e-5, 3},
    {2.00, 0.135356, 7.500e-4, 1},
}};

/// Rows whose published error is below this cannot be reproduced in binary64.
inline constexpr double kBinary64NoiseFloor = 1e-14;

}  // namespace thetasum
