#pragma once

namespace cdw::special {

// Error function, absolute accuracy ~1e-15. Power series for |x| <= 3,
// continued fraction for the complement beyond.
[[nodiscard]] double erf(double x);

[[nodiscard]] double erfc(double x);

}  // namespace cdw::special
