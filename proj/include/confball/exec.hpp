#pragma once

namespace confball {

/// Selects the OpenMP kernel or its serial reference. Both produce bitwise
/// identical results; the serial path exists for testing and benchmarking.
enum class Exec { serial, parallel };

}  // namespace confball
