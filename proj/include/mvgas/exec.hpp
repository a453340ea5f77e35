#ifndef MVGAS_EXEC_HPP
#define MVGAS_EXEC_HPP

namespace mvgas {

// Kernel execution policy.  Serial runs the same per-cell arithmetic without
// OpenMP; results are bitwise identical and the serial path doubles as the
// reference in tests and the benchmark baseline.
enum class Exec { Serial, Parallel };

} // namespace mvgas

#endif
