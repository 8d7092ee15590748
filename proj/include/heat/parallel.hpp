#pragma once

namespace heat {

/// Kernel selection. `serial` is the reference implementation every
/// parallel kernel is tested against.
enum class Execution { serial, parallel };

/// Worker count for OpenMP regions: the HEAT_SERIES_THREADS environment
/// variable when set to a positive integer, otherwise the OpenMP default.
int worker_count();

}  // namespace heat
