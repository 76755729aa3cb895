#pragma once

namespace phylosub {

// Kernel execution path. Both paths produce identical results; serial is the
// reference the OpenMP path is tested against.
enum class ExecMode { serial, openmp };

}  // namespace phylosub
