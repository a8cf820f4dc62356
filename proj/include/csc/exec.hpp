#pragma once

namespace csc {

// Execution policy for the data-parallel kernels. Serial and Parallel
// produce bit-identical results: parallel loops write disjoint slots and
// all floating-point reductions run in a fixed serial order.
enum class Exec { Serial, Parallel };

}  // namespace csc
