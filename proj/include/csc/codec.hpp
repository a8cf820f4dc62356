#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "csc/solvers.hpp"

namespace csc {

// Wire format of one transmitted control vector, little-endian throughout:
//   u32 period index k | u16 count | count * (u16 index, f64 re, f64 im)
// where index = m + M in 0..N-1, strictly increasing. Total bytes are
// exactly 6 + 18 * count.
inline constexpr std::size_t kPacketHeaderBytes = 6;
inline constexpr std::size_t kPacketEntryBytes = 18;

struct CodecError : std::runtime_error {
  enum class Kind {
    Truncated,        // buffer ends before the declared payload
    LengthMismatch,   // buffer longer than header + declared payload
    BadCount,         // count exceeds the basis size
    IndexOutOfRange,  // entry index >= N
    NonIncreasing,    // entry indices not strictly increasing
  };
  CodecError(Kind kind, std::size_t offset, const std::string& what);
  Kind kind;
  std::size_t offset;  // byte position of the violation
};

// Serializes the nonzero-magnitude coefficients (|theta| > zero_tol) of cv.
// Throws std::invalid_argument if the count or k overflow their fields.
std::vector<std::uint8_t> encode_control(const ControlVector& cv, std::uint64_t k);

// Exact inverse of encode_control for a basis of size N; untransmitted
// coefficients decode to zero. Throws CodecError on malformed packets.
std::pair<std::uint32_t, ControlVector> decode_control(const std::vector<std::uint8_t>& bytes,
                                                       int basis_size);

std::size_t packet_bytes(int support_count);

struct RunResult;

// Mean transmitted packet size over a run divided by the dense packet size
// 6 + 18 N. Throws on a run with no recorded periods.
double compression_ratio(const RunResult& result);

}  // namespace csc
