#include "csc/codec.hpp"

#include <cmath>
#include <cstring>
#include <limits>

#include "csc/simulate.hpp"

namespace csc {

static_assert(std::numeric_limits<double>::is_iec559, "wire format requires IEEE-754 doubles");

namespace {

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xff));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xff));
}

void put_f64(std::vector<std::uint8_t>& out, double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, sizeof(bits));
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>((bits >> (8 * i)) & 0xff));
}

std::uint16_t get_u16(const std::vector<std::uint8_t>& in, std::size_t at) {
  return static_cast<std::uint16_t>(in[at] | (in[at + 1] << 8));
}

std::uint32_t get_u32(const std::vector<std::uint8_t>& in, std::size_t at) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(in[at + i]) << (8 * i);
  return v;
}

double get_f64(const std::vector<std::uint8_t>& in, std::size_t at) {
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(in[at + i]) << (8 * i);
  double v;
  std::memcpy(&v, &bits, sizeof(v));
  return v;
}

}  // namespace

CodecError::CodecError(Kind kind_, std::size_t offset_, const std::string& what_)
    : std::runtime_error(what_ + " (byte offset " + std::to_string(offset_) + ")"),
      kind(kind_),
      offset(offset_) {}

std::size_t packet_bytes(int support_count) {
  return kPacketHeaderBytes + kPacketEntryBytes * static_cast<std::size_t>(support_count);
}

std::vector<std::uint8_t> encode_control(const ControlVector& cv, std::uint64_t k) {
  if (k > 0xffffffffull)
    throw std::invalid_argument("encode_control: period index overflows 32 bits");
  std::vector<int> live;
  for (Eigen::Index i = 0; i < cv.coeffs.size(); ++i)
    if (std::abs(cv.coeffs(i)) > cv.zero_tol) live.push_back(static_cast<int>(i));
  if (live.size() > 0xffff)
    throw std::invalid_argument("encode_control: entry count overflows 16 bits");

  std::vector<std::uint8_t> out;
  out.reserve(packet_bytes(static_cast<int>(live.size())));
  put_u32(out, static_cast<std::uint32_t>(k));
  put_u16(out, static_cast<std::uint16_t>(live.size()));
  for (int i : live) {
    put_u16(out, static_cast<std::uint16_t>(i));
    put_f64(out, cv.coeffs(i).real());
    put_f64(out, cv.coeffs(i).imag());
  }
  return out;
}

std::pair<std::uint32_t, ControlVector> decode_control(const std::vector<std::uint8_t>& bytes,
                                                       int basis_size) {
  if (basis_size < 1) throw std::invalid_argument("decode_control: basis size must be positive");
  if (bytes.size() < kPacketHeaderBytes)
    throw CodecError(CodecError::Kind::Truncated, bytes.size(), "packet shorter than header");
  const std::uint32_t k = get_u32(bytes, 0);
  const std::uint16_t count = get_u16(bytes, 4);
  if (count > basis_size)
    throw CodecError(CodecError::Kind::BadCount, 4, "entry count exceeds basis size");
  const std::size_t expected = packet_bytes(count);
  if (bytes.size() < expected)
    throw CodecError(CodecError::Kind::Truncated, bytes.size(),
                     "packet ends before declared payload");
  if (bytes.size() > expected)
    throw CodecError(CodecError::Kind::LengthMismatch, expected,
                     "packet longer than declared payload");

  Eigen::VectorXcd coeffs = Eigen::VectorXcd::Zero(basis_size);
  int prev = -1;
  for (std::uint16_t e = 0; e < count; ++e) {
    const std::size_t at = kPacketHeaderBytes + kPacketEntryBytes * e;
    const int idx = get_u16(bytes, at);
    if (idx >= basis_size)
      throw CodecError(CodecError::Kind::IndexOutOfRange, at, "entry index exceeds basis size");
    if (idx <= prev)
      throw CodecError(CodecError::Kind::NonIncreasing, at,
                       "entry indices must be strictly increasing");
    prev = idx;
    coeffs(idx) = Complex(get_f64(bytes, at + 2), get_f64(bytes, at + 10));
  }
  return {k, ControlVector::from(std::move(coeffs), 0.0)};
}

double compression_ratio(const RunResult& result) {
  if (result.bytes_per_period.empty())
    throw std::invalid_argument("compression_ratio: run recorded no transmissions");
  double total = 0.0;
  for (const auto b : result.bytes_per_period) total += static_cast<double>(b);
  const double dense = static_cast<double>(packet_bytes(result.config.spec.size()));
  return total / static_cast<double>(result.bytes_per_period.size()) / dense;
}

}  // namespace csc
