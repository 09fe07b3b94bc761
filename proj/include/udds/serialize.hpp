#ifndef UDDS_SERIALIZE_HPP
#define UDDS_SERIALIZE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "udds/ddsketch.hpp"
#include "udds/signed_sketch.hpp"
#include "udds/uddsketch.hpp"

namespace udds {

// Binary sketch records, little-endian throughout. See docs/serialization.md
// for the exact byte layout. Round-trips are bit-exact: serializing a loaded
// sketch reproduces the input bytes.

std::vector<std::uint8_t> serialize(const UddSketch& s);
std::vector<std::uint8_t> serialize(const DdSketch& s);
std::vector<std::uint8_t> serialize(const SignedSketch& s);

UddSketch deserialize_udd(const std::vector<std::uint8_t>& bytes);
DdSketch deserialize_dd(const std::vector<std::uint8_t>& bytes);
SignedSketch deserialize_signed(const std::vector<std::uint8_t>& bytes);

// Kind tag of a serialized record without fully decoding it.
enum class SketchKind : std::uint8_t { kUdd = 0, kDd = 1, kSigned = 2 };
SketchKind peek_kind(const std::vector<std::uint8_t>& bytes);

void write_file(const std::string& path, const std::vector<std::uint8_t>& bytes);
std::vector<std::uint8_t> read_file(const std::string& path);

}  // namespace udds

#endif
