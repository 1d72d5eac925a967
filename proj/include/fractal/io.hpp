#pragma once

#include <iosfwd>
#include <string>
#include <variant>

#include "fractal/sampling.hpp"

namespace fractal {

using Sample = std::variant<SampledCurve, SampledSurface>;

/// Binary layout: "FRH1", kind byte (1 = curve, 2 = surface), n as uint32
/// little-endian, then the samples as little-endian IEEE-754 doubles in
/// storage order (row-major in i for surfaces).
inline constexpr char kSampleMagic[4] = {'F', 'R', 'H', '1'};
enum class SampleKind : unsigned char { curve = 1, surface = 2 };

void write_sample(std::ostream& out, const Sample& s);
Sample read_sample(std::istream& in);

void save_sample(const std::string& path, const Sample& s);
Sample load_sample(const std::string& path);

SampledCurve load_curve(const std::string& path);
SampledSurface load_surface(const std::string& path);

/// CSV with one row per grid line. Curves: "x,value" rows. Surfaces: row i
/// holds f(x_i, y_0..y_N). `header` lines are emitted first, each prefixed
/// with "# ".
void write_csv(std::ostream& out, const Sample& s, const std::string& header = {});

/// 8-bit binary PGM (P5) of a surface, min-max normalized; a constant
/// surface maps to mid-gray. Image row r shows y_{N-r}, column c shows x_c.
void write_pgm(std::ostream& out, const SampledSurface& s);

/// Shortest round-trip decimal representation used by every text output.
std::string format_double(double v);

}  // namespace fractal
