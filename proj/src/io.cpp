#include "fractal/io.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace fractal {

namespace {

static_assert(std::endian::native == std::endian::little || std::endian::native == std::endian::big);

template <class U>
void put_le(std::ostream& out, U v) {
  unsigned char bytes[sizeof(U)];
  for (std::size_t k = 0; k < sizeof(U); ++k) bytes[k] = static_cast<unsigned char>(v >> (8 * k));
  out.write(reinterpret_cast<const char*>(bytes), sizeof(U));
}

template <class U>
U get_le(std::istream& in) {
  unsigned char bytes[sizeof(U)];
  if (!in.read(reinterpret_cast<char*>(bytes), sizeof(U))) {
    throw std::runtime_error("sample file truncated");
  }
  U v = 0;
  for (std::size_t k = 0; k < sizeof(U); ++k) v |= static_cast<U>(bytes[k]) << (8 * k);
  return v;
}

void write_values(std::ostream& out, std::span<const double> v) {
  for (double x : v) put_le(out, std::bit_cast<std::uint64_t>(x));
}

std::vector<double> read_values(std::istream& in, std::size_t count) {
  std::vector<double> v(count);
  for (auto& x : v) x = std::bit_cast<double>(get_le<std::uint64_t>(in));
  return v;
}

}  // namespace

std::string format_double(double v) { return fmt::format("{}", v); }

void write_sample(std::ostream& out, const Sample& s) {
  out.write(kSampleMagic, 4);
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        const auto kind = std::is_same_v<T, SampledCurve> ? SampleKind::curve : SampleKind::surface;
        out.put(static_cast<char>(kind));
        put_le(out, static_cast<std::uint32_t>(x.n()));
        write_values(out, x.values());
      },
      s);
  if (!out) throw std::runtime_error("failed to write sample");
}

Sample read_sample(std::istream& in) {
  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, kSampleMagic, 4) != 0) {
    throw std::runtime_error("not a sample file (bad magic)");
  }
  const int kind = in.get();
  if (kind == std::char_traits<char>::eof()) throw std::runtime_error("sample file truncated");
  const auto n = get_le<std::uint32_t>(in);
  if (n < 1 || n > 30) throw std::runtime_error("sample file has invalid grid exponent");
  const std::size_t side = grid_points(static_cast<int>(n));
  switch (static_cast<SampleKind>(kind)) {
    case SampleKind::curve:
      return SampledCurve(static_cast<int>(n), read_values(in, side));
    case SampleKind::surface:
      return SampledSurface(static_cast<int>(n), read_values(in, side * side));
  }
  throw std::runtime_error("sample file has unknown kind byte " + std::to_string(kind));
}

void save_sample(const std::string& path, const Sample& s) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  write_sample(out, s);
}

Sample load_sample(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_sample(in);
}

SampledCurve load_curve(const std::string& path) {
  auto s = load_sample(path);
  if (auto* c = std::get_if<SampledCurve>(&s)) return std::move(*c);
  throw std::runtime_error(path + " holds a surface, expected a curve");
}

SampledSurface load_surface(const std::string& path) {
  auto s = load_sample(path);
  if (auto* f = std::get_if<SampledSurface>(&s)) return std::move(*f);
  throw std::runtime_error(path + " holds a curve, expected a surface");
}

void write_csv(std::ostream& out, const Sample& s, const std::string& header) {
  if (!header.empty()) {
    std::size_t start = 0;
    while (start < header.size()) {
      auto end = header.find('\n', start);
      if (end == std::string::npos) end = header.size();
      out << "# " << header.substr(start, end - start) << '\n';
      start = end + 1;
    }
  }
  if (const auto* c = std::get_if<SampledCurve>(&s)) {
    out << "x,value\n";
    for (std::size_t i = 0; i < c->size(); ++i) {
      out << format_double(grid_coord(i, c->n())) << ',' << format_double((*c)[i]) << '\n';
    }
    return;
  }
  const auto& f = std::get<SampledSurface>(s);
  for (std::size_t i = 0; i < f.side(); ++i) {
    const auto col = f.column(i);
    for (std::size_t j = 0; j < col.size(); ++j) {
      if (j) out << ',';
      out << format_double(col[j]);
    }
    out << '\n';
  }
}

void write_pgm(std::ostream& out, const SampledSurface& s) {
  const auto v = s.values();
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  const double span = *hi - *lo;
  const std::size_t side = s.side();
  out << "P5\n" << side << ' ' << side << "\n255\n";
  std::vector<unsigned char> row(side);
  for (std::size_t r = 0; r < side; ++r) {
    const std::size_t j = side - 1 - r;
    for (std::size_t i = 0; i < side; ++i) {
      const double t = span > 0 ? (s.at(i, j) - *lo) / span : 0.5;
      row[i] = static_cast<unsigned char>(std::lround(t * 255.0));
    }
    out.write(reinterpret_cast<const char*>(row.data()), static_cast<std::streamsize>(side));
  }
}

}  // namespace fractal
