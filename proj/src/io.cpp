#include "q1d/io.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>

namespace q1d {

namespace {

constexpr char kMagic[8] = {'Q', '1', 'D', 'S', 'N', 'A', 'P', '1'};

template <typename T>
void put(std::ofstream& os, T v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T take(std::ifstream& is) {
  T v{};
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!is) throw ConfigError("snapshot: truncated file");
  return v;
}

}  // namespace

void save_state(const ManyBodyState& state, const std::string& path) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw ConfigError("save_state: cannot open " + path);
  os.write(kMagic, sizeof(kMagic));
  put<std::uint32_t>(os, 1);
  put<std::uint32_t>(os, static_cast<std::uint32_t>(state.particles()));
  const auto d = state.basis().descriptor();
  put<std::int32_t>(os, d.levels);
  put<std::int32_t>(os, d.quad_nodes);
  put<std::int32_t>(os, d.z_points);
  put<double>(os, d.z_length);
  put<std::int32_t>(os, d.ordering_version);
  put<std::uint64_t>(os, static_cast<std::uint64_t>(state.dim()));
  for (long i = 0; i < state.dim(); ++i) {
    put<double>(os, state.coeffs()[i].real());
    put<double>(os, state.coeffs()[i].imag());
  }
  if (!os) throw ConfigError("save_state: write failed for " + path);
}

ManyBodyState load_state(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ConfigError("load_state: cannot open " + path);
  char magic[8];
  is.read(magic, sizeof(magic));
  if (!is || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
    throw ConfigError("load_state: bad magic; not a snapshot file");
  const auto version = take<std::uint32_t>(is);
  if (version != 1)
    throw ConfigError("load_state: incompatible snapshot version " +
                      std::to_string(version));
  const auto n = take<std::uint32_t>(is);
  const auto levels = take<std::int32_t>(is);
  const auto quad = take<std::int32_t>(is);
  const auto zpts = take<std::int32_t>(is);
  const auto zlen = take<double>(is);
  const auto ordering = take<std::int32_t>(is);
  if (ordering != 1)
    throw ConfigError("load_state: unknown mode ordering version");
  const auto count = take<std::uint64_t>(is);
  auto basis = build_basis(levels, quad, zpts, zlen);
  ManyBodyState state(basis, static_cast<int>(n));
  if (static_cast<std::uint64_t>(state.dim()) != count)
    throw ConfigError("load_state: coefficient count does not match basis");
  for (std::uint64_t i = 0; i < count; ++i) {
    const double re = take<double>(is);
    const double im = take<double>(is);
    state.coeffs()[static_cast<long>(i)] = Complex(re, im);
  }
  char extra;
  if (is.read(&extra, 1))
    throw ConfigError("load_state: trailing bytes after payload");
  return state;
}

void write_lines(const std::string& path, const std::vector<std::string>& lines) {
  std::ofstream os(path, std::ios::trunc);
  if (!os) throw ConfigError("write_lines: cannot open " + path);
  for (const auto& l : lines) os << l << '\n';
}

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace q1d
