#include "stk/io.hpp"

#include <bit>
#include <charconv>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

static_assert(std::endian::native == std::endian::little,
              "file formats assume a little-endian host");

namespace stk {

namespace {

template <typename T>
void put(std::ostream& os, T v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::istream& is) {
  T v{};
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!is) throw FormatError("unexpected end of file");
  return v;
}

std::ofstream open_out(const std::string& path, bool binary) {
  std::ofstream os(path, binary ? std::ios::binary : std::ios::out);
  if (!os) throw IoError("cannot open for writing: " + path);
  return os;
}

std::ifstream open_in(const std::string& path, bool binary) {
  std::ifstream is(path, binary ? std::ios::binary : std::ios::in);
  if (!is) throw IoError("cannot open for reading: " + path);
  return is;
}

void check_magic(std::istream& is, const char* magic) {
  char buf[4];
  is.read(buf, 4);
  if (!is || std::memcmp(buf, magic, 4) != 0)
    throw FormatError(std::string("bad magic, expected ") + magic);
}

}  // namespace

void write_fodf(const std::string& path, const FodField& f) {
  if (f.sphere.level < 0)
    throw FormatError("FODF requires an icosphere sampling with known level");
  auto os = open_out(path, true);
  os.write("FODF", 4);
  put<std::uint32_t>(os, 1);
  put<std::uint32_t>(os, f.grid.nx);
  put<std::uint32_t>(os, f.grid.ny);
  put<std::uint32_t>(os, f.grid.nz);
  put<double>(os, f.grid.spacing);
  put<std::uint8_t>(os, static_cast<std::uint8_t>(f.sphere.level));
  // payload: x fastest, orientation slowest
  for (int j = 0; j < f.orientations(); ++j)
    for (int z = 0; z < f.grid.nz; ++z)
      for (int y = 0; y < f.grid.ny; ++y)
        for (int x = 0; x < f.grid.nx; ++x) put<double>(os, f.at(x, y, z, j));
  if (!os) throw IoError("write failed: " + path);
}

FodField read_fodf(const std::string& path) {
  auto is = open_in(path, true);
  check_magic(is, "FODF");
  if (get<std::uint32_t>(is) != 1) throw FormatError("unsupported FODF version");
  GridSpec grid;
  grid.nx = static_cast<int>(get<std::uint32_t>(is));
  grid.ny = static_cast<int>(get<std::uint32_t>(is));
  grid.nz = static_cast<int>(get<std::uint32_t>(is));
  grid.spacing = get<double>(is);
  const int level = get<std::uint8_t>(is);
  grid.validate();
  FodField f(grid, icosphere(level));
  for (int j = 0; j < f.orientations(); ++j)
    for (int z = 0; z < grid.nz; ++z)
      for (int y = 0; y < grid.ny; ++y)
        for (int x = 0; x < grid.nx; ++x) f.at(x, y, z, j) = get<double>(is);
  return f;
}

void write_kernel_table(const std::string& path, const KernelTable& k) {
  if (k.sphere.level < 0)
    throw FormatError("kernel table requires an icosphere sampling with known level");
  auto os = open_out(path, true);
  os.write("FODK", 4);
  put<std::uint32_t>(os, 1);
  put<std::uint32_t>(os, static_cast<std::uint32_t>(k.radius));
  put<double>(os, k.spacing);
  put<std::uint8_t>(os, static_cast<std::uint8_t>(k.sphere.level));
  put<double>(os, k.mass);
  const int n = k.sphere.size();
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      for (int oz = -k.radius; oz <= k.radius; ++oz)
        for (int oy = -k.radius; oy <= k.radius; ++oy)
          for (int ox = -k.radius; ox <= k.radius; ++ox)
            put<double>(os, k.at(k.offset_index(ox, oy, oz), i, j));
  if (!os) throw IoError("write failed: " + path);
}

KernelTable read_kernel_table(const std::string& path) {
  auto is = open_in(path, true);
  check_magic(is, "FODK");
  if (get<std::uint32_t>(is) != 1) throw FormatError("unsupported FODK version");
  KernelTable k;
  k.radius = static_cast<int>(get<std::uint32_t>(is));
  k.spacing = get<double>(is);
  const int level = get<std::uint8_t>(is);
  k.mass = get<double>(is);
  k.sphere = icosphere(level);
  const int n = k.sphere.size();
  k.values.assign(std::size_t(k.offsets()) * n * n, 0.0);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      for (int oz = -k.radius; oz <= k.radius; ++oz)
        for (int oy = -k.radius; oy <= k.radius; ++oy)
          for (int ox = -k.radius; ox <= k.radius; ++ox)
            k.at(k.offset_index(ox, oy, oz), i, j) = get<double>(is);
  return k;
}

Tractogram read_tractogram(const std::string& path) {
  auto is = open_in(path, false);
  Tractogram tr;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<double> nums;
    double v;
    while (ls >> v) nums.push_back(v);
    if (!ls.eof())
      throw FormatError("line " + std::to_string(lineno) + ": not a number");
    if (nums.empty()) continue;
    if (nums.size() % 3 != 0)
      throw FormatError("line " + std::to_string(lineno) +
                        ": coordinate count is not a multiple of 3");
    std::vector<Vec3> pts;
    for (std::size_t i = 0; i < nums.size(); i += 3)
      pts.emplace_back(nums[i], nums[i + 1], nums[i + 2]);
    try {
      tr.fibers.push_back(make_streamline(std::move(pts)));
    } catch (const std::invalid_argument& e) {
      throw FormatError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (tr.fibers.empty()) throw FormatError("tractogram has no fibers");
  return tr;
}

void write_tractogram(const std::string& path, const Tractogram& tr) {
  auto os = open_out(path, false);
  os.precision(17);
  for (const auto& f : tr.fibers) {
    for (std::size_t j = 0; j < f.points.size(); ++j) {
      if (j) os << ' ';
      os << f.points[j].x() << ' ' << f.points[j].y() << ' ' << f.points[j].z();
    }
    os << '\n';
  }
  if (!os) throw IoError("write failed: " + path);
}

}  // namespace stk
