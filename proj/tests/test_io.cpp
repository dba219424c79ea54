#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "stk/io.hpp"

using namespace stk;

namespace {

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("stk_io_test_" + std::to_string(std::random_device{}()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string file(const char* name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("fodf round trip is bit-identical") {
  TempDir tmp;
  const SphereSampling sphere = icosphere(1);
  FodField f({4, 3, 2, 1.25}, sphere);
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> d(0.0, 1.0);
  for (auto& v : f.values) v = d(rng);
  f.values[3] = 0.1 + 1e-17;  // not representable exactly; must survive as-is

  const std::string path = tmp.file("f.fodf");
  write_fodf(path, f);
  const FodField g = read_fodf(path);
  CHECK(g.grid.nx == 4);
  CHECK(g.grid.ny == 3);
  CHECK(g.grid.nz == 2);
  CHECK(g.grid.spacing == 1.25);
  CHECK(g.sphere.level == 1);
  REQUIRE(g.values.size() == f.values.size());
  for (std::size_t i = 0; i < f.values.size(); ++i)
    CHECK(std::memcmp(&g.values[i], &f.values[i], sizeof(double)) == 0);
}

TEST_CASE("kernel table round trip is bit-identical") {
  TempDir tmp;
  const SphereSampling sphere = icosphere(0);
  const KernelTable k = build_kernel_table({1.0, 0.02, 1.0},
                                           SectionChoice::NewSection, 2, sphere, 0.5);
  const std::string path = tmp.file("k.fodk");
  write_kernel_table(path, k);
  const KernelTable g = read_kernel_table(path);
  CHECK(g.radius == k.radius);
  CHECK(g.spacing == k.spacing);
  CHECK(g.sphere.level == 0);
  CHECK(g.mass == k.mass);
  REQUIRE(g.values.size() == k.values.size());
  for (std::size_t i = 0; i < k.values.size(); ++i)
    CHECK(std::memcmp(&g.values[i], &k.values[i], sizeof(double)) == 0);
}

TEST_CASE("tractogram round trip preserves every coordinate") {
  TempDir tmp;
  Tractogram tr;
  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> d(-10.0, 10.0);
  for (int f = 0; f < 5; ++f) {
    std::vector<Vec3> pts;
    Vec3 p(d(rng), d(rng), d(rng));
    for (int k = 0; k < 8; ++k) {
      pts.push_back(p);
      p += Vec3(d(rng) * 0.05, d(rng) * 0.05, 1.0);
    }
    tr.fibers.push_back(make_streamline(pts));
  }
  const std::string path = tmp.file("t.txt");
  write_tractogram(path, tr);
  const Tractogram g = read_tractogram(path);
  REQUIRE(g.fibers.size() == tr.fibers.size());
  for (std::size_t f = 0; f < tr.fibers.size(); ++f) {
    REQUIRE(g.fibers[f].points.size() == tr.fibers[f].points.size());
    for (std::size_t k = 0; k < tr.fibers[f].points.size(); ++k)
      CHECK((g.fibers[f].points[k] - tr.fibers[f].points[k]).norm() == 0.0);
  }
}

TEST_CASE("tractogram reader skips comments and reports bad lines") {
  TempDir tmp;
  const std::string path = tmp.file("bad.txt");
  {
    std::ofstream out(path);
    out << "# header comment\n";
    out << "0 0 0 0 0 1 0 0 2\n";
    out << "\n";
    out << "1 0 0 1 0 1 oops\n";
  }
  try {
    read_tractogram(path);
    FAIL("expected FormatError");
  } catch (const FormatError& e) {
    CHECK(std::string(e.what()).find("4") != std::string::npos);  // line number
  }
}

TEST_CASE("tractogram line with a coordinate count not divisible by 3 fails") {
  TempDir tmp;
  const std::string path = tmp.file("bad2.txt");
  {
    std::ofstream out(path);
    out << "0 0 0 0 0 1 0 0\n";
  }
  CHECK_THROWS_AS(read_tractogram(path), FormatError);
}

TEST_CASE("corrupt binary headers are rejected") {
  TempDir tmp;
  const std::string path = tmp.file("junk.fodf");
  {
    std::ofstream out(path, std::ios::binary);
    out << "NOPE" << std::string(64, '\0');
  }
  CHECK_THROWS_AS(read_fodf(path), FormatError);
  CHECK_THROWS_AS(read_kernel_table(path), FormatError);
  CHECK_THROWS_AS(read_fodf(tmp.file("missing.fodf")), IoError);
}

TEST_CASE("truncated fodf payload is rejected") {
  TempDir tmp;
  const SphereSampling sphere = icosphere(0);
  FodField f({2, 2, 2, 1.0}, sphere);
  const std::string path = tmp.file("short.fodf");
  write_fodf(path, f);
  std::filesystem::resize_file(path, std::filesystem::file_size(path) - 8);
  CHECK_THROWS_AS(read_fodf(path), FormatError);
}
