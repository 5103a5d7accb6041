#include <lat40/checksum.hpp>
#include <lat40/construction.hpp>

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

namespace lat40 {

std::string default_fixture_dir() {
  if (const char* env = std::getenv("LAT40_FIXTURES")) return env;
  return LAT40_DATA_DIR;
}

namespace {

std::map<std::string, std::string> read_manifest(const std::string& dir) {
  std::ifstream in(std::filesystem::path(dir) / "SHA256SUMS");
  if (!in) throw ConstructionError("fixture manifest SHA256SUMS missing in " + dir);
  std::map<std::string, std::string> sums;
  std::string hash, name;
  while (in >> hash >> name) sums[name] = hash;
  return sums;
}

IntMatrix load_fixture(const std::string& dir, const std::string& name,
                       const std::map<std::string, std::string>* manifest, std::size_t rows,
                       std::size_t cols) {
  const std::string path = (std::filesystem::path(dir) / name).string();
  std::string bytes;
  try {
    bytes = read_file(path);
  } catch (const FormatError& e) {
    throw ConstructionError(e.what());
  }
  if (manifest) {
    auto it = manifest->find(name);
    if (it == manifest->end()) throw ConstructionError("fixture " + name + " is not in the manifest");
    if (it->second != sha256_hex(bytes))
      throw ConstructionError("fixture " + name + " does not match its recorded checksum");
  }
  std::istringstream in(bytes);
  IntMatrix m;
  try {
    m = read_int_matrix(in);
  } catch (const FormatError& e) {
    throw ConstructionError("fixture " + name + ": " + e.what());
  }
  if (m.rows() != rows || m.cols() != cols)
    throw ConstructionError("fixture " + name + " has the wrong shape");
  return m;
}

}  // namespace

Fixtures load_fixtures(const std::string& dir, bool verify) {
  std::map<std::string, std::string> manifest;
  if (verify) manifest = read_manifest(dir);
  const auto* m = verify ? &manifest : nullptr;
  Fixtures f;
  f.b1 = load_fixture(dir, "b1.mat", m, 20, 20);
  f.b3 = load_fixture(dir, "b3.mat", m, 10, 10);
  f.gram_o40 = load_fixture(dir, "gram_o40.mat", m, 40, 40);
  f.g1 = load_fixture(dir, "g1.mat", m, 40, 40);
  f.g2 = load_fixture(dir, "g2.mat", m, 40, 40);
  return f;
}

IntMatrix fixture_glue_matrix(const Fixtures& f) {
  IntMatrix b(40, 40);
  for (std::size_t i = 0; i < 20; ++i) {
    b(i, i) = 1;
    for (std::size_t j = 0; j < 20; ++j) b(i, 20 + j) = f.b1(i, j);
  }
  for (std::size_t i = 0; i < 10; ++i) {
    b(20 + i, 20 + i) = 3;
    b(30 + i, 30 + i) = 21;
    for (std::size_t j = 0; j < 10; ++j) b(20 + i, 30 + j) = f.b3(i, j);
  }
  return b;
}

}  // namespace lat40
