#include <nssc/io.hpp>
#include <nssc/learning.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <cstring>
#include <fstream>
#include <string>
#include <vector>

using namespace nssc;

namespace {

std::string tmp(const std::string& name) { return "/tmp/nssc_io_" + name; }

void spit(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

}  // namespace

TEST_CASE("ascii pgm parses through comments", "[io]") {
  const std::string path = tmp("ascii.pgm");
  spit(path, "P2\n# scanner output\n2 2\n255\n0 1\n2 3\n");
  const PgmImage img = read_pgm(path, true);
  REQUIRE(img.map.width == 2);
  REQUIRE(img.map.height == 2);
  REQUIRE(img.maxval == 255);
  REQUIRE(img.map.values == std::vector<double>{0.0, 1.0, 2.0, 3.0});
  REQUIRE(img.map.missing_mask == std::vector<std::uint8_t>{1, 0, 0, 0});
}

TEST_CASE("binary pgm round trips at 8 bits", "[io]") {
  DepthMap m = DepthMap::constant(3, 4, 0.0);
  for (size_t i = 0; i < m.values.size(); ++i) m.values[i] = static_cast<double>((i * 21) % 256);
  const std::string path = tmp("round8.pgm");
  write_pgm(path, m, 255);
  const PgmImage back = read_pgm(path);
  REQUIRE(back.map.values == m.values);
  REQUIRE(back.maxval == 255);
  REQUIRE(back.map.missing_mask.empty());
}

TEST_CASE("binary pgm round trips at 16 bits big-endian", "[io]") {
  DepthMap m = DepthMap::constant(1, 4, 0.0);
  m.values = {0.0, 258.0, 4096.0, 65535.0};
  const std::string path = tmp("round16.pgm");
  write_pgm(path, m, 65535);
  const PgmImage back = read_pgm(path);
  REQUIRE(back.map.values == m.values);

  const std::string bytes = slurp(path);
  const std::string payload = bytes.substr(bytes.size() - 8);
  REQUIRE(static_cast<unsigned char>(payload[2]) == 1);  // 258 = 0x0102
  REQUIRE(static_cast<unsigned char>(payload[3]) == 2);
}

TEST_CASE("pgm writing rounds and clamps samples", "[io]") {
  DepthMap m = DepthMap::constant(1, 3, 0.0);
  m.values = {-5.0, 7.6, 300.0};
  const std::string path = tmp("clamp.pgm");
  write_pgm(path, m, 255);
  const PgmImage back = read_pgm(path);
  REQUIRE(back.map.values == std::vector<double>{0.0, 8.0, 255.0});
}

TEST_CASE("a truncated pgm payload names the byte counts", "[io]") {
  const std::string path = tmp("short.pgm");
  spit(path, std::string("P5\n2 2\n255\n") + "abc");
  REQUIRE_THROWS_WITH(read_pgm(path),
                      Catch::Matchers::ContainsSubstring("expected 4 bytes, found 3"));
}

TEST_CASE("pfm round trips bit-exactly with metadata scale", "[io]") {
  DepthMap m = DepthMap::constant(3, 5, 0.0);
  for (size_t i = 0; i < m.values.size(); ++i) {
    m.values[i] = static_cast<double>(static_cast<float>(0.37 * static_cast<double>(i) - 2.2));
  }
  const std::string path = tmp("round.pfm");
  write_pfm(path, m, 0.25);
  const PfmImage back = read_pfm(path);
  REQUIRE(back.map.values == m.values);
  REQUIRE(back.scale_magnitude == 0.25);

  const std::string again = tmp("round2.pfm");
  write_pfm(again, back.map, back.scale_magnitude);
  REQUIRE(slurp(again) == slurp(path));
}

TEST_CASE("pfm rows are stored bottom to top", "[io]") {
  const float bottom = 5.0f, top = 9.0f;
  std::string payload;
  payload.append(reinterpret_cast<const char*>(&bottom), 4);
  payload.append(reinterpret_cast<const char*>(&top), 4);
  const std::string path = tmp("rows.pfm");
  spit(path, "Pf\n1 2\n-1\n" + payload);
  const PfmImage img = read_pfm(path);
  REQUIRE(img.map.at(0, 0) == 9.0);
  REQUIRE(img.map.at(1, 0) == 5.0);
}

TEST_CASE("a positive pfm scale means big-endian samples", "[io]") {
  const float v = 2.5f;
  char le[4];
  std::memcpy(le, &v, 4);
  const std::string be{le[3], le[2], le[1], le[0]};
  const std::string path = tmp("be.pfm");
  spit(path, "Pf\n1 1\n1.0\n" + be);
  const PfmImage img = read_pfm(path);
  REQUIRE(img.map.values[0] == 2.5);
  REQUIRE(img.scale_magnitude == 1.0);
}

TEST_CASE("color pfm files are rejected by name", "[io]") {
  const std::string path = tmp("color.pfm");
  spit(path, "PF\n1 1\n-1\n............");
  REQUIRE_THROWS_WITH(read_pfm(path), Catch::Matchers::ContainsSubstring("color PFM unsupported"));
}

TEST_CASE("dictionaries round trip bit-exactly", "[io]") {
  Rng rng(137);
  const Dictionary d = random_unit_dictionary(4, 3, 7, rng);
  const std::string path = tmp("dict.nsd");
  write_dictionary(path, d);
  const Dictionary back = read_dictionary(path);
  REQUIRE(back.patch_h == 4);
  REQUIRE(back.patch_w == 3);
  REQUIRE(back.atoms == d.atoms);
}

TEST_CASE("a flipped payload byte fails the checksum", "[io]") {
  Rng rng(139);
  const Dictionary d = random_unit_dictionary(3, 3, 4, rng);
  const std::string path = tmp("corrupt.nsd");
  write_dictionary(path, d);
  std::string bytes = slurp(path);
  bytes[40] = static_cast<char>(bytes[40] ^ 0x10);
  spit(path, bytes);
  REQUIRE_THROWS_WITH(read_dictionary(path),
                      Catch::Matchers::ContainsSubstring("checksum mismatch"));
}

TEST_CASE("an unknown dictionary version is refused", "[io]") {
  Rng rng(149);
  const Dictionary d = random_unit_dictionary(3, 3, 4, rng);
  const std::string path = tmp("version.nsd");
  write_dictionary(path, d);
  std::string bytes = slurp(path);
  bytes[9] = 2;
  spit(path, bytes);
  REQUIRE_THROWS_WITH(read_dictionary(path),
                      Catch::Matchers::ContainsSubstring("unsupported dictionary version 2"));
}

TEST_CASE("a chopped dictionary names the byte counts", "[io]") {
  Rng rng(151);
  const Dictionary d = random_unit_dictionary(3, 3, 4, rng);
  const std::string path = tmp("chopped.nsd");
  write_dictionary(path, d);
  std::string bytes = slurp(path);
  const size_t full = bytes.size();
  bytes.resize(full - 4);
  spit(path, bytes);
  REQUIRE_THROWS_WITH(read_dictionary(path),
                      Catch::Matchers::ContainsSubstring(
                          "expected " + std::to_string(full) + " bytes, found " +
                          std::to_string(full - 4)));
}

TEST_CASE("psnr follows the decibel formula", "[io]") {
  const std::vector<double> ref{0.0, 0.0};
  const std::vector<double> test{5.0, 5.0};
  REQUIRE_THAT(psnr(ref, test, 255.0), Catch::Matchers::WithinAbs(34.1514, 5e-4));
  REQUIRE(std::isinf(psnr(ref, ref, 255.0)));
  REQUIRE_THROWS_AS(psnr(ref, test, 0.0), ContractViolation);
}

TEST_CASE("dynamic range spans the extremes", "[io]") {
  REQUIRE(dynamic_range({2.0, 7.0, 3.0}) == 5.0);
  REQUIRE(dynamic_range({4.0}) == 0.0);
  REQUIRE_THROWS_AS(dynamic_range({}), ContractViolation);
}
