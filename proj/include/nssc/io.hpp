#pragma once
#include <nssc/core.hpp>
#include <nssc/depth_map.hpp>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

namespace nssc {

static_assert(std::endian::native == std::endian::little, "little-endian host assumed");

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::vector<char> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::vector<char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return bytes;
}

inline void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("short write to " + path);
}

// Next whitespace-delimited token, treating '#'-to-newline as a comment.
inline std::string pnm_token(const std::vector<char>& bytes, size_t& pos, const std::string& path) {
  while (pos < bytes.size()) {
    const char ch = bytes[pos];
    if (ch == '#') {
      while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
    } else if (ch == ' ' || ch == '\t' || ch == '\r' || ch == '\n') {
      ++pos;
    } else {
      break;
    }
  }
  if (pos >= bytes.size()) {
    throw IoError(path + ": header truncated at byte " + std::to_string(pos));
  }
  const size_t start = pos;
  while (pos < bytes.size() && bytes[pos] != ' ' && bytes[pos] != '\t' && bytes[pos] != '\r' &&
         bytes[pos] != '\n' && bytes[pos] != '#') {
    ++pos;
  }
  return std::string(bytes.begin() + start, bytes.begin() + pos);
}

inline long pnm_int(const std::vector<char>& bytes, size_t& pos, const std::string& path) {
  const size_t at = pos;
  const std::string tok = pnm_token(bytes, pos, path);
  try {
    size_t used = 0;
    const long v = std::stol(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw IoError(path + ": expected integer near byte " + std::to_string(at) + ", got '" + tok +
                  "'");
  }
}

}  // namespace detail

struct PgmImage {
  DepthMap map;
  int maxval = 255;
};

// P2 (ASCII) and P5 (binary) grayscale; 16-bit P5 samples are big-endian per
// the Netpbm convention. zero_is_missing flags 0-valued pixels in the map's
// missing mask (the disparity-map dropout convention).
inline PgmImage read_pgm(const std::string& path, bool zero_is_missing = false) {
  const auto bytes = detail::read_file(path);
  size_t pos = 0;
  const std::string magic = detail::pnm_token(bytes, pos, path);
  if (magic != "P2" && magic != "P5") {
    throw IoError(path + ": unsupported magic '" + magic + "' (want P2 or P5)");
  }
  const long width = detail::pnm_int(bytes, pos, path);
  const long height = detail::pnm_int(bytes, pos, path);
  const long maxval = detail::pnm_int(bytes, pos, path);
  if (width <= 0 || height <= 0) throw IoError(path + ": nonpositive dimensions");
  if (maxval <= 0 || maxval > 65535) {
    throw IoError(path + ": maxval " + std::to_string(maxval) + " out of range");
  }

  PgmImage img;
  img.maxval = static_cast<int>(maxval);
  img.map.height = static_cast<int>(height);
  img.map.width = static_cast<int>(width);
  const size_t npix = static_cast<size_t>(width) * height;
  img.map.values.resize(npix);

  if (magic == "P2") {
    for (size_t i = 0; i < npix; ++i) {
      const long v = detail::pnm_int(bytes, pos, path);
      if (v < 0 || v > maxval) throw IoError(path + ": sample " + std::to_string(v) + " exceeds maxval");
      img.map.values[i] = static_cast<double>(v);
    }
  } else {
    if (pos >= bytes.size()) throw IoError(path + ": payload missing");
    ++pos;  // single whitespace after maxval
    const size_t sample_bytes = maxval > 255 ? 2 : 1;
    const size_t need = npix * sample_bytes;
    const size_t have = bytes.size() - pos;
    if (have < need) {
      throw IoError(path + ": truncated payload, expected " + std::to_string(need) +
                    " bytes, found " + std::to_string(have));
    }
    const auto* p = reinterpret_cast<const unsigned char*>(bytes.data()) + pos;
    for (size_t i = 0; i < npix; ++i) {
      unsigned v;
      if (sample_bytes == 1) {
        v = p[i];
      } else {
        v = static_cast<unsigned>(p[2 * i]) << 8 | p[2 * i + 1];
      }
      img.map.values[i] = static_cast<double>(v);
    }
  }

  if (zero_is_missing) {
    img.map.missing_mask.resize(npix);
    for (size_t i = 0; i < npix; ++i) img.map.missing_mask[i] = img.map.values[i] == 0.0;
  }
  return img;
}

inline void write_pgm(const std::string& path, const DepthMap& map, int maxval = 255) {
  NSSC_REQUIRE(map.valid(), "malformed map");
  NSSC_REQUIRE(maxval > 0 && maxval <= 65535, "maxval out of range");
  std::string out = "P5\n" + std::to_string(map.width) + " " + std::to_string(map.height) +
                    "\n" + std::to_string(maxval) + "\n";
  for (double v : map.values) {
    long q = std::lround(v);
    q = std::clamp(q, 0L, static_cast<long>(maxval));
    if (maxval > 255) {
      out.push_back(static_cast<char>((q >> 8) & 0xff));
      out.push_back(static_cast<char>(q & 0xff));
    } else {
      out.push_back(static_cast<char>(q));
    }
  }
  detail::write_file(path, out);
}

struct PfmImage {
  DepthMap map;
  double scale_magnitude = 1.0;
};

// Grayscale "Pf" only. Rows are stored bottom-to-top; the scale line's sign
// encodes endianness and its magnitude is carried as metadata (samples are
// not multiplied, which keeps round trips bit-exact).
inline PfmImage read_pfm(const std::string& path) {
  const auto bytes = detail::read_file(path);
  size_t pos = 0;
  const std::string magic = detail::pnm_token(bytes, pos, path);
  if (magic == "PF") throw IoError(path + ": color PFM unsupported (want grayscale Pf)");
  if (magic != "Pf") throw IoError(path + ": unsupported magic '" + magic + "'");
  const long width = detail::pnm_int(bytes, pos, path);
  const long height = detail::pnm_int(bytes, pos, path);
  if (width <= 0 || height <= 0) throw IoError(path + ": nonpositive dimensions");

  const size_t scale_at = pos;
  const std::string scale_tok = detail::pnm_token(bytes, pos, path);
  double scale = 0.0;
  try {
    size_t used = 0;
    scale = std::stod(scale_tok, &used);
    if (used != scale_tok.size()) throw std::invalid_argument(scale_tok);
  } catch (const std::exception&) {
    throw IoError(path + ": bad scale near byte " + std::to_string(scale_at));
  }
  if (scale == 0.0) throw IoError(path + ": zero scale");
  const bool file_little = scale < 0.0;

  if (pos >= bytes.size()) throw IoError(path + ": payload missing");
  ++pos;  // single whitespace after the scale line
  const size_t npix = static_cast<size_t>(width) * height;
  const size_t need = npix * 4;
  const size_t have = bytes.size() - pos;
  if (have < need) {
    throw IoError(path + ": truncated payload, expected " + std::to_string(need) +
                  " bytes, found " + std::to_string(have));
  }

  PfmImage img;
  img.scale_magnitude = std::abs(scale);
  img.map.height = static_cast<int>(height);
  img.map.width = static_cast<int>(width);
  img.map.values.resize(npix);
  const auto* p = reinterpret_cast<const unsigned char*>(bytes.data()) + pos;
  for (long r = 0; r < height; ++r) {
    const long src_row = height - 1 - r;  // bottom row first in the file
    for (long c = 0; c < width; ++c) {
      unsigned char b[4];
      std::memcpy(b, p + (static_cast<size_t>(src_row) * width + c) * 4, 4);
      if (!file_little) std::swap(b[0], b[3]), std::swap(b[1], b[2]);
      float f;
      std::memcpy(&f, b, 4);
      img.map.values[static_cast<size_t>(r) * width + c] = static_cast<double>(f);
    }
  }
  return img;
}

inline void write_pfm(const std::string& path, const DepthMap& map,
                      double scale_magnitude = 1.0) {
  NSSC_REQUIRE(map.valid(), "malformed map");
  NSSC_REQUIRE(scale_magnitude > 0.0, "scale magnitude must be positive");
  std::ostringstream header;
  header << "Pf\n" << map.width << " " << map.height << "\n";
  char scale_buf[64];
  std::snprintf(scale_buf, sizeof(scale_buf), "%.9g", -scale_magnitude);
  header << scale_buf << "\n";

  std::string out = header.str();
  out.reserve(out.size() + map.values.size() * 4);
  for (int r = map.height - 1; r >= 0; --r) {
    for (int c = 0; c < map.width; ++c) {
      const float f = static_cast<float>(map.at(r, c));
      char b[4];
      std::memcpy(b, &f, 4);
      out.append(b, 4);
    }
  }
  detail::write_file(path, out);
}

namespace detail {

inline std::uint64_t fnv1a64(const char* data, size_t len) {
  std::uint64_t h = 14695981039346656037ULL;
  for (size_t i = 0; i < len; ++i) {
    h ^= static_cast<unsigned char>(data[i]);
    h *= 1099511628211ULL;
  }
  return h;
}

template <class T>
void append_le(std::string& out, T v) {
  char b[sizeof(T)];
  std::memcpy(b, &v, sizeof(T));
  out.append(b, sizeof(T));
}

template <class T>
T read_le(const std::vector<char>& bytes, size_t& pos) {
  T v;
  std::memcpy(&v, bytes.data() + pos, sizeof(T));
  pos += sizeof(T);
  return v;
}

}  // namespace detail

inline constexpr char kDictMagic[] = "NSSC-DICT";
inline constexpr std::uint32_t kDictVersion = 1;

inline void write_dictionary(const std::string& path, const Dictionary& dict) {
  NSSC_REQUIRE(dict.patch_h > 0 && dict.patch_w > 0 && dict.k() > 0, "empty dictionary");
  NSSC_REQUIRE(dict.atoms.rows() == dict.n(), "dictionary atoms/patch_dims mismatch");
  std::string out(kDictMagic, 9);
  detail::append_le(out, kDictVersion);
  detail::append_le(out, static_cast<std::uint32_t>(dict.patch_h));
  detail::append_le(out, static_cast<std::uint32_t>(dict.patch_w));
  detail::append_le(out, static_cast<std::uint32_t>(dict.k()));
  for (int j = 0; j < dict.k(); ++j) {
    for (int i = 0; i < dict.n(); ++i) detail::append_le(out, dict.atoms(i, j));
  }
  detail::append_le(out, detail::fnv1a64(out.data(), out.size()));
  detail::write_file(path, out);
}

inline Dictionary read_dictionary(const std::string& path) {
  const auto bytes = detail::read_file(path);
  const size_t header = 9 + 4 * 4;
  if (bytes.size() < header + 8) {
    throw IoError(path + ": truncated, expected at least " + std::to_string(header + 8) +
                  " bytes, found " + std::to_string(bytes.size()));
  }
  if (std::memcmp(bytes.data(), kDictMagic, 9) != 0) {
    throw IoError(path + ": bad magic (not a dictionary file)");
  }
  size_t pos = 9;
  const auto version = detail::read_le<std::uint32_t>(bytes, pos);
  if (version != kDictVersion) {
    throw IoError(path + ": unsupported dictionary version " + std::to_string(version));
  }
  const auto h = detail::read_le<std::uint32_t>(bytes, pos);
  const auto w = detail::read_le<std::uint32_t>(bytes, pos);
  const auto k = detail::read_le<std::uint32_t>(bytes, pos);
  if (h == 0 || w == 0 || k == 0 || h > 4096 || w > 4096 || k > (1u << 20)) {
    throw IoError(path + ": implausible dictionary dimensions");
  }
  const size_t n = static_cast<size_t>(h) * w;
  const size_t expect = header + n * k * 8 + 8;
  if (bytes.size() != expect) {
    throw IoError(path + ": size mismatch, expected " + std::to_string(expect) +
                  " bytes, found " + std::to_string(bytes.size()));
  }
  const auto stored = detail::fnv1a64(bytes.data(), bytes.size() - 8);
  size_t tail = bytes.size() - 8;
  const auto declared = detail::read_le<std::uint64_t>(bytes, tail);
  if (stored != declared) throw IoError(path + ": checksum mismatch (file corrupted)");

  Dictionary d;
  d.patch_h = static_cast<int>(h);
  d.patch_w = static_cast<int>(w);
  d.atoms = Mat(static_cast<int>(n), static_cast<int>(k));
  for (std::uint32_t j = 0; j < k; ++j) {
    for (size_t i = 0; i < n; ++i) {
      d.atoms(static_cast<int>(i), static_cast<int>(j)) = detail::read_le<double>(bytes, pos);
    }
  }
  return d;
}

inline double dynamic_range(const std::vector<double>& v) {
  NSSC_REQUIRE(!v.empty(), "empty grid");
  double lo = v[0], hi = v[0];
  for (double x : v) {
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  return hi - lo;
}

// 10 log10(peak^2 / MSE); +infinity when the maps are identical.
inline double psnr(const std::vector<double>& reference, const std::vector<double>& test,
                   double peak) {
  NSSC_REQUIRE(reference.size() == test.size() && !reference.empty(), "dims mismatch");
  NSSC_REQUIRE(peak > 0.0, "peak must be positive");
  double mse = 0.0;
  for (size_t i = 0; i < reference.size(); ++i) {
    const double d = reference[i] - test[i];
    mse += d * d;
  }
  mse /= static_cast<double>(reference.size());
  if (mse == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(peak * peak / mse);
}

}  // namespace nssc
