#include "fsl/spectral/fslb.hpp"

#include <bit>
#include <cstring>

#include <json.hpp>

#include "fsl/common/error.hpp"
#include "fsl/common/io.hpp"

namespace fsl {

namespace {

constexpr char kMagic[4] = {'F', 'S', 'L', 'B'};
constexpr std::uint32_t kVersion = 1;
constexpr std::uint8_t kComplex128 = 1;

static_assert(std::endian::native == std::endian::little, "FSLB I/O assumes a little-endian host");

template <typename T>
void put(std::string& out, T value) {
  char buf[sizeof(T)];
  std::memcpy(buf, &value, sizeof(T));
  out.append(buf, sizeof(T));
}

template <typename T>
T take(const std::string& in, std::size_t& pos) {
  if (pos + sizeof(T) > in.size()) throw FormatError("FSLB: truncated header");
  T value;
  std::memcpy(&value, in.data() + pos, sizeof(T));
  pos += sizeof(T);
  return value;
}

std::filesystem::path sidecar(const std::filesystem::path& path) {
  auto p = path;
  p += ".json";
  return p;
}

}  // namespace

std::string encode_fslb(const FslbArray& array) {
  std::uint64_t count = 1;
  for (auto d : array.dims) count *= d;
  if (count != array.values.size()) throw InvalidArgument("FSLB: dims do not match payload");
  if (array.dims.size() > 255) throw InvalidArgument("FSLB: too many dimensions");
  std::string out(kMagic, 4);
  put(out, kVersion);
  put(out, kComplex128);
  put(out, static_cast<std::uint8_t>(array.dims.size()));
  for (auto d : array.dims) put(out, d);
  const auto* bytes = reinterpret_cast<const char*>(array.values.data());
  out.append(bytes, array.values.size() * sizeof(Complex));
  return out;
}

FslbArray decode_fslb(const std::string& bytes) {
  if (bytes.size() < 10 || std::memcmp(bytes.data(), kMagic, 4) != 0)
    throw FormatError("FSLB: bad magic");
  std::size_t pos = 4;
  if (take<std::uint32_t>(bytes, pos) != kVersion) throw FormatError("FSLB: unsupported version");
  if (take<std::uint8_t>(bytes, pos) != kComplex128) throw FormatError("FSLB: unsupported dtype");
  const auto ndim = take<std::uint8_t>(bytes, pos);
  FslbArray array;
  std::uint64_t count = 1;
  for (int i = 0; i < ndim; ++i) {
    array.dims.push_back(take<std::uint64_t>(bytes, pos));
    count *= array.dims.back();
  }
  if (bytes.size() - pos != count * sizeof(Complex)) throw FormatError("FSLB: payload size mismatch");
  array.values.resize(count);
  std::memcpy(array.values.data(), bytes.data() + pos, count * sizeof(Complex));
  return array;
}

void write_fslb(const std::filesystem::path& path, const FslbArray& array) {
  write_file_atomic(path, encode_fslb(array));
}

FslbArray read_fslb(const std::filesystem::path& path) { return decode_fslb(read_file(path)); }

void save_field(const std::filesystem::path& path, const Field& f) {
  FslbArray a{std::vector<std::uint64_t>(f.grid.dim(), f.grid.points()), f.values};
  write_fslb(path, a);
  nlohmann::json meta = {{"kind", "field"}, {"dim", f.grid.dim()}, {"points", f.grid.points()},
                         {"length", f.grid.length()}};
  write_file_atomic(sidecar(path), meta.dump(2) + "\n");
}

Field load_field(const std::filesystem::path& path) {
  auto a = read_fslb(path);
  const auto meta = nlohmann::json::parse(read_file(sidecar(path)));
  const Grid g = make_grid(meta.at("dim").get<int>(), meta.at("points").get<int>(),
                           meta.at("length").get<double>());
  if (a.dims != std::vector<std::uint64_t>(g.dim(), g.points()))
    throw FormatError("FSLB field dims disagree with metadata");
  return Field(g, std::move(a.values));
}

void save_trajectory(const std::filesystem::path& path, const Trajectory& u) {
  std::vector<std::uint64_t> dims{u.frames};
  dims.insert(dims.end(), u.grid.dim(), u.grid.points());
  write_fslb(path, FslbArray{dims, u.values});
  nlohmann::json meta = {{"kind", "trajectory"}, {"dim", u.grid.dim()}, {"points", u.grid.points()},
                         {"length", u.grid.length()}, {"t0", u.t0}, {"dt", u.dt},
                         {"frames", u.frames}};
  write_file_atomic(sidecar(path), meta.dump(2) + "\n");
}

Trajectory load_trajectory(const std::filesystem::path& path) {
  auto a = read_fslb(path);
  const auto meta = nlohmann::json::parse(read_file(sidecar(path)));
  const Grid g = make_grid(meta.at("dim").get<int>(), meta.at("points").get<int>(),
                           meta.at("length").get<double>());
  const auto frames = meta.at("frames").get<std::size_t>();
  std::vector<std::uint64_t> dims{frames};
  dims.insert(dims.end(), g.dim(), g.points());
  if (a.dims != dims) throw FormatError("FSLB trajectory dims disagree with metadata");
  Trajectory u(g, meta.at("t0").get<double>(), meta.at("dt").get<double>(), frames);
  u.values = std::move(a.values);
  return u;
}

}  // namespace fsl
