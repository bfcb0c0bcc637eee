#include "num/checkpoint.h"

#include <cstdint>
#include <cstring>
#include <fstream>

namespace hnet::num {

namespace {

constexpr char kMagic[8] = {'H', 'N', 'E', 'T', 'C', 'K', 'P', 'T'};
constexpr std::uint32_t kVersion = 1;

void put_u32(std::ostream& os, std::uint32_t v) {
  unsigned char b[4] = {static_cast<unsigned char>(v), static_cast<unsigned char>(v >> 8),
                        static_cast<unsigned char>(v >> 16), static_cast<unsigned char>(v >> 24)};
  os.write(reinterpret_cast<const char*>(b), 4);
}

std::uint32_t get_u32(std::istream& is) {
  unsigned char b[4];
  if (!is.read(reinterpret_cast<char*>(b), 4)) throw DataError("checkpoint truncated");
  return static_cast<std::uint32_t>(b[0]) | static_cast<std::uint32_t>(b[1]) << 8 |
         static_cast<std::uint32_t>(b[2]) << 16 | static_cast<std::uint32_t>(b[3]) << 24;
}

}  // namespace

void save_checkpoint(const ParamStore& params, const std::string& path) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("cannot write checkpoint " + path);
  os.write(kMagic, sizeof kMagic);
  put_u32(os, kVersion);
  put_u32(os, static_cast<std::uint32_t>(sizeof(Real)));
  put_u32(os, static_cast<std::uint32_t>(params.size()));
  for (const auto& [name, t] : params.entries()) {
    put_u32(os, static_cast<std::uint32_t>(name.size()));
    os.write(name.data(), static_cast<std::streamsize>(name.size()));
    put_u32(os, static_cast<std::uint32_t>(t.rows()));
    put_u32(os, static_cast<std::uint32_t>(t.cols()));
    os.write(reinterpret_cast<const char*>(t.values().data()), static_cast<std::streamsize>(t.size() * sizeof(Real)));
  }
  if (!os) throw IoError("failed writing checkpoint " + path);
}

void load_checkpoint(ParamStore& params, const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot read checkpoint " + path);
  char magic[8];
  if (!is.read(magic, 8) || std::memcmp(magic, kMagic, 8) != 0) throw DataError(path + " is not a checkpoint");
  if (get_u32(is) != kVersion) throw DataError("unsupported checkpoint version in " + path);
  if (get_u32(is) != sizeof(Real)) throw DataError("checkpoint scalar width differs from this build");
  const std::uint32_t count = get_u32(is);
  if (count != params.size()) throw DataError("checkpoint has " + std::to_string(count) + " arrays, model has " + std::to_string(params.size()));
  for (std::uint32_t k = 0; k < count; ++k) {
    std::string name(get_u32(is), '\0');
    if (!is.read(name.data(), static_cast<std::streamsize>(name.size()))) throw DataError("checkpoint truncated");
    if (!params.contains(name)) throw DataError("checkpoint array '" + name + "' unknown to the model");
    Tensor& t = params.get(name);
    const auto rows = get_u32(is), cols = get_u32(is);
    if (rows != static_cast<std::uint32_t>(t.rows()) || cols != static_cast<std::uint32_t>(t.cols())) {
      throw DataError("checkpoint array '" + name + "' has shape " + std::to_string(rows) + "x" + std::to_string(cols) +
                      ", model expects " + t.shape_str());
    }
    if (!is.read(reinterpret_cast<char*>(t.mutable_values().data()), static_cast<std::streamsize>(t.size() * sizeof(Real)))) {
      throw DataError("checkpoint truncated");
    }
  }
}

}  // namespace hnet::num
