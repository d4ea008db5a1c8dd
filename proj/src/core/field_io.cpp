#include "invlab/core/field_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>

namespace invlab {
namespace {

static_assert(std::endian::native == std::endian::little, "binary formats assume a little-endian host");

constexpr char kMagic[4] = {'S', 'F', 'L', 'D'};
constexpr std::uint32_t kVersion = 1;

template <class T>
void put(std::ostream& os, const T& v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T get(std::istream& is) {
  T v{};
  if (!is.read(reinterpret_cast<char*>(&v), sizeof(T))) throw FormatError("field file truncated");
  return v;
}

void put_header(std::ostream& os, const Grid& g, bool complex) {
  os.write(kMagic, 4);
  put(os, kVersion);
  put(os, static_cast<std::uint32_t>(g.dim()));
  put(os, static_cast<std::uint32_t>(g.n()));
  put(os, g.length());
  put(os, static_cast<std::uint8_t>(complex ? 1 : 0));
}

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("cannot open " + path + " for writing");
  return os;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error("cannot open " + path);
  return is;
}

template <class T>
Field<T> read_body(std::istream& is, const FieldHeader& h) {
  const Grid g(static_cast<int>(h.dim), static_cast<int>(h.n), h.length);
  std::vector<T> values(g.size());
  if (!is.read(reinterpret_cast<char*>(values.data()), static_cast<std::streamsize>(values.size() * sizeof(T)))) {
    throw FormatError("field file truncated: expected " + std::to_string(values.size()) + " samples");
  }
  return Field<T>(g, std::move(values));
}

}  // namespace

void write_field(std::ostream& os, const ScalarField& f) {
  put_header(os, f.grid(), false);
  os.write(reinterpret_cast<const char*>(f.values().data()), static_cast<std::streamsize>(f.size() * sizeof(double)));
}

void write_field(std::ostream& os, const ComplexField& f) {
  put_header(os, f.grid(), true);
  os.write(reinterpret_cast<const char*>(f.values().data()), static_cast<std::streamsize>(f.size() * sizeof(Complex)));
}

void write_field(const std::string& path, const ScalarField& f) {
  auto os = open_out(path);
  write_field(os, f);
}

void write_field(const std::string& path, const ComplexField& f) {
  auto os = open_out(path);
  write_field(os, f);
}

FieldHeader read_field_header(std::istream& is) {
  char magic[4];
  if (!is.read(magic, 4)) throw FormatError("field file truncated");
  if (std::memcmp(magic, kMagic, 4) != 0) {
    throw FormatError("bad field magic: expected SFLD, found '" + std::string(magic, 4) + "'");
  }
  FieldHeader h;
  h.version = get<std::uint32_t>(is);
  if (h.version != kVersion) throw FormatError("unsupported field version " + std::to_string(h.version));
  h.dim = get<std::uint32_t>(is);
  h.n = get<std::uint32_t>(is);
  h.length = get<double>(is);
  const auto kind = get<std::uint8_t>(is);
  if (kind > 1) throw FormatError("unknown field kind " + std::to_string(kind));
  h.complex = kind == 1;
  return h;
}

ScalarField read_scalar_field(const std::string& path) {
  auto is = open_in(path);
  const auto h = read_field_header(is);
  if (h.complex) throw FormatError(path + " holds a complex field, expected real");
  return read_body<double>(is, h);
}

ComplexField read_complex_field(const std::string& path) {
  auto is = open_in(path);
  const auto h = read_field_header(is);
  if (!h.complex) return to_complex(read_body<double>(is, h));
  return read_body<Complex>(is, h);
}

}  // namespace invlab
