#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "invlab/core/grid.hpp"

namespace invlab {

struct FieldHeader {
  std::uint32_t version = 1;
  std::uint32_t dim = 3;
  std::uint32_t n = 0;
  double length = 0.0;
  bool complex = false;
};

/// SFLD container: magic, version u32, dim u32, n u32, L f64, kind u8
/// (0 real, 1 complex), then little-endian f64 samples in row-major order.
void write_field(std::ostream& os, const ScalarField& f);
void write_field(std::ostream& os, const ComplexField& f);
void write_field(const std::string& path, const ScalarField& f);
void write_field(const std::string& path, const ComplexField& f);

FieldHeader read_field_header(std::istream& is);
ScalarField read_scalar_field(const std::string& path);
ComplexField read_complex_field(const std::string& path);

}  // namespace invlab
