#pragma once

#include <string>

#include "stk/convolution.hpp"
#include "stk/fbc.hpp"
#include "stk/field.hpp"

// Binary and text formats. All binary payloads are little-endian 64-bit
// floats; FODF payload index order is x fastest, then y, z, orientation.
// Kernel table files use the same conventions with an extra source
// orientation axis (x fastest, ..., target, source slowest).

namespace stk {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct FormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// magic "FODF", version 1, u32 nx/ny/nz, f64 spacing, u8 sphere level
void write_fodf(const std::string& path, const FodField& f);
FodField read_fodf(const std::string& path);

// magic "FODK", version 1, u32 radius, f64 spacing, u8 sphere level
void write_kernel_table(const std::string& path, const KernelTable& k);
KernelTable read_kernel_table(const std::string& path);

// One fiber per line: x1 y1 z1 x2 y2 z2 ...; '#' starts a comment line.
Tractogram read_tractogram(const std::string& path);
void write_tractogram(const std::string& path, const Tractogram& tr);

}  // namespace stk
