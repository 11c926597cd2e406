#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "fsl/spectral/field.hpp"

namespace fsl {

/// Raw FSLB array: magic "FSLB", u32 version (1), u8 dtype (1 = complex128),
/// u8 ndim, ndim x u64 dims, little-endian row-major complex128 payload.
struct FslbArray {
  std::vector<std::uint64_t> dims;
  std::vector<Complex> values;
};

std::string encode_fslb(const FslbArray& array);
FslbArray decode_fslb(const std::string& bytes);

void write_fslb(const std::filesystem::path& path, const FslbArray& array);
FslbArray read_fslb(const std::filesystem::path& path);

// A Field is stored with dims {m, ..., m} (n entries); a Trajectory with
// dims {T, m, ..., m}. Physical metadata (L, t0, dt) is carried by a sidecar
// key-value document written next to the array (<path>.json).
void save_field(const std::filesystem::path& path, const Field& f);
Field load_field(const std::filesystem::path& path);
void save_trajectory(const std::filesystem::path& path, const Trajectory& u);
Trajectory load_trajectory(const std::filesystem::path& path);

}  // namespace fsl
