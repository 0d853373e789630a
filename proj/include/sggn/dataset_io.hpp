#ifndef SGGN_DATASET_IO_HPP
#define SGGN_DATASET_IO_HPP

#include <cstdint>
#include <iosfwd>
#include <string>

#include "sggn/network.hpp"

namespace sggn {

enum class LabelMode { kTeacher, kSigns, kZeros };

// Synthetic data: columns uniform on the unit sphere (normalized Gaussians).
// Teacher labels come from a fresh width-64 network seeded from
// derive_seed(seed, "teacher") and are rescaled so that ||y||_inf <= 1;
// sign labels are +-1 draws from derive_seed(seed, "labels").
Dataset generate_dataset(Eigen::Index n, Eigen::Index d, std::uint64_t seed, LabelMode mode);

// CSV with d feature columns then one label column per row; an optional
// header line is skipped. Rows must be unit vectors unless normalize is set,
// in which case each feature row is rescaled to unit norm.
Dataset load_dataset(const std::string& path, bool normalize = false);
Dataset load_dataset(std::istream& in, const std::string& name, bool normalize = false);

// Full-precision CSV (round-trips through load_dataset bit-exactly to 1e-12).
void save_dataset(const Dataset& data, const std::string& path);
void save_dataset(const Dataset& data, std::ostream& out);

}  // namespace sggn

#endif  // SGGN_DATASET_IO_HPP
