#pragma once
// Text formats.
//
// Dense CSV: one point per line, comma-separated decimal floats, optional
// single header line. Blank lines are ignored.
//
// Fingerprints: one vector per line, either '0'/'1' characters (uniform
// length d), or "0x"-prefixed hex where each nibble expands to four bits,
// most significant bit first, so "0xA" is 1010. Hex input needs d up front;
// bits past d in the final nibble must be zero.
//
// Labels: CSV "index,label" with an "index,label" header.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

#include "classix/data.hpp"

namespace classix {

struct DenseCsvOptions {
    bool header = false;
};

DenseDataset read_dense_csv(std::istream& in, const DenseCsvOptions& options = {});
DenseDataset load_dense_csv(const std::filesystem::path& path, const DenseCsvOptions& options = {});
void save_dense_csv(const std::filesystem::path& path, const DenseDataset& data);

// `dims` is required for hex input and, if given, checked for binary input.
FingerprintSet read_fingerprints(std::istream& in, std::optional<std::size_t> dims = std::nullopt);
FingerprintSet load_fingerprints(const std::filesystem::path& path,
                                 std::optional<std::size_t> dims = std::nullopt);
void write_fingerprints(std::ostream& out, const FingerprintSet& fps);
void save_fingerprints(const std::filesystem::path& path, const FingerprintSet& fps);

void write_labels(std::ostream& out, const std::vector<std::int64_t>& labels);
void save_labels(const std::filesystem::path& path, const std::vector<std::int64_t>& labels);
// Accepts the header or not; rows must be 0..n-1 in order.
std::vector<std::int64_t> read_labels(std::istream& in);
std::vector<std::int64_t> load_labels(const std::filesystem::path& path);

// FNV-1a 64-bit hash of a file's bytes, as 16 hex digits.
std::string file_checksum(const std::filesystem::path& path);

}  // namespace classix
