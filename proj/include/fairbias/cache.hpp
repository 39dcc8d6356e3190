#pragma once

#include <string>

#include "fairbias/dataset.hpp"

namespace fairbias {

/// Columnar dataset file. First line is "FBDS 1 <header bytes>", then a JSON
/// header listing every column with its kind and role, then the columns as
/// little-endian binary in header order (ids as uint64, codes and reals as
/// IEEE doubles, sensitive and label as uint8).
void write_cache(const Dataset& dataset, const std::string& path);
Dataset read_cache(const std::string& path);

std::string encode_cache(const Dataset& dataset);
Dataset decode_cache(const std::string& bytes);

/// One id per line, ascending.
void write_removal_manifest(const IdSet& removed, const std::string& path);

}  // namespace fairbias
