#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>

#include "mgof/estimate/dataset.hpp"

namespace mgof::io {

// Malformed or unusable data (exit status 65 in the command-line tool).
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Header row of variable names, one row per unit, the token NA for a
// missing cell. Columns that are never observed are rejected.
est::ObservedDataset read_csv(std::istream& in);
est::ObservedDataset read_csv(const std::filesystem::path& path);

// Values are written with 17 significant digits so they round-trip.
void write_csv(std::ostream& out, const est::ObservedDataset& data);
void write_csv(const std::filesystem::path& path, const est::ObservedDataset& data);

}  // namespace mgof::io
