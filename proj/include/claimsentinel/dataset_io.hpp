#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "claimsentinel/dataset.hpp"

namespace claimsentinel {

// JSON-lines: one bill per line, keys id / treatments / visit / static / label.
// UTF-8, newline-terminated. save -> load is an identity.
void save_dataset(const Dataset& dataset, const std::filesystem::path& path);
void save_dataset(const Dataset& dataset, std::ostream& os);

// Malformed records and repeated bill ids are rejected with the line
// number and field name. Schema cardinalities are inferred from the data,
// floored at the DatasetSchema defaults so generator output round-trips
// exactly.
Dataset load_dataset(const std::filesystem::path& path);
Dataset load_dataset(std::istream& is);

std::string bill_to_json_line(const Bill& bill);

}  // namespace claimsentinel
