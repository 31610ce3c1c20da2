#pragma once

// Subcommands of the kscolour tool, callable in-process.

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "kscolour/report.hpp"

namespace kscolour::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;
inline constexpr int kExitInternal = 3;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bundled data directory, or $KSCOLOUR_DATA_DIR when set.
std::filesystem::path data_dir();

/// `path` if it exists, else the file of the same name in data_dir() (a bare
/// set name such as "conway-kochen" also resolves). Throws DataError.
std::filesystem::path resolve_data_file(const std::string& path);

/// Hex SHA-256 of a file's bytes. Throws DataError if unreadable.
std::string sha256_file(const std::filesystem::path& path);

/// Runs one command line (args exclude the program name). The report goes to
/// --out or `out`; failures print a JSON error object to `err`. Returns the
/// exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

/// Copy of a report without its "timestamp" and "timing" members, at any depth.
Json strip_nondeterministic(const Json& report);

}  // namespace kscolour::cli
