#pragma once

#include <Eigen/Dense>
#include <filesystem>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "confball/models.hpp"

namespace confball {

/// Filesystem failure while reading or writing.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Family config that is well-formed JSON but not a valid description.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Comma-separated numeric table. A first row that does not parse as numbers
/// is taken as a header. NaN and infinities are rejected.
Eigen::MatrixXd load_matrix_csv(const std::filesystem::path& path);
Eigen::MatrixXd parse_matrix_csv(std::string_view text);

/// A single column (or a single row) of numbers.
Eigen::VectorXd load_vector_csv(const std::filesystem::path& path);
Eigen::VectorXd parse_vector_csv(std::string_view text);

/// "%.{digits}g" rendering, and the value that rendering parses back to.
std::string format_sig(double x, int digits = 6);
double round_sig(double x, int digits = 6);

/// Shortest text that reads back as exactly `x`.
std::string format_exact(double x);

/// Writes `text` to `path`, or to stdout when `path` is empty or "-".
void write_text(const std::string& path, std::string_view text);

struct FamilyConfig {
  std::shared_ptr<const ModelFamily> family;
  std::optional<double> alpha;
  double beta = 0;
};

/// Reads a family description. Either a preset
///   {"n": 1000, "beta": 0.1, "preset": "fourier-dyadic", "K": 8}
/// or an explicit list
///   {"n", "beta", "alpha"?, "allocation": "uniform"|"dimensional"|"explicit",
///    "models": [{"id", "basis_source": "fourier"|"columns-csv"|"subset"|"full",
///                "params": {...}, "beta_m"?}]}
/// fourier takes {"m"}; columns-csv takes {"path", "columns"?}; subset takes
/// {"design", "columns"} with 1-based columns. Relative paths resolve against
/// the config file. R^n is appended when no full model is listed. A
/// `beta_override` replaces the file's beta before allocation.
FamilyConfig load_family_config(const std::filesystem::path& path,
                                std::optional<double> beta_override = std::nullopt);
FamilyConfig parse_family_config(std::string_view json_text, const std::filesystem::path& base_dir,
                                 std::optional<double> beta_override = std::nullopt);

}  // namespace confball
