#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace subalg {

/// Flat `key = value` text. `#` starts a comment; blank lines are ignored.
/// Vectors are space or comma separated; matrix rows are separated by `;`.
/// Every accessor error is a Parse error naming the source and line.
class KeyValueDocument {
 public:
  static KeyValueDocument parse(std::string_view text, std::string source = "document");

  bool has(const std::string& key) const { return entries_.count(key) != 0; }
  std::vector<std::string> keys() const;
  const std::string& raw(const std::string& key) const;

  double number(const std::string& key) const;
  std::size_t count(const std::string& key) const;  // nonnegative integer
  std::uint64_t u64(const std::string& key) const;
  bool boolean(const std::string& key) const;       // true/false/1/0/yes/no/on/off
  std::vector<double> numbers(const std::string& key) const;
  std::vector<int> integers(const std::string& key) const;
  Eigen::MatrixXd matrix(const std::string& key) const;
  std::vector<std::vector<int>> integer_rows(const std::string& key) const;

  /// Throws Parse on the first key not in `allowed`.
  void reject_unknown(const std::vector<std::string_view>& allowed) const;
  /// Throws Parse when `key` is absent.
  void require_key(const std::string& key) const;

 private:
  struct Entry {
    std::string value;
    std::size_t line = 0;
  };
  [[noreturn]] void bad(const std::string& key, const std::string& what) const;
  const Entry& entry(const std::string& key) const;

  std::string source_;
  std::map<std::string, Entry> entries_;
};

/// Whole file as text; throws Io when it cannot be read.
std::string read_text_file(const std::string& path);
/// Throws Io when the file cannot be written.
void write_text_file(const std::string& path, std::string_view content);

}  // namespace subalg
