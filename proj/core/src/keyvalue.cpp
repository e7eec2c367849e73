#include "subalg/keyvalue.hpp"

#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "subalg/error.hpp"

namespace subalg {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> tokens(std::string_view s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ' ' || c == '\t' || c == ',' || c == '\r') {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

std::vector<std::string_view> split_rows(std::string_view s) {
  std::vector<std::string_view> rows;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(';', start);
    rows.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  // a trailing ';' is tolerated
  if (rows.size() > 1 && rows.back().empty()) rows.pop_back();
  return rows;
}

bool to_double(const std::string& tok, double& out) {
  if (tok.empty()) return false;
  char* end = nullptr;
  errno = 0;
  out = std::strtod(tok.c_str(), &end);
  return end == tok.c_str() + tok.size() && errno == 0 && std::isfinite(out);
}

bool to_long(const std::string& tok, long long& out) {
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last && first != last;
}

}  // namespace

KeyValueDocument KeyValueDocument::parse(std::string_view text, std::string source) {
  KeyValueDocument doc;
  doc.source_ = std::move(source);
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto nl = text.find('\n', start);
    std::string_view line = text.substr(start, nl == std::string_view::npos ? nl : nl - start);
    ++line_no;
    start = nl == std::string_view::npos ? text.size() + 1 : nl + 1;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = doc.source_ + ":" + std::to_string(line_no) + ": ";
    require(eq != std::string_view::npos, ErrorCode::Parse, where + "expected 'key = value'");
    const std::string key(trim(line.substr(0, eq)));
    require(!key.empty(), ErrorCode::Parse, where + "empty key");
    require(!doc.has(key), ErrorCode::Parse, where + "duplicate key '" + key + "'");
    doc.entries_[key] = Entry{std::string(trim(line.substr(eq + 1))), line_no};
  }
  return doc;
}

std::vector<std::string> KeyValueDocument::keys() const {
  std::vector<std::string> out;
  for (const auto& [k, v] : entries_) out.push_back(k);
  return out;
}

void KeyValueDocument::bad(const std::string& key, const std::string& what) const {
  auto it = entries_.find(key);
  const std::string line = it == entries_.end() ? "" : ":" + std::to_string(it->second.line);
  fail(ErrorCode::Parse, source_ + line + ": " + key + ": " + what);
}

const KeyValueDocument::Entry& KeyValueDocument::entry(const std::string& key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) fail(ErrorCode::Parse, source_ + ": missing key '" + key + "'");
  return it->second;
}

void KeyValueDocument::require_key(const std::string& key) const { entry(key); }

const std::string& KeyValueDocument::raw(const std::string& key) const { return entry(key).value; }

double KeyValueDocument::number(const std::string& key) const {
  const auto t = tokens(raw(key));
  double v = 0.0;
  if (t.size() != 1 || !to_double(t[0], v)) bad(key, "expected a finite number");
  return v;
}

std::size_t KeyValueDocument::count(const std::string& key) const {
  const auto t = tokens(raw(key));
  long long v = 0;
  if (t.size() != 1 || !to_long(t[0], v) || v < 0) bad(key, "expected a nonnegative integer");
  return static_cast<std::size_t>(v);
}

std::uint64_t KeyValueDocument::u64(const std::string& key) const {
  const auto t = tokens(raw(key));
  std::uint64_t v = 0;
  if (t.size() == 1) {
    auto [ptr, ec] = std::from_chars(t[0].data(), t[0].data() + t[0].size(), v);
    if (ec == std::errc() && ptr == t[0].data() + t[0].size()) return v;
  }
  bad(key, "expected an unsigned 64-bit integer");
}

bool KeyValueDocument::boolean(const std::string& key) const {
  const std::string& v = raw(key);
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  bad(key, "expected true or false");
}

std::vector<double> KeyValueDocument::numbers(const std::string& key) const {
  std::vector<double> out;
  for (const auto& tok : tokens(raw(key))) {
    double v = 0.0;
    if (!to_double(tok, v)) bad(key, "'" + tok + "' is not a finite number");
    out.push_back(v);
  }
  if (out.empty()) bad(key, "expected at least one number");
  return out;
}

std::vector<int> KeyValueDocument::integers(const std::string& key) const {
  std::vector<int> out;
  for (const auto& tok : tokens(raw(key))) {
    long long v = 0;
    if (!to_long(tok, v) || v < 0 || v > 1'000'000) {
      bad(key, "'" + tok + "' is not a nonnegative integer");
    }
    out.push_back(static_cast<int>(v));
  }
  if (out.empty()) bad(key, "expected at least one integer");
  return out;
}

Eigen::MatrixXd KeyValueDocument::matrix(const std::string& key) const {
  std::vector<std::vector<double>> rows;
  for (std::string_view row : split_rows(raw(key))) {
    std::vector<double> r;
    for (const auto& tok : tokens(row)) {
      double v = 0.0;
      if (!to_double(tok, v)) bad(key, "'" + tok + "' is not a finite number");
      r.push_back(v);
    }
    if (r.empty()) bad(key, "empty matrix row " + std::to_string(rows.size() + 1));
    if (!rows.empty() && r.size() != rows.front().size()) {
      bad(key, "row " + std::to_string(rows.size() + 1) + " has " + std::to_string(r.size()) +
                   " entries, expected " + std::to_string(rows.front().size()));
    }
    rows.push_back(std::move(r));
  }
  Eigen::MatrixXd M(static_cast<Eigen::Index>(rows.size()),
                    static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      M(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
  }
  return M;
}

std::vector<std::vector<int>> KeyValueDocument::integer_rows(const std::string& key) const {
  std::vector<std::vector<int>> rows;
  for (std::string_view row : split_rows(raw(key))) {
    std::vector<int> r;
    for (const auto& tok : tokens(row)) {
      long long v = 0;
      if (!to_long(tok, v) || v < 0 || v > 1'000'000) {
        bad(key, "'" + tok + "' is not a nonnegative integer");
      }
      r.push_back(static_cast<int>(v));
    }
    if (r.empty()) bad(key, "empty row " + std::to_string(rows.size() + 1));
    if (!rows.empty() && r.size() != rows.front().size()) {
      bad(key, "row " + std::to_string(rows.size() + 1) + " has a different length");
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

void KeyValueDocument::reject_unknown(const std::vector<std::string_view>& allowed) const {
  for (const auto& [key, e] : entries_) {
    bool ok = false;
    for (auto a : allowed) ok = ok || a == key;
    if (!ok) {
      fail(ErrorCode::Parse,
           source_ + ":" + std::to_string(e.line) + ": unknown key '" + key + "'");
    }
  }
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), ErrorCode::Io, "cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  require(!in.bad(), ErrorCode::Io, "error reading '" + path + "'");
  return ss.str();
}

void write_text_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  require(static_cast<bool>(out), ErrorCode::Io, "cannot open '" + path + "' for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.flush();
  require(static_cast<bool>(out), ErrorCode::Io, "error writing '" + path + "'");
}

}  // namespace subalg
