#include "subalg/config_io.hpp"

#include <cstdio>

#include "subalg/error.hpp"

namespace subalg {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt(const PowerVector& k) {
  std::string out;
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(k[i]);
  }
  return out;
}

}  // namespace

IdentConfig parse_ident_config(const KeyValueDocument& doc) {
  doc.reject_unknown({"r1", "r2", "r3", "r4", "t_plus_min", "t_minus_min", "t_plus_max",
                      "t_minus_max", "n_expected", "k_max_y", "k_max_x", "k_max_y2",
                      "block_limit", "anchor_t", "pool_windows", "scaling", "monomial_cap"});
  IdentConfig cfg;
  cfg.r1 = doc.number("r1");
  cfg.r2 = doc.number("r2");
  cfg.r3 = doc.number("r3");
  cfg.r4 = doc.number("r4");

  const std::size_t n_expected =
      doc.has("n_expected") ? doc.count("n_expected") : kDefaultExpectedStateDim;
  require(n_expected >= 1, ErrorCode::InvalidInput, "n_expected must be positive");
  auto count_or = [&](const char* key, std::size_t fallback) {
    return doc.has(key) ? doc.count(key) : fallback;
  };
  cfg.t_plus_min = count_or("t_plus_min", 1);
  cfg.t_minus_min = count_or("t_minus_min", 1);
  cfg.t_plus_max = count_or("t_plus_max", default_horizon(n_expected));
  cfg.t_minus_max = count_or("t_minus_max", default_horizon(n_expected));
  if (doc.has("k_max_y")) cfg.k_max_y = PowerVector(doc.integers("k_max_y"));
  if (doc.has("k_max_x")) cfg.k_max_x = PowerVector(doc.integers("k_max_x"));
  if (doc.has("k_max_y2")) cfg.k_max_y2 = PowerVector(doc.integers("k_max_y2"));
  cfg.block_limit = count_or("block_limit", 500);
  if (doc.has("anchor_t") && doc.raw("anchor_t") != "auto") cfg.anchor_t = doc.count("anchor_t");
  if (doc.has("pool_windows") && doc.raw("pool_windows") != "auto") {
    cfg.pool_windows = doc.boolean("pool_windows");
  }
  if (doc.has("scaling")) cfg.scaling = doc.boolean("scaling");
  cfg.monomial_cap = count_or("monomial_cap", kDefaultMonomialCap);
  cfg.validate();
  return cfg;
}

IdentConfig parse_ident_config(std::string_view text, std::string source) {
  return parse_ident_config(KeyValueDocument::parse(text, std::move(source)));
}

std::string format_ident_config(const IdentConfig& cfg) {
  std::string out;
  auto line = [&](const char* key, const std::string& value) {
    out += key;
    out += " = ";
    out += value;
    out += '\n';
  };
  line("r1", fmt(cfg.r1));
  line("r2", fmt(cfg.r2));
  line("r3", fmt(cfg.r3));
  line("r4", fmt(cfg.r4));
  line("t_plus_min", std::to_string(cfg.t_plus_min));
  line("t_minus_min", std::to_string(cfg.t_minus_min));
  line("t_plus_max", std::to_string(cfg.t_plus_max));
  line("t_minus_max", std::to_string(cfg.t_minus_max));
  line("k_max_y", fmt(cfg.k_max_y));
  line("k_max_x", fmt(cfg.k_max_x));
  line("k_max_y2", fmt(cfg.k_max_y2));
  line("block_limit", std::to_string(cfg.block_limit));
  line("anchor_t", cfg.anchor_t ? std::to_string(*cfg.anchor_t) : "auto");
  line("pool_windows", cfg.pool_windows ? (*cfg.pool_windows ? "true" : "false") : "auto");
  line("scaling", cfg.scaling ? "true" : "false");
  line("monomial_cap", std::to_string(cfg.monomial_cap));
  return out;
}

}  // namespace subalg
