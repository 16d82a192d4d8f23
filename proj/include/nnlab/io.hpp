#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "nnlab/grid.hpp"

namespace nnlab {

/** Flat binary field format, little-endian:
 *    u64 dim, u64 shape[dim], f64 box_length[dim],
 *    then total() interleaved (re, im) f64 pairs.
 */
void save_field(const GridField& u, const std::string& path);
GridField load_field(const std::string& path);

/** Plain text manifest, one `key = value` per line, keys sorted. */
void save_manifest(const std::map<std::string, std::string>& kv, const std::string& path);
std::map<std::string, std::string> load_manifest(const std::string& path);

/** Formats a double so that parsing it back is exact. */
std::string fmt_double(double x);

/** CSV table with a fixed header; all cells preformatted strings. */
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> row);
  std::string to_string() const;
  void save(const std::string& path) const;
};

/** `key = value` config with `[section]` headers; returns "section.key" map. */
std::map<std::string, std::string> parse_config_text(const std::string& text);
std::map<std::string, std::string> load_config(const std::string& path);

/** Writes files under a temp directory, then renames it to `dir` (atomic publish). */
class BundleWriter {
 public:
  explicit BundleWriter(const std::string& dir);
  ~BundleWriter();
  void add_text(const std::string& name, const std::string& content);
  /** Staging path for `name`, for writers that stream their own bytes. */
  std::string path(const std::string& name) const;
  void commit();

 private:
  std::string dir_, tmp_;
  bool committed_ = false;
};

}  // namespace nnlab
