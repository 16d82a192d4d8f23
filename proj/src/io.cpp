#include "nnlab/io.hpp"

#include <cinttypes>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace nnlab {

namespace {

void put_u64(std::ostream& os, std::uint64_t x) {
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = (unsigned char)((x >> (8 * i)) & 0xff);
  os.write(reinterpret_cast<const char*>(b), 8);
}

std::uint64_t get_u64(std::istream& is) {
  unsigned char b[8];
  is.read(reinterpret_cast<char*>(b), 8);
  if (!is) throw std::runtime_error("field file truncated");
  std::uint64_t x = 0;
  for (int i = 0; i < 8; ++i) x |= std::uint64_t(b[i]) << (8 * i);
  return x;
}

void put_f64(std::ostream& os, double d) {
  std::uint64_t x;
  std::memcpy(&x, &d, 8);
  put_u64(os, x);
}

double get_f64(std::istream& is) {
  std::uint64_t x = get_u64(is);
  double d;
  std::memcpy(&d, &x, 8);
  return d;
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

void save_field(const GridField& u, const std::string& path) {
  u.validate("save_field");
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("save_field: cannot open " + path);
  put_u64(os, u.dim());
  for (std::size_t n : u.shape) put_u64(os, n);
  for (double L : u.box) put_f64(os, L);
  for (const cplx& z : u.v) {
    put_f64(os, z.real());
    put_f64(os, z.imag());
  }
  if (!os) throw std::runtime_error("save_field: write failed for " + path);
}

GridField load_field(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("load_field: cannot open " + path);
  std::uint64_t d = get_u64(is);
  if (d == 0 || d > 8) throw std::runtime_error("load_field: bad dimension");
  std::vector<std::size_t> shape(d);
  std::vector<double> box(d);
  for (auto& n : shape) n = get_u64(is);
  for (auto& L : box) L = get_f64(is);
  GridField u(shape, box);
  for (cplx& z : u.v) {
    double re = get_f64(is);
    double im = get_f64(is);
    z = cplx(re, im);
  }
  u.validate("load_field");
  return u;
}

std::string fmt_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void save_manifest(const std::map<std::string, std::string>& kv, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("save_manifest: cannot open " + path);
  for (const auto& [k, v] : kv) os << k << " = " << v << "\n";
}

std::map<std::string, std::string> load_manifest(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("load_manifest: cannot open " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(is, line)) {
    std::size_t eq = line.find('=');
    if (eq == std::string::npos) continue;
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return kv;
}

void CsvTable::add_row(std::vector<std::string> row) {
  if (row.size() != header.size()) throw std::invalid_argument("CsvTable: column count");
  rows.push_back(std::move(row));
}

std::string CsvTable::to_string() const {
  std::ostringstream os;
  for (std::size_t c = 0; c < header.size(); ++c)
    os << header[c] << (c + 1 < header.size() ? "," : "");
  os << "\n";
  for (const auto& r : rows) {
    for (std::size_t c = 0; c < r.size(); ++c) os << r[c] << (c + 1 < r.size() ? "," : "");
    os << "\n";
  }
  return os.str();
}

void CsvTable::save(const std::string& path) const {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("CsvTable::save: cannot open " + path);
  os << to_string();
}

std::map<std::string, std::string> parse_config_text(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream is(text);
  std::string line, section;
  while (std::getline(is, line)) {
    std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t[0] == ';') continue;
    if (t.front() == '[' && t.back() == ']') {
      section = trim(t.substr(1, t.size() - 2));
      continue;
    }
    std::size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("config: expected key = value, got: " + t);
    std::string key = trim(t.substr(0, eq));
    std::string val = trim(t.substr(eq + 1));
    kv[section.empty() ? key : section + "." + key] = val;
  }
  return kv;
}

std::map<std::string, std::string> load_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("load_config: cannot open " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return parse_config_text(ss.str());
}

BundleWriter::BundleWriter(const std::string& dir) : dir_(dir), tmp_(dir + ".tmp") {
  std::filesystem::remove_all(tmp_);
  std::filesystem::create_directories(tmp_);
}

BundleWriter::~BundleWriter() {
  if (!committed_) std::filesystem::remove_all(tmp_);
}

std::string BundleWriter::path(const std::string& name) const {
  return tmp_ + "/" + name;
}

void BundleWriter::add_text(const std::string& name, const std::string& content) {
  std::ofstream os(tmp_ + "/" + name, std::ios::binary);
  if (!os) throw std::runtime_error("BundleWriter: cannot open " + name);
  os << content;
}

void BundleWriter::commit() {
  std::filesystem::remove_all(dir_);
  std::filesystem::rename(tmp_, dir_);
  committed_ = true;
}

}  // namespace nnlab
