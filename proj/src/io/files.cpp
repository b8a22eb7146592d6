#include "osd/errors.h"
#include "osd/io.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>

namespace osd {

namespace {

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

std::string rows_to_csv(const std::vector<ConvergenceRow>& rows) {
  std::string out = std::string(kCsvHeader) + "\n";
  for (const ConvergenceRow& r : rows) {
    out += std::to_string(r.n) + "," + num(r.modular_error) + "," + num(r.luxemburg_error) + "," +
           num(r.sup_gradk_un) + "," + std::to_string(r.num_squares) + "," +
           std::to_string(r.num_pieces) + "," + std::to_string(r.max_chain_len) + "\n";
  }
  return out;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write '" + tmp.string() + "'");
    out << content;
    out.flush();
    if (!out) throw InputError("write to '" + tmp.string() + "' failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw InputError("cannot move output into place at '" + path.string() + "'");
  }
}

}  // namespace osd
