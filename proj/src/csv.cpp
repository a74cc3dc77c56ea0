#include "bousslab/harness.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace bousslab {

namespace {

std::string p_suffix(double p) {
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), p);
  return std::string(buf.data(), res.ptr);
}

}  // namespace

std::string format_scientific(double v) {
  std::array<char, 40> buf{};
  const auto res =
      std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::scientific, 12);
  return std::string(buf.data(), res.ptr);
}

std::vector<std::string> csv_columns(const std::vector<double>& p_list) {
  std::vector<std::string> cols{"t", "l2_u", "h1_u", "h2_u", "l2_rho", "h1_rho"};
  for (double p : p_list) cols.push_back("lp_omega_" + p_suffix(p));
  cols.push_back("linf_omega");
  for (double p : p_list) cols.push_back("lp_grad_zeta_" + p_suffix(p));
  for (const char* c : {"energy_residual", "enstrophy_residual", "tail_fraction_rho", "dt_used"})
    cols.emplace_back(c);
  return cols;
}

void write_csv_header(std::ostream& out, const std::vector<double>& p_list) {
  const auto cols = csv_columns(p_list);
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << '\n';
}

void write_csv_row(std::ostream& out, const DiagnosticsRecord& r) {
  std::string line = format_scientific(r.t);
  auto add = [&line](double v) {
    line += ',';
    line += format_scientific(v);
  };
  for (double v : {r.l2_u, r.h1_u, r.h2_u, r.l2_rho, r.h1_rho}) add(v);
  for (double v : r.lp_omega) add(v);
  add(r.linf_omega);
  for (double v : r.lp_grad_zeta) add(v);
  for (double v : {r.energy_residual, r.enstrophy_residual, r.tail_fraction_rho, r.dt_used})
    add(v);
  out << line << '\n';
}

std::size_t CsvTable::column_index(std::string_view name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return i;
  throw UsageError("no column named '" + std::string(name) + "'");
}

std::vector<double> CsvTable::column(std::string_view name) const {
  const std::size_t j = column_index(name);
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& row : rows) out.push_back(row[j]);
  return out;
}

CsvTable read_csv(std::istream& in) {
  CsvTable table;
  std::string line;
  int line_no = 0;
  auto split = [](const std::string& s) {
    std::vector<std::string> cells;
    std::stringstream ss(s);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    return cells;
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (table.header.empty()) {
      table.header = split(line);
      continue;
    }
    const auto cells = split(line);
    if (cells.size() != table.header.size())
      throw std::runtime_error("csv line " + std::to_string(line_no) + ": expected " +
                               std::to_string(table.header.size()) + " cells, got " +
                               std::to_string(cells.size()));
    std::vector<double> row;
    row.reserve(cells.size());
    for (const auto& c : cells) {
      double v = 0.0;
      const auto res = std::from_chars(c.data(), c.data() + c.size(), v);
      if (res.ec != std::errc() || res.ptr != c.data() + c.size())
        throw std::runtime_error("csv line " + std::to_string(line_no) + ": bad number '" + c +
                                 "'");
      row.push_back(v);
    }
    table.rows.push_back(std::move(row));
  }
  if (table.header.empty()) throw std::runtime_error("csv: missing header row");
  return table;
}

CsvTable read_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return read_csv(in);
}

}  // namespace bousslab
