#include "bernegger/claims_io.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "bernegger/errors.hpp"
#include "bernegger/format.hpp"

namespace bernegger {

namespace {


std::vector<std::string_view> split_row(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    cells.push_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return cells;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

bool blank(std::string_view line) { return trim(line).empty(); }

double cell_value(std::string_view cell, std::size_t line_no, std::string_view column) {
  try {
    return parse_double(cell);
  } catch (const DataError&) {
    throw ParseError("column '" + std::string(column) + "': not a number: '" +
                         std::string(trim(cell)) + "'",
                     line_no);
  }
}

}  // namespace

double transform_claim(const ClaimRecord& r) {
  if (!(r.deductible > 0.0) || !std::isfinite(r.deductible))
    throw DataError("claim record: require deductible > 0");
  if (!(r.cover > 0.0) || !std::isfinite(r.cover)) throw DataError("claim record: require cover > 0");
  if (!(r.total_loss >= 0.0) || !std::isfinite(r.total_loss))
    throw DataError("claim record: require a finite loss >= 0");
  const double excess = r.total_loss - r.deductible;
  if (excess >= r.cover) return 1.0;
  if (excess <= 0.0) return 0.0;
  return excess / r.cover;
}

Schema parse_schema(std::string_view text) {
  if (text == "z") return Schema::z;
  if (text == "raw") return Schema::raw;
  throw DomainError("unknown schema '" + std::string(text) + "' (expected z or raw)");
}

NormalizedSample read_claims(std::istream& in, Schema schema) {
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
    if (!blank(line)) {
      have_header = true;
      break;
    }
  }
  if (!have_header) throw DataError("empty input: expected a header row");

  const auto header = split_row(line);
  std::vector<std::string> expected =
      schema == Schema::z ? std::vector<std::string>{"z"}
                          : std::vector<std::string>{"loss", "deductible", "cover"};
  bool header_ok = header.size() == expected.size();
  for (std::size_t i = 0; header_ok && i < expected.size(); ++i)
    header_ok = trim(header[i]) == expected[i];
  if (!header_ok) {
    std::string want;
    for (const auto& e : expected) want += (want.empty() ? "" : ",") + e;
    throw ParseError("expected header '" + want + "'", line_no);
  }

  NormalizedSample out;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line)) continue;
    const auto cells = split_row(line);
    if (cells.size() != expected.size())
      throw ParseError("expected " + std::to_string(expected.size()) + " columns, found " +
                           std::to_string(cells.size()),
                       line_no);
    double z = 0.0;
    if (schema == Schema::z) {
      z = cell_value(cells[0], line_no, "z");
      if (!(z >= 0.0 && z <= 1.0))
        throw DataError("line " + std::to_string(line_no) + ": z = " + format_double(z) +
                        " lies outside [0,1]");
    } else {
      const ClaimRecord record{cell_value(cells[0], line_no, "loss"),
                               cell_value(cells[1], line_no, "deductible"),
                               cell_value(cells[2], line_no, "cover")};
      try {
        z = transform_claim(record);
      } catch (const DataError& e) {
        throw ParseError(e.what(), line_no);
      }
    }
    if (z == 0.0)
      ++out.dropped_zero;
    else
      out.z_values.push_back(z);
  }
  if (out.z_values.empty() && out.dropped_zero == 0) throw DataError("input has no data rows");
  return out;
}

NormalizedSample load_claims(const std::filesystem::path& path, Schema schema) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path.string() + "'");
  return read_claims(in, schema);
}

void write_z_csv(std::ostream& out, std::span<const double> z) {
  out << "z\n";
  for (double v : z) out << format_double(v) << '\n';
}

void write_z_csv(const std::filesystem::path& path, std::span<const double> z) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write '" + path.string() + "'");
  write_z_csv(out, z);
  if (!out) throw DataError("write failed for '" + path.string() + "'");
}

}  // namespace bernegger
