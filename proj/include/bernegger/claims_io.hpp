#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

namespace bernegger {

struct ClaimRecord {
  double total_loss = 0.0;  // ground-up loss before the deductible
  double deductible = 0.0;
  double cover = 0.0;
};

/// z = min(max(Y - d, 0), M) / M; exactly 1 when Y - d >= M.
/// Throws DataError unless d > 0, M > 0 and the loss is finite and >= 0.
double transform_claim(const ClaimRecord& record);

enum class Schema { z, raw };

Schema parse_schema(std::string_view text);

struct NormalizedSample {
  std::vector<double> z_values;  // each in (0,1]
  std::size_t dropped_zero = 0;
};

/// CSV with a header row: column `z` for Schema::z, columns
/// `loss,deductible,cover` for Schema::raw. Zero values are dropped and
/// counted. Throws ParseError (with line number) on malformed rows and
/// DataError on an empty file or a stored z outside [0,1]; values are taken literally.
NormalizedSample read_claims(std::istream& in, Schema schema);
NormalizedSample load_claims(const std::filesystem::path& path, Schema schema);

/// `z` header followed by one shortest round-trip value per line.
void write_z_csv(std::ostream& out, std::span<const double> z);
void write_z_csv(const std::filesystem::path& path, std::span<const double> z);

}  // namespace bernegger
