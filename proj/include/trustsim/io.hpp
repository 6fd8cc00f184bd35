#pragma once

// Serialization of run, batch, sweep and fit results. Every renderer is a
// pure function of its inputs: the same results and metadata always produce
// the same bytes. Doubles use the shortest representation that round-trips
// and never depend on the global locale.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "trustsim/engine.hpp"
#include "trustsim/experiments.hpp"
#include "trustsim/stats.hpp"

namespace trustsim {

enum class OutputFormat { kCsv, kJson };

/// Ordered key/value pairs describing how a result was produced. CSV output
/// carries them as leading "# key=value" lines, JSON as a "metadata" object.
using Metadata = std::vector<std::pair<std::string, std::string>>;

std::string format_double(double x);

std::string render_trajectory(const RunResult& result, const Metadata& meta, OutputFormat format);
std::string render_batch(const BatchResult& batch, const Metadata& meta, OutputFormat format);
std::string render_n_sweep(std::span<const NSweepRow> rows, const Metadata& meta,
                           OutputFormat format);
/// For JSON the per-row distributions are embedded; CSV carries them separately.
std::string render_phi_sweep(std::span<const PhiSweepRow> rows, const Metadata& meta,
                             OutputFormat format);
/// Columns phi,final_avg_trust; one row per non-converged run.
std::string render_phi_distributions_csv(std::span<const PhiSweepRow> rows, const Metadata& meta);
/// Column final_avg_trust; one row per non-converged run.
std::string render_batch_distributions_csv(const BatchResult& batch, const Metadata& meta);
std::string render_fit(const FitResult& fit, const Metadata& meta, OutputFormat format);

struct XYData {
  std::vector<Point> points;
  std::size_t skipped_rows = 0;  ///< rows with an empty x or y field
};

/**
 * Reads two numeric columns of a CSV table.
 *
 * Lines starting with '#' and blank lines are ignored; the first remaining
 * line is the header. Empty column names select the first and second column.
 * Throws IoError on a missing column or a malformed number.
 */
XYData read_xy_csv(std::istream& in, const std::string& x_column = {},
                   const std::string& y_column = {});

/// Throws IoError when the file cannot be written.
void write_file(const std::filesystem::path& path, const std::string& contents);

/// "results.csv" -> "results.dist.csv".
std::filesystem::path distributions_path(const std::filesystem::path& out);

}  // namespace trustsim
