#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "jitnet/allocator.hpp"
#include "jitnet/analyzer.hpp"
#include "jitnet/csma.hpp"
#include "jitnet/tdma.hpp"

namespace jitnet {

// All values are written as integer nanoseconds (figure y values as plain
// numbers); no quoting is ever needed.

void write_trace_csv(std::ostream& out, std::span<const ExchangeTrace> traces);
void write_occupancy_csv(std::ostream& out, std::span<const OccupancyRow> rows);
void write_controller_csv(std::ostream& out, std::span<const ControllerSample> samples);
void write_allocation_csv(std::ostream& out, std::span<const SlotPair> pairs,
                          std::span<const int> offsets, int num_slots);
void write_figure_csv(std::ostream& out, std::span<const FigureRow> rows);
void write_wait_csv(std::ostream& out, std::span<const CsmaWait> waits,
                    std::string_view mode_label);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  // Column index by header name; throws when absent.
  std::size_t column(std::string_view name) const;
};

CsvTable read_csv(std::istream& in);
CsvTable load_csv(const std::filesystem::path& path);

// Opens, writes, and flushes; throws std::runtime_error on I/O failure.
void save_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace jitnet
