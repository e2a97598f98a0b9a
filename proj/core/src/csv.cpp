#include "jitnet/csv.hpp"

#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace jitnet {

namespace {

// Fixed-precision doubles so reruns are byte-identical.
std::string format_double(double value) {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(3);
  out << value;
  return out.str();
}

}  // namespace

void write_trace_csv(std::ostream& out, std::span<const ExchangeTrace> traces) {
  out << "frame,pair,t0,t1,t2,t3,t4,t5,t6,t7,t8,t9,t10,"
         "d_c,w_c,t_phy_c,d_s,w_s,t_phy_s,rtt\n";
  for (const ExchangeTrace& tr : traces) {
    out << tr.frame << ',' << tr.pair;
    for (Tick ts : tr.t) out << ',' << ts;
    out << ',' << tr.d_c << ',' << tr.w_c << ',' << tr.t_phy_c << ',' << tr.d_s << ','
        << tr.w_s << ',' << tr.t_phy_s << ',' << tr.rtt << '\n';
  }
}

void write_occupancy_csv(std::ostream& out, std::span<const OccupancyRow> rows) {
  out << "frame,slot,occupancy,underflow_flag\n";
  for (const OccupancyRow& row : rows) {
    out << row.frame << ',' << row.slot << ',' << row.occupancy << ','
        << (row.underflow ? 1 : 0) << '\n';
  }
}

void write_controller_csv(std::ostream& out, std::span<const ControllerSample> samples) {
  out << "packet,frame,pull_local,pull_reference,offset,d_c,slack,correction,missed\n";
  for (const ControllerSample& s : samples) {
    out << s.packet << ',' << s.frame << ',' << s.pull_local << ',' << s.pull_reference << ','
        << s.offset << ',' << s.d_c << ',' << s.slack << ',' << s.correction << ','
        << (s.missed ? 1 : 0) << '\n';
  }
}

void write_allocation_csv(std::ostream& out, std::span<const SlotPair> pairs,
                          std::span<const int> offsets, int num_slots) {
  out << "pair_id,client_slot,server_slot,beta,distance\n";
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const int offset = offsets.empty() ? 0 : offsets[i];
    out << i << ',' << pairs[i].client << ',' << pairs[i].server << ',' << offset << ','
        << ring_distance(pairs[i].client, pairs[i].server, num_slots) << '\n';
  }
}

void write_figure_csv(std::ostream& out, std::span<const FigureRow> rows) {
  out << "x,series_label,y\n";
  for (const FigureRow& row : rows) {
    out << format_double(row.x) << ',' << row.series << ',' << format_double(row.y) << '\n';
  }
}

void write_wait_csv(std::ostream& out, std::span<const CsmaWait> waits,
                    std::string_view mode_label) {
  out << "packet_index,mode,wait_ns\n";
  for (const CsmaWait& w : waits) {
    out << w.packet << ',' << mode_label << ',' << w.wait << '\n';
  }
}

std::size_t CsvTable::column(std::string_view name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw std::invalid_argument("csv: no column named '" + std::string(name) + "'");
}

CsvTable read_csv(std::istream& in) {
  CsvTable table;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::size_t begin = 0;
    for (;;) {
      const std::size_t comma = line.find(',', begin);
      if (comma == std::string::npos) {
        fields.push_back(line.substr(begin));
        break;
      }
      fields.push_back(line.substr(begin, comma - begin));
      begin = comma + 1;
    }
    if (first) {
      table.header = std::move(fields);
      first = false;
    } else {
      table.rows.push_back(std::move(fields));
    }
  }
  return table;
}

CsvTable load_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_csv(in);
}

void save_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot create " + path.string());
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  out.flush();
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace jitnet
