#include "systole/table.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"

#include "systole/error.hpp"

namespace systole {

TableFormat parse_table_format(const std::string& name) {
  if (name == "csv") return TableFormat::csv;
  if (name == "text") return TableFormat::text;
  if (name == "json") return TableFormat::json;
  throw Error(Errc::parse, "unknown table format '" + name + "'");
}

std::string round_half_even(double value, int decimals) {
  if (!std::isfinite(value)) return value > 0 ? "inf" : (value < 0 ? "-inf" : "nan");
  const double scale = std::pow(10.0, decimals);
  const double x = value * scale;
  const double fl = std::floor(x);
  const double frac = x - fl;
  double r;
  if (std::abs(frac - 0.5) < 1e-9 * std::max(1.0, std::abs(x)))
    r = std::fmod(fl, 2.0) == 0.0 ? fl : fl + 1.0;
  else
    r = std::round(x);
  if (r == 0.0) r = 0.0;  // no "-0.00"
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, r / scale);
  return buf;
}

namespace {

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

struct Cells {
  std::string genus, construction, systole, ratio, upper, provenance;
};

Cells cells_of(const BoundRecord& r) {
  Cells c;
  c.genus = std::to_string(r.genus());
  c.construction = r.name;
  c.systole = round_half_even(r.systole_value);
  c.ratio = round_half_even(r.ratio());
  c.upper = round_half_even(compact_upper_bound(r.genus()));
  c.provenance = r.provenance();
  return c;
}

}  // namespace

std::string format_table(const std::vector<BoundRecord>& rows, TableFormat format) {
  static const std::array<std::string, 6> header = {"genus", "construction", "systole",
                                                    "ratio", "upper_bound",  "provenance"};
  std::vector<Cells> cells;
  for (const BoundRecord& r : rows) cells.push_back(cells_of(r));
  std::ostringstream os;
  switch (format) {
    case TableFormat::csv:
      for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
      os << '\n';
      for (const Cells& c : cells)
        os << c.genus << ',' << csv_cell(c.construction) << ',' << c.systole << ',' << c.ratio << ','
           << c.upper << ',' << csv_cell(c.provenance) << '\n';
      break;
    case TableFormat::text: {
      std::array<std::size_t, 6> w{};
      for (std::size_t i = 0; i < 6; ++i) w[i] = header[i].size();
      for (const Cells& c : cells) {
        const std::array<const std::string*, 6> f = {&c.genus, &c.construction, &c.systole,
                                                     &c.ratio, &c.upper,        &c.provenance};
        for (std::size_t i = 0; i < 6; ++i) w[i] = std::max(w[i], f[i]->size());
      }
      auto line = [&](const std::array<const std::string*, 6>& f) {
        std::string out;
        for (std::size_t i = 0; i < 6; ++i) {
          // numbers right-aligned, text left-aligned
          const bool right = i == 0 || (i >= 2 && i <= 4);
          const std::string pad(w[i] - f[i]->size(), ' ');
          if (i) out += "  ";
          out += right ? pad + *f[i] : (i == 5 ? *f[i] : *f[i] + pad);
        }
        os << out << '\n';
      };
      line({&header[0], &header[1], &header[2], &header[3], &header[4], &header[5]});
      for (const Cells& c : cells) line({&c.genus, &c.construction, &c.systole, &c.ratio, &c.upper, &c.provenance});
      break;
    }
    case TableFormat::json: {
      nlohmann::ordered_json arr = nlohmann::ordered_json::array();
      for (std::size_t i = 0; i < rows.size(); ++i) {
        const BoundRecord& r = rows[i];
        nlohmann::ordered_json j;
        j["genus"] = r.genus();
        j["construction"] = r.name;
        j["systole"] = cells[i].systole;
        j["ratio"] = cells[i].ratio;
        j["upper_bound"] = cells[i].upper;
        j["provenance"] = cells[i].provenance;
        j["systole_value"] = r.systole_value;
        j["strict"] = r.strict;
        j["rule"] = rule_id(r.rule);
        j["depth"] = r.depth();
        arr.push_back(std::move(j));
      }
      os << arr.dump(2) << '\n';
      break;
    }
  }
  return os.str();
}

}  // namespace systole
