#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "qsc/harness.hpp"

namespace qsc::harness {

namespace {

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

double parse_double(const std::string& field, std::size_t line_no) {
  double value = 0.0;
  const char* begin = field.data();
  const char* end = begin + field.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end) {
    throw IoError("csv: line " + std::to_string(line_no) +
                  ": cannot parse number \"" + field + "\"");
  }
  return value;
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string current;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(current);
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  fields.push_back(current);
  return fields;
}

}  // namespace

std::string to_csv(const std::vector<quant::QuantifierSample>& samples) {
  std::string out = kCsvHeader;
  out.push_back('\n');
  for (const auto& s : samples) {
    out += format_double(s.t);
    out.push_back(',');
    out += format_double(s.z.real());
    out.push_back(',');
    out += format_double(s.z.imag());
    out.push_back(',');
    out += format_double(s.c_direct);
    out.push_back(',');
    out += format_double(s.c_fidelity_branch);
    out.push_back(',');
    out += format_double(s.fidelity);
    out.push_back(',');
    out += format_double(s.bures);
    out.push_back(',');
    out += format_double(s.concurrence_trace);
    out.push_back(',');
    out += format_double(s.concurrence_spinflip);
    out.push_back(',');
    out += format_double(s.signed_trace_cos);
    out.push_back(',');
    out += s.branch_valid ? '1' : '0';
    out.push_back('\n');
  }
  return out;
}

std::vector<quant::QuantifierSample> parse_csv(const std::string& text) {
  std::istringstream stream(text);
  std::string line;
  if (!std::getline(stream, line)) {
    throw IoError("csv: empty input, header line missing");
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCsvHeader) {
    throw IoError("csv: unexpected header \"" + line + "\"");
  }

  std::vector<quant::QuantifierSample> samples;
  std::size_t line_no = 1;
  while (std::getline(stream, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<std::string> fields = split_fields(line);
    if (fields.size() != 11) {
      throw IoError("csv: line " + std::to_string(line_no) + " has " +
                    std::to_string(fields.size()) + " fields, expected 11");
    }
    quant::QuantifierSample s;
    s.t = parse_double(fields[0], line_no);
    s.z = linalg::Complex(parse_double(fields[1], line_no),
                          parse_double(fields[2], line_no));
    s.c_direct = parse_double(fields[3], line_no);
    s.c_fidelity_branch = parse_double(fields[4], line_no);
    s.fidelity = parse_double(fields[5], line_no);
    s.bures = parse_double(fields[6], line_no);
    s.concurrence_trace = parse_double(fields[7], line_no);
    s.concurrence_spinflip = parse_double(fields[8], line_no);
    s.signed_trace_cos = parse_double(fields[9], line_no);
    if (fields[10] != "0" && fields[10] != "1") {
      throw IoError("csv: line " + std::to_string(line_no) +
                    ": branch_valid must be 0 or 1, got \"" + fields[10] +
                    "\"");
    }
    s.branch_valid = fields[10] == "1";
    samples.push_back(s);
  }
  return samples;
}

void write_csv(const std::filesystem::path& path,
               const std::vector<quant::QuantifierSample>& samples) {
  std::ofstream file(path, std::ios::binary);
  if (!file) {
    throw IoError("cannot open " + path.string() + " for writing");
  }
  const std::string text = to_csv(samples);
  file.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!file) {
    throw IoError("write failed for " + path.string());
  }
}

std::vector<quant::QuantifierSample> read_csv(const std::filesystem::path& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) {
    throw IoError("cannot open " + path.string() + " for reading");
  }
  std::ostringstream buffer;
  buffer << file.rdbuf();
  if (file.bad()) {
    throw IoError("read failed for " + path.string());
  }
  try {
    return parse_csv(buffer.str());
  } catch (const IoError& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

void write_gnuplot_script(const std::filesystem::path& script_path,
                          const std::filesystem::path& csv_path) {
  std::ofstream file(script_path, std::ios::binary);
  if (!file) {
    throw IoError("cannot open " + script_path.string() + " for writing");
  }
  file << "set datafile separator ','\n"
       << "set key autotitle columnhead\n"
       << "set xlabel 't'\n"
       << "set grid\n"
       << "plot '" << csv_path.string() << "' using 1:4 with lines, \\\n"
       << "     '' using 1:5 with lines, \\\n"
       << "     '' using 1:6 with lines, \\\n"
       << "     '' using 1:7 with lines, \\\n"
       << "     '' using 1:8 with lines\n";
  if (!file) {
    throw IoError("write failed for " + script_path.string());
  }
}

}  // namespace qsc::harness
