#include "apxbsp/spectrum_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace apxbsp {

namespace {

int line_of_offset(const std::string& text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + offset, '\n'));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError(path, 0, "cannot open file");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

double parse_number(const std::string& field, const std::string& source, int line) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(field, &used);
  } catch (const std::exception&) {
    throw LoadError(source, line, "malformed number '" + field + "'");
  }
  while (used < field.size() && std::isspace(static_cast<unsigned char>(field[used]))) ++used;
  if (used != field.size()) throw LoadError(source, line, "malformed number '" + field + "'");
  return v;
}

std::string trim(std::string s) {
  auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

}  // namespace

LoadError::LoadError(const std::string& source, int line, const std::string& what)
    : std::runtime_error(source + (line > 0 ? ":" + std::to_string(line) : std::string{}) + ": " +
                         what),
      line_(line) {}

Spectrum parse_spectrum_json(const std::string& text, const std::string& source) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw LoadError(source, line_of_offset(text, e.byte == 0 ? 0 : e.byte - 1), e.what());
  }
  try {
    if (!doc.is_object()) throw LoadError(source, 1, "top level must be an object");
    const double p = doc.at("p").get<double>();
    std::vector<SpectrumEntry> entries;
    for (const auto& item : doc.at("entries")) {
      SpectrumEntry e;
      e.k = item.at("k").get<int>();
      e.lambda = item.at("lambda").get<double>();
      e.coeff = {item.value("re", 0.0), item.value("im", 0.0)};
      entries.push_back(e);
    }
    Spectrum s(std::move(entries), p);
    auto report = validate_spectrum(s);
    if (!report.empty()) throw InvalidSpectrum(std::move(report));
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw LoadError(source, 0, e.what());
  }
}

Spectrum parse_spectrum_csv(const std::string& text, double p, const std::string& source) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  bool header_seen = false;
  std::vector<SpectrumEntry> entries;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    std::vector<std::string> fields;
    std::stringstream ls(line);
    std::string field;
    while (std::getline(ls, field, ',')) fields.push_back(trim(field));
    if (!header_seen) {
      if (fields != std::vector<std::string>{"k", "lambda", "re", "im"})
        throw LoadError(source, line_no, "expected header k,lambda,re,im");
      header_seen = true;
      continue;
    }
    if (fields.size() != 4) throw LoadError(source, line_no, "expected 4 fields");
    const double k = parse_number(fields[0], source, line_no);
    if (k != static_cast<int>(k)) throw LoadError(source, line_no, "index must be an integer");
    entries.push_back({static_cast<int>(k), parse_number(fields[1], source, line_no),
                       {parse_number(fields[2], source, line_no),
                        parse_number(fields[3], source, line_no)}});
  }
  if (!header_seen) throw LoadError(source, line_no, "missing header");
  Spectrum s(std::move(entries), p);
  require_valid(s);
  return s;
}

Spectrum load_spectrum(const std::string& path, double csv_p) {
  const std::string text = read_file(path);
  if (path.size() >= 4 && path.substr(path.size() - 4) == ".csv")
    return parse_spectrum_csv(text, csv_p, path);
  return parse_spectrum_json(text, path);
}

std::string spectrum_to_json(const Spectrum& s, int indent) {
  nlohmann::json doc;
  doc["p"] = s.p();
  doc["entries"] = nlohmann::json::array();
  for (const auto& e : s.entries())
    doc["entries"].push_back(
        {{"k", e.k}, {"lambda", e.lambda}, {"re", e.coeff.real()}, {"im", e.coeff.imag()}});
  return doc.dump(indent);
}

std::string spectrum_to_csv(const Spectrum& s) {
  std::ostringstream os;
  os.precision(17);
  os << "k,lambda,re,im\n";
  for (const auto& e : s.entries())
    os << e.k << ',' << e.lambda << ',' << e.coeff.real() << ',' << e.coeff.imag() << '\n';
  return os.str();
}

}  // namespace apxbsp
