#include "tnorder/config_text.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include "tnorder/errors.hpp"

namespace tnorder {

namespace {

std::string where(std::size_t line) { return "line " + std::to_string(line) + ": "; }

double parse_number(const std::string& token, std::size_t line) {
  if (token == "-inf") return -kInf;
  if (token == "+inf" || token == "inf") return kInf;
  try {
    std::size_t used = 0;
    const double v = std::stod(token, &used);
    if (used != token.size()) throw std::invalid_argument(token);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(where(line) + "not a number: '" + token + "'");
  }
}

std::size_t parse_label(const std::string& token, std::size_t line) {
  const double v = parse_number(token, line);
  if (v < 0 || v != static_cast<double>(static_cast<std::size_t>(v)))
    throw ConfigError(where(line) + "label must be a non-negative integer");
  return static_cast<std::size_t>(v);
}

std::vector<std::string> tokens_of(std::string text) {
  if (auto hash = text.find('#'); hash != std::string::npos) text.resize(hash);
  std::istringstream ss(text);
  std::vector<std::string> out;
  for (std::string tok; ss >> tok;) out.push_back(tok);
  return out;
}

std::ifstream open(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  return in;
}

struct Window {
  double start, end, amplitude, omega, phase;
};

// amplitude * cos(omega t + phase) on (start, end), zero elsewhere.
PiecewiseHarmonic windowed_cosine(const Window& w) {
  const auto inside = PiecewiseHarmonic::cosine(w.amplitude, w.omega, w.phase);
  std::vector<HarmonicTerm> terms(inside.terms(0).begin(), inside.terms(0).end());
  return PiecewiseHarmonic({w.start, w.end}, {{}, terms, {}});
}

}  // namespace

FrequencySchedule parse_schedule(std::istream& in) {
  std::vector<Segment> segments;
  std::size_t line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    const auto tok = tokens_of(line);
    if (tok.empty()) continue;
    if (tok.size() != 3) throw ConfigError(where(line_no) + "expected 'start end omega'");
    segments.push_back({parse_number(tok[0], line_no), parse_number(tok[1], line_no),
                        parse_number(tok[2], line_no)});
  }
  return FrequencySchedule(std::move(segments));
}

FrequencySchedule load_schedule(const std::string& path) {
  auto in = open(path);
  return parse_schedule(in);
}

FieldConfig parse_field_config(std::istream& in) {
  double hbar = 1.0;
  std::vector<Mode> modes;
  std::vector<std::pair<std::size_t, Window>> windows;
  std::vector<Impulse> impulses;
  std::size_t line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    const auto tok = tokens_of(line);
    if (tok.empty()) continue;
    const std::string& kind = tok[0];
    if (kind == "hbar") {
      if (tok.size() != 2) throw ConfigError(where(line_no) + "expected 'hbar <value>'");
      hbar = parse_number(tok[1], line_no);
    } else if (kind == "mode") {
      if (tok.size() < 4 || tok.size() % 2 != 0)
        throw ConfigError(where(line_no) + "expected 'mode omega re im [re im ...]'");
      Mode m{parse_number(tok[1], line_no), {}};
      for (std::size_t i = 2; i < tok.size(); i += 2)
        m.amplitudes.emplace_back(parse_number(tok[i], line_no), parse_number(tok[i + 1], line_no));
      modes.push_back(std::move(m));
    } else if (kind == "current") {
      if (tok.size() != 7)
        throw ConfigError(where(line_no) + "expected 'current label start end amplitude omega phase'");
      Window w{parse_number(tok[2], line_no), parse_number(tok[3], line_no),
               parse_number(tok[4], line_no), parse_number(tok[5], line_no),
               parse_number(tok[6], line_no)};
      if (!std::isfinite(w.start) || !std::isfinite(w.end) || !(w.start < w.end))
        throw ConfigError(where(line_no) + "current window must be finite and ordered");
      windows.emplace_back(parse_label(tok[1], line_no), w);
    } else if (kind == "impulse") {
      if (tok.size() != 4) throw ConfigError(where(line_no) + "expected 'impulse label time weight'");
      impulses.push_back({parse_label(tok[1], line_no), parse_number(tok[2], line_no),
                          parse_number(tok[3], line_no)});
    } else {
      throw ConfigError(where(line_no) + "unknown record '" + kind + "'");
    }
  }
  ModeSet ms(std::move(modes), hbar);
  std::vector<PiecewiseHarmonic> densities(ms.label_count());
  for (const auto& [label, w] : windows) {
    if (label >= densities.size()) throw ConfigError("current label exceeds the mode labels");
    densities[label] += windowed_cosine(w);
  }
  for (const auto& imp : impulses)
    if (imp.label >= densities.size()) throw ConfigError("impulse label exceeds the mode labels");
  return {std::move(ms), ClassicalCurrent(std::move(densities), std::move(impulses))};
}

FieldConfig load_field_config(const std::string& path) {
  auto in = open(path);
  return parse_field_config(in);
}

}  // namespace tnorder
