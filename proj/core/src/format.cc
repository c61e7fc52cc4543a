#include "crossdom/format.h"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace crossdom {

std::string FormatFixed(double value, int decimals) {
  if (decimals < 0) throw std::invalid_argument("negative precision");
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, value);
  std::string out(buf);
  if (out.front() == '-' && out.find_first_not_of("-0.") == std::string::npos) {
    out.erase(0, 1);
  }
  return out;
}

std::string FormatPercent(double rate, int decimals) {
  return FormatFixed(100.0 * rate, decimals) + "%";
}

std::string FormatScoreWithRate(double score, double rate, int decimals) {
  return FormatFixed(score, decimals) + " (" + FormatPercent(rate, decimals) +
         ")";
}

std::string FormatDivergence(double value, int decimals) {
  const double threshold = 0.5 * std::pow(10.0, -decimals);
  if (value > 0.0 && value < threshold) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.0e", value);
    // "1e-03" -> "1e-3"
    std::string out(buf);
    const auto e = out.find("e-");
    if (e != std::string::npos) {
      std::size_t digits = e + 2;
      while (digits + 1 < out.size() && out[digits] == '0') out.erase(digits, 1);
    }
    return out;
  }
  return FormatFixed(value, decimals);
}

std::string FormatJsOov(double js, double oov, int decimals) {
  return FormatDivergence(js, decimals) + " (" +
         FormatDivergence(oov, decimals) + ")";
}

std::string RenderMarkdownTable(
    const std::vector<std::string>& header,
    const std::vector<std::vector<std::string>>& rows) {
  auto line = [](const std::vector<std::string>& cells) {
    std::string out = "|";
    for (const std::string& cell : cells) out += " " + cell + " |";
    return out + "\n";
  };
  std::string out = line(header);
  out += "|";
  for (std::size_t i = 0; i < header.size(); ++i) {
    out += i == 0 ? " --- |" : " :---: |";
  }
  out += "\n";
  for (const auto& row : rows) out += line(row);
  return out;
}

}  // namespace crossdom
