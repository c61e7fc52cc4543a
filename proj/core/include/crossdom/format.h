#ifndef CROSSDOM_FORMAT_H_
#define CROSSDOM_FORMAT_H_

#include <string>
#include <vector>

namespace crossdom {

// Fixed-point rendering that never prints "-0.0".
std::string FormatFixed(double value, int decimals);

// Rate in [0, 1] as a percentage: 0.14627 -> "14.6%".
std::string FormatPercent(double rate, int decimals = 1);

// Degradation cell: FormatScoreWithRate(57.2, 0.14627) -> "57.2 (14.6%)".
std::string FormatScoreWithRate(double score, double rate, int decimals = 1);

// Divergence cell: "0.39 (0.29)". Non-zero values that would round to zero
// are shown with one significant digit, e.g. "1e-3".
std::string FormatDivergence(double value, int decimals = 2);
std::string FormatJsOov(double js, double oov, int decimals = 2);

// GitHub-flavoured markdown table; the first column is left-aligned and the
// rest centered.
std::string RenderMarkdownTable(const std::vector<std::string>& header,
                                const std::vector<std::vector<std::string>>& rows);

}  // namespace crossdom

#endif  // CROSSDOM_FORMAT_H_
