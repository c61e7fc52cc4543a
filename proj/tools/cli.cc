#include "cli.h"

#include <algorithm>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string_view>

#include "CLI11.hpp"
#include "json.hpp"

#include "crossdom/analysis.h"
#include "crossdom/divergence.h"
#include "crossdom/errors.h"
#include "crossdom/features.h"
#include "crossdom/format.h"
#include "crossdom/penman.h"
#include "crossdom/smatch.h"
#include "crossdom/submetrics.h"

namespace crossdom::cli {

namespace {

using Json = nlohmann::ordered_json;

// Bad flag values that CLI11 cannot check on its own.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<std::string> SplitCsv(std::string_view text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    if (comma == std::string_view::npos) comma = text.size();
    std::string_view item = text.substr(start, comma - start);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (!item.empty()) out.emplace_back(item);
    start = comma + 1;
  }
  return out;
}

std::vector<FeatureKind> ParseFeatureList(const std::string& csv,
                                          bool allow_length) {
  std::vector<FeatureKind> kinds;
  for (const std::string& name : SplitCsv(csv)) {
    const auto kind = ParseFeatureKind(name);
    if (!kind) throw UsageError("unknown feature '" + name + "'");
    if (*kind == FeatureKind::kLength && !allow_length) {
      throw UsageError("feature 'length' cannot be correlated");
    }
    if (std::find(kinds.begin(), kinds.end(), *kind) == kinds.end()) {
      kinds.push_back(*kind);
    }
  }
  if (kinds.empty()) throw UsageError("--features names no feature");
  return kinds;
}

std::string Stem(const std::string& path) {
  return std::filesystem::path(path).stem().string();
}

Corpus Load(const std::string& path, bool lenient, std::ostream& err) {
  ReadStats stats;
  Corpus corpus = ReadCorpus(path, {.strict = !lenient}, &stats);
  for (const SkippedEntry& skipped : stats.skipped) {
    err << "warning: " << path << ": skipped entry " << skipped.index;
    if (skipped.id) err << " (" << *skipped.id << ")";
    err << ": " << skipped.message << "\n";
  }
  return corpus;
}

// Flags shared by the commands that extract features.
struct FeatureFlags {
  bool no_lowercase = false;
  bool no_split_punct = false;
  bool pad_ngrams = false;
  bool strip_senses = false;
  bool keep_inverse = false;
  std::string log_base = "e";
  std::string oov = "occurrence";

  void Register(CLI::App& app) {
    app.add_flag("--no-lowercase", no_lowercase, "Keep token case");
    app.add_flag("--no-split-punct", no_split_punct,
                 "Do not split trailing punctuation off ::snt tokens");
    app.add_flag("--pad-ngrams", pad_ngrams,
                 "Pad sentences with <s> and </s> for n-grams");
    app.add_flag("--strip-senses", strip_senses,
                 "Drop sense suffixes from concept features");
    app.add_flag("--keep-inverse", keep_inverse,
                 "Do not normalize inverse roles");
    app.add_option("--log-base", log_base, "Logarithm base for JS")
        ->check(CLI::IsMember({"e", "2"}))
        ->capture_default_str();
    app.add_option("--oov", oov, "OOV weighting")
        ->check(CLI::IsMember({"occurrence", "type"}))
        ->capture_default_str();
  }

  FeatureOptions Features() const {
    FeatureOptions options;
    options.lowercase = !no_lowercase;
    options.split_punctuation = !no_split_punct;
    options.pad_ngrams = pad_ngrams;
    options.keep_senses = !strip_senses;
    options.triples.normalize_inverse = !keep_inverse;
    return options;
  }

  DivergenceOptions Divergence() const {
    DivergenceOptions options;
    options.log_base = log_base == "2" ? LogBase::kTwo : LogBase::kNatural;
    options.oov_weighting =
        oov == "type" ? OovWeighting::kType : OovWeighting::kOccurrence;
    return options;
  }
};

// ---------------------------------------------------------------------------
// score

struct ScoreFlags {
  std::string gold;
  std::string pred;
  bool fine_grained = false;
  int restarts = 4;
  std::uint64_t seed = 0;
  std::string pair_by = "position";
  std::string format = "tsv";
  int precision = -1;
  bool raw = false;
  bool lenient = false;
  std::size_t threads = 0;
  std::string parser;
  std::string domain;
};

int RunScore(const ScoreFlags& flags, std::ostream& out, std::ostream& err) {
  const Corpus gold = Load(flags.gold, flags.lenient, err);
  const Corpus pred = Load(flags.pred, flags.lenient, err);
  CorpusScoreOptions options;
  options.restarts = flags.restarts;
  options.seed = flags.seed;
  options.pair_by = flags.pair_by == "id" ? PairBy::kId : PairBy::kPosition;
  options.threads = flags.threads;

  std::vector<SubMetricKind> kinds = {SubMetricKind::kSmatch};
  if (flags.fine_grained) kinds.assign(kAllSubMetrics.begin(), kAllSubMetrics.end());
  const FineGrainedReport report = FineGrained(pred, gold, kinds, options);

  const double scale = flags.raw ? 1.0 : 100.0;
  const int precision = flags.precision >= 0 ? flags.precision
                                             : (flags.raw ? 4 : 1);
  auto fmt = [&](double v) { return FormatFixed(scale * v, precision); };
  const std::string parser = flags.parser.empty() ? Stem(flags.pred) : flags.parser;

  if (flags.format == "json") {
    Json scores = Json::object();
    for (SubMetricKind kind : kinds) {
      const ScoreReport& r = report.scores.at(kind);
      scores[std::string(SubMetricName(kind))] = {
          {"precision", scale * r.precision},
          {"recall", scale * r.recall},
          {"f1", scale * r.f1},
          {"matched", r.matched},
          {"pred_total", r.pred_total},
          {"gold_total", r.gold_total},
      };
    }
    Json doc = {
        {"schema_version", kJsonSchemaVersion},
        {"command", "score"},
        {"gold", flags.gold},
        {"pred", flags.pred},
        {"pairs", gold.size()},
        {"scale", flags.raw ? "raw" : "percent"},
        {"restarts", flags.restarts},
        {"seed", flags.seed},
        {"scores", scores},
    };
    out << doc.dump(2) << "\n";
  } else if (flags.format == "markdown") {
    std::vector<std::string> header = {"Model"};
    std::vector<std::string> row = {parser};
    for (SubMetricKind kind : kinds) {
      header.emplace_back(SubMetricHeading(kind));
      row.push_back(fmt(report.scores.at(kind).f1));
    }
    out << RenderMarkdownTable(header, {row});
  } else if (flags.format == "scores") {
    ScoreRow row;
    row.parser = parser;
    row.domain = flags.domain.empty() ? Stem(flags.gold) : flags.domain;
    for (SubMetricKind kind : kinds) {
      row.values.emplace(kind, 100.0 * report.scores.at(kind).f1);
    }
    ScoresTable table;
    table.Add(std::move(row));
    out << WriteScoresTsv(table);
  } else {
    out << "metric\tprecision\trecall\tf1\n";
    for (SubMetricKind kind : kinds) {
      const ScoreReport& r = report.scores.at(kind);
      out << SubMetricName(kind) << '\t' << fmt(r.precision) << '\t'
          << fmt(r.recall) << '\t' << fmt(r.f1) << '\n';
    }
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// diverge

struct DivergeFlags {
  std::string source;
  std::string target;
  std::string features = "length,unigram,bigram,trigram,concept,relation,triplet";
  std::string format = "tsv";
  std::string name;
  int precision = 2;
  bool lenient = false;
  FeatureFlags feature_flags;
};

int RunDiverge(const DivergeFlags& flags, std::ostream& out, std::ostream& err) {
  const std::vector<FeatureKind> kinds = ParseFeatureList(flags.features, true);
  const Corpus source = Load(flags.source, flags.lenient, err);
  const Corpus target = Load(flags.target, flags.lenient, err);
  const auto rows =
      DivergenceTable(source, target, kinds, flags.feature_flags.Features(),
                      flags.feature_flags.Divergence());
  auto fmt = [&](const std::optional<double>& v) {
    return v ? FormatDivergence(*v, flags.precision) : std::string("-");
  };

  if (flags.format == "json") {
    Json features = Json::array();
    for (const DivergenceRow& row : rows) {
      Json item = {{"feature", FeatureKindName(row.kind)}};
      if (row.kind == FeatureKind::kLength) {
        item["avg_length"] = *row.avg_length;
      } else {
        item["js"] = row.js ? Json(*row.js) : Json(nullptr);
        item["oov"] = row.oov ? Json(*row.oov) : Json(nullptr);
      }
      features.push_back(std::move(item));
    }
    Json doc = {
        {"schema_version", kJsonSchemaVersion},
        {"command", "diverge"},
        {"source", flags.source},
        {"target", flags.target},
        {"log_base", flags.feature_flags.log_base},
        {"oov_weighting", flags.feature_flags.oov},
        {"features", features},
    };
    out << doc.dump(2) << "\n";
  } else if (flags.format == "markdown") {
    std::vector<std::string> header = {"Test set"};
    std::vector<std::string> cells = {flags.name.empty() ? Stem(flags.target)
                                                         : flags.name};
    for (const DivergenceRow& row : rows) {
      header.emplace_back(FeatureKindHeading(row.kind));
      if (row.kind == FeatureKind::kLength) {
        cells.push_back(FormatFixed(*row.avg_length, flags.precision));
      } else if (row.js && row.oov) {
        cells.push_back(FormatJsOov(*row.js, *row.oov, flags.precision));
      } else {
        cells.push_back(fmt(row.js) + " (" + fmt(row.oov) + ")");
      }
    }
    out << RenderMarkdownTable(header, {cells});
  } else {
    out << "feature\tjs\toov\n";
    for (const DivergenceRow& row : rows) {
      if (row.kind == FeatureKind::kLength) {
        out << "length\t" << FormatFixed(*row.avg_length, flags.precision)
            << "\t-\n";
      } else {
        out << FeatureKindName(row.kind) << '\t' << fmt(row.js) << '\t'
            << fmt(row.oov) << '\n';
      }
    }
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// correlate

struct CorrelateFlags {
  std::string gold;
  std::vector<std::string> preds;
  std::string source;
  std::string id_scores;
  std::string id_domain;
  std::size_t bootstrap = 100;
  std::size_t sample_size = 2000;
  std::uint64_t seed = 0;
  bool with_replacement = false;
  bool skip_constant = false;
  std::string features = "unigram,bigram,trigram,concept,relation,triplet";
  int restarts = 4;
  std::string pair_by = "position";
  std::string format = "tsv";
  int precision = 2;
  bool lenient = false;
  std::size_t threads = 0;
  FeatureFlags feature_flags;
};

std::string ResolveIdDomain(const ScoresTable& table, const std::string& flag) {
  const std::vector<std::string> domains = table.Domains();
  if (domains.empty()) throw DataError("scores file has no rows");
  if (flag.empty()) return domains.front();
  if (std::find(domains.begin(), domains.end(), flag) == domains.end()) {
    throw DataError("in-domain '" + flag + "' does not occur in the scores");
  }
  return flag;
}

int RunCorrelate(const CorrelateFlags& flags, std::ostream& out,
                 std::ostream& err) {
  CorrelationOptions options;
  options.kinds = ParseFeatureList(flags.features, false);
  options.bootstrap = {flags.bootstrap, flags.sample_size, flags.seed,
                       flags.with_replacement};
  options.scoring.restarts = flags.restarts;
  options.scoring.seed = flags.seed;
  options.scoring.pair_by =
      flags.pair_by == "id" ? PairBy::kId : PairBy::kPosition;
  options.scoring.threads = flags.threads;
  options.features = flags.feature_flags.Features();
  options.divergence = flags.feature_flags.Divergence();
  options.skip_constant = flags.skip_constant;

  std::map<std::string, std::string> pred_paths;
  for (const std::string& spec : flags.preds) {
    const std::size_t eq = spec.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == spec.size()) {
      throw UsageError("--pred expects PARSER=PATH, got '" + spec + "'");
    }
    if (!pred_paths.emplace(spec.substr(0, eq), spec.substr(eq + 1)).second) {
      throw UsageError("parser '" + spec.substr(0, eq) + "' given twice");
    }
  }

  const ScoresTable scores = ReadScoresTsv(flags.id_scores);
  const std::string id_domain = ResolveIdDomain(scores, flags.id_domain);
  std::map<std::string, double> id_scores;
  for (const auto& [parser, path] : pred_paths) {
    const auto value = scores.Value(parser, id_domain, SubMetricKind::kSmatch);
    if (!value) {
      throw DataError("no in-domain score for parser '" + parser +
                      "' in domain '" + id_domain + "'");
    }
    id_scores.emplace(parser, *value);
  }

  const Corpus gold = Load(flags.gold, flags.lenient, err);
  const Corpus source = Load(flags.source, flags.lenient, err);
  std::map<std::string, Corpus> predictions;
  for (const auto& [parser, path] : pred_paths) {
    predictions.emplace(parser, Load(path, flags.lenient, err));
  }
  if (!flags.with_replacement && flags.sample_size > gold.size()) {
    throw DataError("--sample-size " + std::to_string(flags.sample_size) +
                    " exceeds the " + std::to_string(gold.size()) +
                    " gold entries; lower it or pass --with-replacement");
  }

  const auto rows =
      FeatureCorrelation(gold, predictions, id_scores, source, options);
  auto fmt = [&](const std::optional<double>& r) {
    return r ? FormatFixed(*r, flags.precision) : std::string("-");
  };

  if (flags.format == "json") {
    Json items = Json::array();
    for (const CorrelationRow& row : rows) {
      items.push_back({{"parser", row.parser},
                       {"feature", FeatureKindName(row.kind)},
                       {"measure", DivergenceMeasureName(row.measure)},
                       {"r", row.r ? Json(*row.r) : Json(nullptr)}});
    }
    Json doc = {
        {"schema_version", kJsonSchemaVersion},
        {"command", "correlate"},
        {"id_domain", id_domain},
        {"bootstrap",
         {{"resamples", flags.bootstrap},
          {"sample_size", flags.sample_size},
          {"seed", flags.seed},
          {"with_replacement", flags.with_replacement}}},
        {"restarts", flags.restarts},
        {"rows", items},
    };
    out << doc.dump(2) << "\n";
  } else if (flags.format == "markdown") {
    for (DivergenceMeasure measure :
         {DivergenceMeasure::kOov, DivergenceMeasure::kJs}) {
      if (measure == DivergenceMeasure::kJs) out << "\n";
      out << (measure == DivergenceMeasure::kJs ? "JS divergence"
                                                 : "OOV rate")
          << "\n\n";
      std::vector<std::string> header = {"Model"};
      for (FeatureKind kind : options.kinds) {
        header.emplace_back(FeatureKindHeading(kind));
      }
      std::vector<std::vector<std::string>> table;
      for (const auto& [parser, path] : pred_paths) {
        std::vector<std::string> cells = {parser};
        for (FeatureKind kind : options.kinds) {
          for (const CorrelationRow& row : rows) {
            if (row.parser == parser && row.kind == kind &&
                row.measure == measure) {
              cells.push_back(fmt(row.r));
            }
          }
        }
        table.push_back(std::move(cells));
      }
      out << RenderMarkdownTable(header, table);
    }
  } else {
    out << "parser\tfeature\tmeasure\tr\n";
    for (const CorrelationRow& row : rows) {
      out << row.parser << '\t' << FeatureKindName(row.kind) << '\t'
          << DivergenceMeasureName(row.measure) << '\t' << fmt(row.r) << '\n';
    }
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// report

struct ReportFlags {
  std::vector<std::string> scores;
  std::string id_scores;
  std::string id_domain;
  std::string format = "markdown";
  int precision = 1;
};

struct Degradation {
  std::optional<double> score;
  std::optional<double> rate;
};

int RunReport(const ReportFlags& flags, std::ostream& out) {
  if (flags.scores.empty() && flags.id_scores.empty()) {
    throw UsageError("report needs --scores or --id-scores");
  }
  ScoresTable table;
  std::string id_domain = flags.id_domain;
  if (!flags.id_scores.empty()) {
    const ScoresTable id = ReadScoresTsv(flags.id_scores);
    if (id_domain.empty()) id_domain = ResolveIdDomain(id, "");
    table.Merge(id);
  }
  for (const std::string& path : flags.scores) table.Merge(ReadScoresTsv(path));
  id_domain = ResolveIdDomain(table, id_domain);

  std::vector<std::string> ood;
  for (const std::string& domain : table.Domains()) {
    if (domain != id_domain) ood.push_back(domain);
  }
  const std::vector<std::string> parsers = table.Parsers();
  for (const std::string& parser : parsers) {
    if (!table.Value(parser, id_domain, SubMetricKind::kSmatch)) {
      throw DataError("no in-domain score for parser '" + parser +
                      "' in domain '" + id_domain + "'");
    }
  }

  auto degradation = [&](const std::string& parser, const std::string& domain,
                         SubMetricKind metric) -> Degradation {
    const auto id = table.Value(parser, id_domain, metric);
    const auto score = table.Value(parser, domain, metric);
    if (!id || !score) return {score, std::nullopt};
    if (!(*id > 0.0)) {
      throw DataError("in-domain " + std::string(SubMetricName(metric)) +
                      " score for '" + parser + "' must be positive");
    }
    return {score, ReductionRate(*id, *score)};
  };
  // Mean OOD score and mean of the per-domain rates; unset unless every OOD
  // domain has a value.
  auto average = [&](const std::string& parser,
                     SubMetricKind metric) -> Degradation {
    std::vector<double> scores;
    for (const std::string& domain : ood) {
      const auto score = table.Value(parser, domain, metric);
      if (!score) return {};
      scores.push_back(*score);
    }
    const auto id = table.Value(parser, id_domain, metric);
    if (scores.empty() || !id || !(*id > 0.0)) return {};
    double sum = 0.0;
    for (double s : scores) sum += s;
    return {sum / static_cast<double>(scores.size()),
            MeanReductionRate(*id, scores)};
  };
  const bool show_avg = ood.size() >= 2;

  if (flags.format == "json") {
    Json rows = Json::array();
    Json averages = Json::array();
    for (const std::string& parser : parsers) {
      for (SubMetricKind metric : table.metrics()) {
        for (const std::string& domain : table.Domains()) {
          const auto score = table.Value(parser, domain, metric);
          if (!score) continue;
          Json item = {{"parser", parser},
                       {"domain", domain},
                       {"metric", SubMetricName(metric)},
                       {"score", *score},
                       {"reduction", nullptr}};
          if (domain != id_domain) {
            const Degradation d = degradation(parser, domain, metric);
            if (d.rate) item["reduction"] = *d.rate;
          }
          rows.push_back(std::move(item));
        }
        const Degradation avg = average(parser, metric);
        if (avg.score) {
          averages.push_back({{"parser", parser},
                              {"metric", SubMetricName(metric)},
                              {"score", *avg.score},
                              {"reduction", *avg.rate}});
        }
      }
    }
    Json doc = {
        {"schema_version", kJsonSchemaVersion},
        {"command", "report"},
        {"id_domain", id_domain},
        {"ood_domains", ood},
        {"rows", rows},
        {"averages", averages},
    };
    out << doc.dump(2) << "\n";
    return kExitOk;
  }

  if (flags.format == "tsv") {
    out << "parser\tdomain\tmetric\tscore\treduction\n";
    for (const std::string& parser : parsers) {
      for (SubMetricKind metric : table.metrics()) {
        for (const std::string& domain : table.Domains()) {
          const auto score = table.Value(parser, domain, metric);
          if (!score) continue;
          std::string rate = "-";
          if (domain != id_domain) {
            const Degradation d = degradation(parser, domain, metric);
            if (d.rate) rate = FormatFixed(100.0 * *d.rate, flags.precision);
          }
          out << parser << '\t' << domain << '\t' << SubMetricName(metric)
              << '\t' << FormatFixed(*score, flags.precision) << '\t' << rate
              << '\n';
        }
      }
    }
    return kExitOk;
  }

  std::vector<std::string> header = {"Model", id_domain};
  header.insert(header.end(), ood.begin(), ood.end());
  if (show_avg) header.emplace_back("Avg");
  std::vector<std::vector<std::string>> matrix;
  auto cell = [&](const Degradation& d) {
    if (!d.score) return std::string("-");
    if (!d.rate) return FormatFixed(*d.score, flags.precision);
    return FormatScoreWithRate(*d.score, *d.rate, flags.precision);
  };
  for (const std::string& parser : parsers) {
    std::vector<std::string> row = {
        parser, FormatFixed(*table.Value(parser, id_domain, SubMetricKind::kSmatch),
                            flags.precision)};
    for (const std::string& domain : ood) {
      row.push_back(cell(degradation(parser, domain, SubMetricKind::kSmatch)));
    }
    if (show_avg) row.push_back(cell(average(parser, SubMetricKind::kSmatch)));
    matrix.push_back(std::move(row));
  }
  out << RenderMarkdownTable(header, matrix);

  if (!ood.empty()) {
    std::vector<std::string> metric_header = {"Model"};
    for (SubMetricKind metric : table.metrics()) {
      metric_header.emplace_back(SubMetricHeading(metric));
    }
    std::vector<std::vector<std::string>> by_metric;
    for (const std::string& parser : parsers) {
      std::vector<std::string> row = {parser};
      for (SubMetricKind metric : table.metrics()) {
        const Degradation avg = average(parser, metric);
        row.push_back(avg.rate ? FormatPercent(*avg.rate, flags.precision)
                               : std::string("-"));
      }
      by_metric.push_back(std::move(row));
    }
    out << "\nMean relative reduction over " << ood.size()
        << (ood.size() == 1 ? " OOD domain" : " OOD domains") << "\n\n";
    out << RenderMarkdownTable(metric_header, by_metric);
  }
  return kExitOk;
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Cross-domain AMR parsing evaluation: Smatch scoring, feature "
               "divergence, degradation reports and correlation analysis"};
  app.name(args.empty() ? "amr-crossdom" : Stem(args[0]));
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.set_version_flag("--version", "amr-crossdom 0.1.0");

  const std::vector<std::string> formats = {"tsv", "json", "markdown"};

  ScoreFlags score;
  CLI::App* score_cmd = app.add_subcommand("score", "Smatch and sub-metrics");
  score_cmd->add_option("--gold", score.gold, "Gold AMR file")->required();
  score_cmd->add_option("--pred", score.pred, "Predicted AMR file")->required();
  score_cmd->add_flag("--fine-grained", score.fine_grained,
                      "Report all nine sub-metrics");
  score_cmd->add_option("--restarts", score.restarts, "Hill-climbing restarts")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  score_cmd->add_option("--seed", score.seed, "Random seed")->capture_default_str();
  score_cmd->add_option("--pair-by", score.pair_by, "Pair entries by")
      ->check(CLI::IsMember({"position", "id"}))
      ->capture_default_str();
  score_cmd->add_option("--format", score.format, "Output format")
      ->check(CLI::IsMember({"tsv", "json", "markdown", "scores"}))
      ->capture_default_str();
  score_cmd->add_option("--precision", score.precision,
                        "Decimals (default 1, or 4 with --raw)")
      ->check(CLI::NonNegativeNumber);
  score_cmd->add_flag("--raw", score.raw, "Report [0,1] instead of x100");
  score_cmd->add_flag("--lenient", score.lenient,
                      "Skip malformed graphs instead of failing");
  score_cmd->add_option("--threads", score.threads, "Worker threads (0 = auto)");
  score_cmd->add_option("--parser", score.parser,
                        "Parser name for markdown/scores output");
  score_cmd->add_option("--domain", score.domain,
                        "Domain name for scores output");

  DivergeFlags diverge;
  CLI::App* diverge_cmd =
      app.add_subcommand("diverge", "Feature divergence between two corpora");
  diverge_cmd->add_option("--source", diverge.source, "Source (training) corpus")
      ->required();
  diverge_cmd->add_option("--target", diverge.target, "Target (test) corpus")
      ->required();
  diverge_cmd->add_option("--features", diverge.features,
                          "Comma-separated feature kinds")
      ->capture_default_str();
  diverge_cmd->add_option("--format", diverge.format, "Output format")
      ->check(CLI::IsMember(formats))
      ->capture_default_str();
  diverge_cmd->add_option("--name", diverge.name,
                          "Row label for markdown output");
  diverge_cmd->add_option("--precision", diverge.precision, "Decimals")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  diverge_cmd->add_flag("--lenient", diverge.lenient,
                        "Skip malformed graphs instead of failing");
  diverge.feature_flags.Register(*diverge_cmd);

  CorrelateFlags correlate;
  CLI::App* correlate_cmd = app.add_subcommand(
      "correlate", "Correlate feature divergence with Smatch degradation");
  correlate_cmd->add_option("--gold", correlate.gold, "Gold OOD corpus")
      ->required();
  correlate_cmd->add_option("--pred", correlate.preds,
                            "PARSER=PATH prediction file (repeatable)")
      ->required();
  correlate_cmd->add_option("--source", correlate.source,
                            "Source (training) corpus")
      ->required();
  correlate_cmd->add_option("--id-scores", correlate.id_scores,
                            "Scores TSV holding in-domain Smatch")
      ->required();
  correlate_cmd->add_option("--id-domain", correlate.id_domain,
                            "In-domain name (default: first domain)");
  correlate_cmd->add_option("--bootstrap", correlate.bootstrap, "Resamples")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  correlate_cmd->add_option("--sample-size", correlate.sample_size,
                            "Entries per resample")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  correlate_cmd->add_option("--seed", correlate.seed, "Random seed")
      ->capture_default_str();
  correlate_cmd->add_flag("--with-replacement", correlate.with_replacement,
                          "Classical bootstrap instead of subsampling");
  correlate_cmd->add_flag("--skip-constant", correlate.skip_constant,
                          "Report '-' for constant series instead of failing");
  correlate_cmd->add_option("--features", correlate.features,
                            "Comma-separated feature kinds")
      ->capture_default_str();
  correlate_cmd->add_option("--restarts", correlate.restarts,
                            "Hill-climbing restarts")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  correlate_cmd->add_option("--pair-by", correlate.pair_by, "Pair entries by")
      ->check(CLI::IsMember({"position", "id"}))
      ->capture_default_str();
  correlate_cmd->add_option("--format", correlate.format, "Output format")
      ->check(CLI::IsMember(formats))
      ->capture_default_str();
  correlate_cmd->add_option("--precision", correlate.precision, "Decimals")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  correlate_cmd->add_flag("--lenient", correlate.lenient,
                          "Skip malformed graphs instead of failing");
  correlate_cmd->add_option("--threads", correlate.threads,
                            "Worker threads (0 = auto)");
  correlate.feature_flags.Register(*correlate_cmd);

  ReportFlags report;
  CLI::App* report_cmd =
      app.add_subcommand("report", "ID/OOD degradation tables");
  report_cmd->add_option("--scores", report.scores, "Scores TSV (repeatable)");
  report_cmd->add_option("--id-scores", report.id_scores,
                         "Scores TSV holding in-domain results");
  report_cmd->add_option("--id-domain", report.id_domain,
                         "In-domain name (default: first domain)");
  report_cmd->add_option("--format", report.format, "Output format")
      ->check(CLI::IsMember(formats))
      ->capture_default_str();
  report_cmd->add_option("--precision", report.precision, "Decimals")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();

  std::vector<const char*> argv;
  for (const std::string& arg : args) argv.push_back(arg.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (score_cmd->parsed()) return RunScore(score, out, err);
    if (diverge_cmd->parsed()) return RunDiverge(diverge, out, err);
    if (correlate_cmd->parsed()) return RunCorrelate(correlate, out, err);
    return RunReport(report, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DataError& e) {
    err << "error: " << e.what() << "\n";
    return kExitDataError;
  } catch (const AnalysisError& e) {
    err << "analysis error: " << e.what() << "\n";
    return kExitAnalysisError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitDataError;
  }
}

}  // namespace crossdom::cli
