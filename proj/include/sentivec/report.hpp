#pragma once

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "sentivec/errors.hpp"
#include "sentivec/eval.hpp"

namespace sentivec {

// CSV schema v1. The column set is fixed; the trailing timing columns are
// populated only on request because wall times change run to run while the
// rest of the row is reproducible byte for byte.
inline constexpr const char* kCsvHeader =
    "dataset,vectorizer,classifier,split,seed,folds,mean_accuracy,"
    "fold_accuracies,status,notes,fit_seconds,transform_seconds,train_seconds,"
    "predict_seconds";

namespace report_detail {

inline std::string csv_escape(const std::string& s) {
  bool needs_quote = s.find_first_of(",\"\n\r") != std::string::npos;
  if (!needs_quote) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += '"';
  return out;
}

inline std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

// One CSV line respecting quoted fields; returns the cells.
inline std::vector<std::string> csv_split(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cell += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cell += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      cells.push_back(std::move(cell));
      cell.clear();
    } else {
      cell += c;
    }
  }
  cells.push_back(std::move(cell));
  return cells;
}

}  // namespace report_detail

inline std::string reports_to_csv(const std::vector<EvaluationReport>& reports,
                                  bool include_timings = false) {
  using report_detail::csv_escape;
  using report_detail::fixed;
  std::ostringstream out;
  out << kCsvHeader << "\n";
  for (const auto& r : reports) {
    out << csv_escape(r.dataset) << ',' << csv_escape(r.vectorizer_id) << ','
        << csv_escape(r.classifier_id) << ',' << csv_escape(r.plan) << ','
        << r.seed << ',' << r.folds.size() << ',';
    if (r.ok) {
      out << fixed(r.mean_accuracy_pct, 4) << ',';
      std::string fold_list;
      for (std::size_t i = 0; i < r.folds.size(); ++i) {
        if (i) fold_list += ';';
        fold_list += fixed(r.folds[i].accuracy_pct, 4);
      }
      out << csv_escape(fold_list) << ",ok,";
    } else {
      out << ",," << csv_escape("error: " + r.error) << ',';
    }
    out << csv_escape(r.notes);
    if (include_timings) {
      out << ',' << fixed(r.timings.fit_vectorizer_s, 3) << ','
          << fixed(r.timings.transform_s, 3) << ','
          << fixed(r.timings.train_classifier_s, 3) << ','
          << fixed(r.timings.predict_s, 3);
    } else {
      out << ",,,,";
    }
    out << "\n";
  }
  return out.str();
}

inline nlohmann::json report_to_json(const EvaluationReport& r) {
  nlohmann::json folds = nlohmann::json::array();
  for (const auto& f : r.folds) {
    char fp[32];
    std::snprintf(fp, sizeof(fp), "%016llx",
                  static_cast<unsigned long long>(f.vectorizer_fingerprint));
    folds.push_back({{"tp", f.matrix.tp},
                     {"fn", f.matrix.fn},
                     {"fp", f.matrix.fp},
                     {"tn", f.matrix.tn},
                     {"accuracy", f.accuracy_pct},
                     {"vectorizer_fingerprint", fp}});
  }
  return {{"dataset", r.dataset},
          {"vectorizer", r.vectorizer_id},
          {"classifier", r.classifier_id},
          {"split", r.plan},
          {"seed", r.seed},
          {"ok", r.ok},
          {"error", r.error},
          {"notes", r.notes},
          {"mean_accuracy", r.mean_accuracy_pct},
          {"folds", folds},
          {"timings",
           {{"fit_vectorizer_s", r.timings.fit_vectorizer_s},
            {"transform_s", r.timings.transform_s},
            {"train_classifier_s", r.timings.train_classifier_s},
            {"predict_s", r.timings.predict_s}}}};
}

inline nlohmann::json reports_to_json(const std::vector<EvaluationReport>& reports) {
  nlohmann::json cells = nlohmann::json::array();
  for (const auto& r : reports) cells.push_back(report_to_json(r));
  return {{"schema", "sentivec-report v1"}, {"cells", cells}};
}

// Accuracy table with one column per (dataset, vectorizer) pair and one row
// per classifier, mirroring how grid results are usually presented.
inline std::string format_accuracy_table(
    const std::vector<EvaluationReport>& reports) {
  std::vector<std::pair<std::string, std::string>> columns;  // (dataset, vec)
  std::vector<std::string> classifiers;
  std::map<std::pair<std::string, std::string>, std::map<std::string, std::string>>
      cells;

  for (const auto& r : reports) {
    std::pair<std::string, std::string> col{r.dataset, r.vectorizer_id};
    if (std::find(columns.begin(), columns.end(), col) == columns.end())
      columns.push_back(col);
    if (std::find(classifiers.begin(), classifiers.end(), r.classifier_id) ==
        classifiers.end())
      classifiers.push_back(r.classifier_id);
    cells[col][r.classifier_id] =
        r.ok ? report_detail::fixed(r.mean_accuracy_pct, 3) : std::string("ERR");
  }

  std::size_t row_width = std::string("classifier").size();
  for (const auto& c : classifiers) row_width = std::max(row_width, c.size());

  std::vector<std::size_t> widths;
  for (const auto& [ds, vec] : columns)
    widths.push_back(std::max({ds.size(), vec.size(), std::size_t{8}}));

  std::ostringstream out;
  auto pad = [&](const std::string& s, std::size_t w) {
    out << s;
    for (std::size_t i = s.size(); i < w; ++i) out << ' ';
  };

  pad("dataset", row_width);
  for (std::size_t c = 0; c < columns.size(); ++c) {
    out << "  ";
    pad(columns[c].first, widths[c]);
  }
  out << "\n";
  pad("classifier", row_width);
  for (std::size_t c = 0; c < columns.size(); ++c) {
    out << "  ";
    pad(columns[c].second, widths[c]);
  }
  out << "\n";
  std::size_t total = row_width;
  for (std::size_t w : widths) total += w + 2;
  out << std::string(total, '-') << "\n";

  for (const auto& clf : classifiers) {
    pad(clf, row_width);
    for (std::size_t c = 0; c < columns.size(); ++c) {
      out << "  ";
      auto it = cells[columns[c]].find(clf);
      pad(it == cells[columns[c]].end() ? "-" : it->second, widths[c]);
    }
    out << "\n";
  }
  return out.str();
}

// --- plotdata: flatten result CSVs into one row per (dataset, classifier,
// vectorizer) bar for external plotting ---

struct PlotRow {
  std::string dataset;
  std::string classifier;
  std::string vectorizer;
  double accuracy = 0.0;
};

inline std::vector<PlotRow> collect_plot_rows(
    const std::vector<std::filesystem::path>& report_files,
    std::vector<std::string>* warnings = nullptr) {
  std::vector<PlotRow> rows;
  std::map<std::tuple<std::string, std::string, std::string>, std::size_t> seen;

  for (const auto& file : report_files) {
    std::ifstream in(file);
    if (!in) throw DataError("cannot open report file: " + file.string());
    std::string line;
    if (!std::getline(in, line))
      throw DataError("report file is empty: " + file.string());
    if (line != kCsvHeader)
      throw DataError("report file has an unexpected header: " + file.string());
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty()) continue;
      auto cells = report_detail::csv_split(line);
      if (cells.size() < 9)
        throw DataError(file.string() + ": line " + std::to_string(line_no) +
                        ": malformed row");
      if (cells[8] != "ok") {
        if (warnings)
          warnings->push_back(file.string() + ": line " + std::to_string(line_no) +
                              ": skipping failed cell (" + cells[8] + ")");
        continue;
      }
      PlotRow row{cells[0], cells[2], cells[1], std::stod(cells[6])};
      auto key = std::make_tuple(row.dataset, row.classifier, row.vectorizer);
      auto it = seen.find(key);
      if (it != seen.end()) {
        if (warnings)
          warnings->push_back(file.string() + ": line " + std::to_string(line_no) +
                              ": duplicate cell " + row.dataset + "/" +
                              row.classifier + "/" + row.vectorizer +
                              ", keeping the later value");
        rows[it->second] = row;
      } else {
        seen.emplace(key, rows.size());
        rows.push_back(row);
      }
    }
  }
  return rows;
}

inline std::string plot_rows_to_csv(const std::vector<PlotRow>& rows) {
  std::ostringstream out;
  out << "dataset,classifier,vectorizer,accuracy\n";
  for (const auto& r : rows) {
    out << report_detail::csv_escape(r.dataset) << ','
        << report_detail::csv_escape(r.classifier) << ','
        << report_detail::csv_escape(r.vectorizer) << ','
        << report_detail::fixed(r.accuracy, 4) << "\n";
  }
  return out.str();
}

}  // namespace sentivec
