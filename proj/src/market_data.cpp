#include "dpo/market_data.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "dpo/errors.hpp"
#include "dpo/rng.hpp"

namespace dpo {

namespace {

// RFC-4180 field split; quotes only matter for embedded commas here.
std::vector<std::string> split_csv_row(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  fields.push_back(cur);
  return fields;
}

}  // namespace

PriceSeries load_prices_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MalformedCsv("cannot open CSV file: " + path);

  std::string line;
  if (!std::getline(in, line)) throw MalformedCsv("empty CSV file: " + path);
  {
    auto header = split_csv_row(line);
    if (header.size() != 3 || header[0] != "date" || header[1] != "ticker" ||
        header[2] != "close") {
      throw MalformedCsv("expected header `date,ticker,close` in " + path);
    }
  }

  std::map<std::pair<std::string, std::string>, double> cells;
  std::set<std::string> date_set, ticker_set;
  std::size_t row_no = 1;
  while (std::getline(in, line)) {
    ++row_no;
    if (line.empty()) continue;
    auto fields = split_csv_row(line);
    if (fields.size() != 3) {
      throw MalformedCsv("row " + std::to_string(row_no) + ": expected 3 fields");
    }
    double close;
    try {
      std::size_t pos = 0;
      close = std::stod(fields[2], &pos);
      if (pos != fields[2].size()) throw std::invalid_argument("trailing chars");
    } catch (const std::exception&) {
      throw MalformedCsv("row " + std::to_string(row_no) + ": bad close value `" +
                         fields[2] + "`");
    }
    if (!(close > 0.0)) {
      throw NonPositivePrice("row " + std::to_string(row_no) + ": close " +
                             fields[2] + " for " + fields[1] + " on " + fields[0]);
    }
    auto key = std::make_pair(fields[0], fields[1]);
    if (cells.count(key)) {
      throw DuplicateCell("duplicate (" + fields[0] + ", " + fields[1] + ")");
    }
    cells[key] = close;
    date_set.insert(fields[0]);
    ticker_set.insert(fields[1]);
  }

  PriceSeries series;
  series.dates.assign(date_set.begin(), date_set.end());
  series.tickers.assign(ticker_set.begin(), ticker_set.end());
  series.prices.assign(series.dates.size(),
                       std::vector<double>(series.tickers.size(), 0.0));
  for (std::size_t d = 0; d < series.dates.size(); ++d) {
    for (std::size_t a = 0; a < series.tickers.size(); ++a) {
      auto it = cells.find({series.dates[d], series.tickers[a]});
      if (it == cells.end()) {
        throw MissingCell("missing (" + series.dates[d] + ", " +
                          series.tickers[a] + ")");
      }
      series.prices[d][a] = it->second;
    }
  }
  return series;
}

void write_prices_csv(const PriceSeries& series, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open for writing: " + path);
  out << "date,ticker,close\n";
  out.precision(17);
  for (std::size_t d = 0; d < series.n_days(); ++d) {
    for (std::size_t a = 0; a < series.n_assets(); ++a) {
      out << series.dates[d] << ',' << series.tickers[a] << ','
          << series.prices[d][a] << '\n';
    }
  }
}

PriceSeries generate_synthetic_prices(int n_assets, int n_days,
                                      std::uint64_t seed) {
  if (n_assets < 1) throw Error("generate_synthetic_prices: n_assets must be >= 1");
  if (n_days < 2) throw Error("generate_synthetic_prices: n_days must be >= 2");

  PriceSeries series;
  series.tickers.reserve(n_assets);
  for (int a = 0; a < n_assets; ++a) {
    // AAA, AAB, ... keeps lexicographic order equal to generation order
    std::string t = "AAA";
    t[2] = static_cast<char>('A' + a % 26);
    t[1] = static_cast<char>('A' + (a / 26) % 26);
    series.tickers.push_back(t);
  }
  // synthetic calendar: 28-day months starting 2023-01-01, ISO rendered
  series.dates.reserve(n_days);
  for (int d = 0; d < n_days; ++d) {
    const int month_index = d / 28;
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", 2023 + month_index / 12,
                  1 + month_index % 12, 1 + d % 28);
    series.dates.push_back(buf);
  }

  series.prices.assign(n_days, std::vector<double>(n_assets, 0.0));
  for (int a = 0; a < n_assets; ++a) {
    Rng rng(Rng::mix(seed, static_cast<std::uint64_t>(a)));
    const double p0 = rng.uniform(50.0, 150.0);
    const double drift = rng.uniform(-5e-4, 1e-3);
    const double vol = rng.uniform(5e-3, 3e-2);
    double log_p = std::log(p0);
    series.prices[0][a] = p0;
    for (int d = 1; d < n_days; ++d) {
      log_p += drift + vol * rng.normal();
      series.prices[d][a] = std::exp(log_p);
    }
  }
  return series;
}

RebalanceGrid make_grid(int delta_t_days, int n_t, int first_anchor) {
  if (delta_t_days < 1) throw Error("make_grid: delta_t_days must be positive");
  if (n_t < 1) throw Error("make_grid: n_t must be positive");
  if (first_anchor < 0) first_anchor = delta_t_days;
  RebalanceGrid grid;
  grid.delta_t_days = delta_t_days;
  grid.n_t = n_t;
  grid.anchor_indices.reserve(n_t + 1);
  for (int t = 0; t <= n_t; ++t) {
    grid.anchor_indices.push_back(first_anchor + t * delta_t_days);
  }
  return grid;
}

MarketModel build_market_model(const PriceSeries& series,
                               const RebalanceGrid& grid) {
  const int n_a = static_cast<int>(series.n_assets());
  const int n_t = grid.n_t;
  const int dt = grid.delta_t_days;
  if (static_cast<int>(grid.anchor_indices.size()) != n_t + 1) {
    throw Error("build_market_model: anchor_indices must have n_t + 1 entries");
  }
  for (int t = 0; t < n_t; ++t) {
    if (grid.anchor_indices[t + 1] - grid.anchor_indices[t] != dt) {
      throw Error("build_market_model: anchors not spaced by delta_t_days");
    }
  }
  if (grid.anchor_indices.front() - dt < 0 ||
      grid.anchor_indices.back() >= static_cast<int>(series.n_days())) {
    throw InsufficientHistory(
        "price series does not cover the rebalance anchors and trailing "
        "covariance windows");
  }

  MarketModel model;
  model.mu.assign(n_t, std::vector<double>(n_a, 0.0));
  model.sigma.assign(
      n_t, std::vector<std::vector<double>>(n_a, std::vector<double>(n_a, 0.0)));

  for (int t = 0; t < n_t; ++t) {
    const int a0 = grid.anchor_indices[t];
    const int a1 = grid.anchor_indices[t + 1];
    for (int a = 0; a < n_a; ++a) {
      model.mu[t][a] = std::log(series.prices[a1][a] / series.prices[a0][a]);
    }

    // dt daily log returns ending at anchor t: returns for days
    // s = a0 - dt .. a0 - 1, where return(s) = ln(P[s+1]/P[s]).
    std::vector<std::vector<double>> daily(dt, std::vector<double>(n_a));
    std::vector<double> mean(n_a, 0.0);
    for (int k = 0; k < dt; ++k) {
      const int s = a0 - dt + k;
      for (int a = 0; a < n_a; ++a) {
        daily[k][a] = std::log(series.prices[s + 1][a] / series.prices[s][a]);
        mean[a] += daily[k][a];
      }
    }
    for (int a = 0; a < n_a; ++a) mean[a] /= dt;

    const double denom = dt > 1 ? dt - 1 : 1;
    for (int a = 0; a < n_a; ++a) {
      for (int b = a; b < n_a; ++b) {
        double acc = 0.0;
        for (int k = 0; k < dt; ++k) {
          acc += (daily[k][a] - mean[a]) * (daily[k][b] - mean[b]);
        }
        model.sigma[t][a][b] = acc / denom;
        model.sigma[t][b][a] = model.sigma[t][a][b];
      }
    }
  }
  return model;
}

}  // namespace dpo
