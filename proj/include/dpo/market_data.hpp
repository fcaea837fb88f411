#pragma once

#include <string>
#include <vector>

namespace dpo {

// Daily closing prices, dense over dates x tickers.
struct PriceSeries {
  std::vector<std::string> tickers;
  std::vector<std::string> dates;           // ISO-8601, strictly increasing
  std::vector<std::vector<double>> prices;  // [day][asset], strictly positive

  std::size_t n_days() const { return dates.size(); }
  std::size_t n_assets() const { return tickers.size(); }
};

// Rebalancing schedule over trading-day row indices.
struct RebalanceGrid {
  int delta_t_days = 30;
  int n_t = 0;
  std::vector<int> anchor_indices;  // length n_t + 1
};

// Per-window returns and covariances feeding the QUBO build.
struct MarketModel {
  std::vector<std::vector<double>> mu;                 // [n_t][n_a] log returns
  std::vector<std::vector<std::vector<double>>> sigma; // n_t matrices [n_a][n_a]

  std::size_t n_t() const { return mu.size(); }
  std::size_t n_a() const { return mu.empty() ? 0 : mu[0].size(); }
};

// CSV format: header `date,ticker,close`, one row per (date,ticker), dense.
PriceSeries load_prices_csv(const std::string& path);

void write_prices_csv(const PriceSeries& series, const std::string& path);

// Seeded geometric random walk; per-asset drift/volatility derived from the seed.
PriceSeries generate_synthetic_prices(int n_assets, int n_days, std::uint64_t seed);

// Anchors at first_anchor, first_anchor + delta_t, ... (n_t + 1 anchors).
// The default first anchor leaves one full covariance window of history.
RebalanceGrid make_grid(int delta_t_days, int n_t, int first_anchor = -1);

// mu[t][a] = ln(P[anchor t+1]/P[anchor t]); sigma[t] = unbiased sample
// covariance of the delta_t daily log returns in the window ending at anchor t.
MarketModel build_market_model(const PriceSeries& series, const RebalanceGrid& grid);

}  // namespace dpo
