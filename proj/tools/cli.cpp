#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "specband/csv.hpp"
#include "specband/cwt.hpp"
#include "specband/error.hpp"
#include "specband/implied.hpp"
#include "specband/longmemory.hpp"
#include "specband/modwt.hpp"
#include "specband/parallel.hpp"
#include "specband/plot.hpp"
#include "specband/realized.hpp"
#include "specband/regression.hpp"
#include "specband/series.hpp"
#include "specband/simulate.hpp"

namespace specband::cli {

namespace {

namespace fs = std::filesystem;

constexpr std::int64_t kMsPerDay = 86'400'000;
constexpr std::int64_t kOpenMs = (9 * 60 + 30) * 60'000;  // 09:30
constexpr std::int64_t kSessionMs = 23'400'000;            // 6.5 hours

std::string join(const std::vector<std::string>& cells) {
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out += ',';
    out += cells[i];
  }
  return out + '\n';
}

std::string num(double v) { return format_double(v); }

void emit(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") std::cout << content << std::flush;
  else write_file_atomic(path, content);
}

void require_readable(const std::vector<std::string>& paths) {
  for (const auto& p : paths)
    if (!fs::is_regular_file(p)) throw IoError("cannot open '" + p + "'");
}

std::string truth_path(const std::string& out, const std::string& explicit_path) {
  if (!explicit_path.empty()) return explicit_path;
  fs::path p(out);
  p.replace_extension();
  return p.string() + ".truth.csv";
}

TimeSeries load_one(const std::string& path, const std::string& column) {
  CsvSchema schema;
  schema.value_column = column;
  return load_csv(path, schema);
}

std::pair<TimeSeries, TimeSeries> load_pair(const std::string& xp, const std::string& xc, const std::string& yp,
                                            const std::string& yc) {
  require_readable({xp, yp});
  auto x = load_one(xp, xc);
  auto y = load_one(yp, yc);
  if (x.size() != y.size() || !std::equal(x.stamps().begin(), x.stamps().end(), y.stamps().begin()))
    throw std::invalid_argument("x and y must share the same timestamps");
  return {std::move(x), std::move(y)};
}

std::pair<double, double> parse_pair(const std::string& text, const char* what) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw std::invalid_argument(std::string(what) + " must look like a:b");
  return {parse_double(text.substr(0, colon)), parse_double(text.substr(colon + 1))};
}

// Exponent pairs lie in [0, 1]; anything larger names Fourier indices.
BandSpec parse_fourier_band(const std::string& text) {
  const auto [a, b] = parse_pair(text, "--fourier-band");
  if (a <= 1.0 && b <= 1.0) return BandSpec::exponents(a, b);
  if (a != std::floor(a) || b != std::floor(b) || a < 1)
    throw std::invalid_argument("--fourier-band: indices must be positive integers");
  return BandSpec::indices(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
}

std::int64_t parse_duration_seconds(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("--resample: empty duration");
  std::int64_t mult = 1;
  std::string digits = text;
  switch (text.back()) {
    case 's': digits.pop_back(); break;
    case 'm': mult = 60; digits.pop_back(); break;
    case 'h': mult = 3600; digits.pop_back(); break;
    default: break;
  }
  const double v = parse_double(digits);
  if (!(v > 0) || v != std::floor(v)) throw std::invalid_argument("--resample: expected a positive whole duration");
  return static_cast<std::int64_t>(v) * mult;
}

// ---------------------------------------------------------------- simulate

struct ArfimaArgs {
  double d = 0.4, sd = 1.0;
  std::size_t n = 2048;
  std::uint64_t seed = 1;
  std::string out, truth;
};

void do_arfima(const ArfimaArgs& a) {
  const auto x = sim_arfima(a.d, a.n, a.sd, a.seed);
  write_csv(a.out, TimeSeries::from_values(x), "t", "x");
  write_file_atomic(truth_path(a.out, a.truth),
                    join({"d", "n", "sd", "seed"}) + join({num(a.d), std::to_string(a.n), num(a.sd), std::to_string(a.seed)}));
}

struct FcointArgs {
  FcointTruth truth;
  std::size_t n = 4096;
  std::uint64_t seed = 1;
  std::string out, truth_file;
};

void do_fcoint(const FcointArgs& a) {
  const auto s = sim_fcoint(a.truth, a.n, a.seed);
  std::string csv = join({"t", "x", "y", "u"});
  for (std::size_t t = 0; t < a.n; ++t) csv += join({std::to_string(t), num(s.x[t]), num(s.y[t]), num(s.u[t])});
  write_file_atomic(a.out, csv);
  const auto& tr = a.truth;
  write_file_atomic(truth_path(a.out, a.truth_file),
                    join({"alpha", "beta", "d", "d_u", "rho", "u_sd", "n", "seed"}) +
                        join({num(tr.alpha), num(tr.beta), num(tr.d), num(tr.d_u), num(tr.rho), num(tr.u_sd),
                              std::to_string(a.n), std::to_string(a.seed)}));
}

struct JumpArgs {
  JumpDiffusionSpec spec;
  double price0 = 100.0;
  std::string start = "2020-01-02";
  std::string out, truth;
};

void do_jumpdiff(const JumpArgs& a) {
  const auto& s = a.spec;
  if (s.n == 0 || kSessionMs % static_cast<std::int64_t>(s.n) != 0)
    throw std::invalid_argument("--n must divide 23400000 so ticks land on whole milliseconds");
  const auto start = parse_timestamp(a.start);
  if (start.kind != TimeKind::Date) throw std::invalid_argument("--start must be a YYYY-MM-DD date");
  const auto path = sim_jump_diffusion(s);
  const std::int64_t step = kSessionMs / static_cast<std::int64_t>(s.n);

  std::string csv = join({"timestamp", "price"});
  std::string truth = join({"date", "iv", "jv", "qv", "n_jumps"});
  for (std::size_t day = 0; day < s.days; ++day) {
    const std::int64_t base = (start.value + static_cast<std::int64_t>(day)) * kMsPerDay + kOpenMs;
    for (std::size_t i = 0; i <= s.n; ++i)
      csv += join({format_timestamp(base + static_cast<std::int64_t>(i) * step, TimeKind::DateTime),
                   num(a.price0 * std::exp(path.y[day * s.n + i]))});
    double jv = 0.0;
    std::size_t count = 0;
    for (std::size_t k = 0; k < path.jump_ticks.size(); ++k)
      if (path.jump_ticks[k] > day * s.n && path.jump_ticks[k] <= (day + 1) * s.n) {
        jv += path.jump_sizes[k] * path.jump_sizes[k];
        ++count;
      }
    const double iv = s.sigma * s.sigma / 252.0;
    truth += join({format_timestamp(start.value + static_cast<std::int64_t>(day), TimeKind::Date), num(iv), num(jv),
                   num(iv + jv), std::to_string(count)});
  }
  write_file_atomic(a.out, csv);
  write_file_atomic(truth_path(a.out, a.truth), truth);
}

struct ChainArgs {
  double forward = 100, sigma = 0.2, tau_days = 30, lo = 50, hi = 150, step = 1, rate = 0;
  std::string quote_date = "2020-01-02";
  std::string out, truth;
};

void do_bschain(const ChainArgs& a) {
  const auto q = parse_timestamp(a.quote_date);
  if (q.kind != TimeKind::Date) throw std::invalid_argument("--quote-date must be a YYYY-MM-DD date");
  const double tau = a.tau_days / 365.0;
  const auto chain = sim_bs_chain(a.forward, a.sigma, tau, a.lo, a.hi, a.step, a.rate);
  const std::string qd = format_timestamp(q.value, TimeKind::Date);
  const std::string ex = format_timestamp(q.value + chain.expiry, TimeKind::Date);
  std::string csv = join({"quote_date", "expiry", "strike", "type", "mid", "spot", "rate"});
  for (const auto& r : chain.records)
    csv += join({qd, ex, num(r.strike), r.type == OptionType::Call ? "C" : "P", num(r.mid), num(chain.spot),
                 num(a.rate)});
  write_file_atomic(a.out, csv);
  write_file_atomic(truth_path(a.out, a.truth), join({"forward", "sigma", "tau", "implied_variance"}) +
                                                    join({num(a.forward), num(a.sigma), num(tau),
                                                          num(a.sigma * a.sigma * tau)}));
}

// ------------------------------------------------------------------- modwt

struct ModwtArgs {
  std::string input, column, filter = "d4", out, energy;
  int levels = 6;
};

void do_modwt(const ModwtArgs& a) {
  require_readable({a.input});
  const auto x = load_one(a.input, a.column);
  const auto v = demean(x.values());
  const auto d = modwt(v, a.levels, make_filter(parse_wavelet_family(a.filter)));
  emit(a.out, decomposition_csv(d));
  if (!a.energy.empty()) {
    const auto e = energy_report(d, v);
    std::string csv = join({"component", "level", "energy"});
    for (std::size_t j = 0; j < e.wavelet.size(); ++j) csv += join({"wavelet", std::to_string(j + 1), num(e.wavelet[j])});
    csv += join({"scaling", std::to_string(a.levels), num(e.scaling)});
    csv += join({"series", "", num(e.series)});
    csv += join({"residual", "", num(e.residual)});
    write_file_atomic(a.energy, csv);
  }
}

// --------------------------------------------------------------- coherence

struct CoherenceArgs {
  std::string x, y, x_col, y_col, out, title;
  std::size_t mc = 0;
  double quantile = 0.95;
  std::uint64_t seed = 1;
  ScaleSpec scales;
};

void do_coherence(const CoherenceArgs& a) {
  const auto [x, y] = load_pair(a.x, a.x_col, a.y, a.y_col);
  auto result = wavelet_coherence(x.values(), y.values(), a.scales);
  if (a.mc > 0) result.threshold = mc_significance(x.values(), y.values(), a.mc, a.quantile, a.seed, a.scales);
  std::vector<std::string> labels;
  labels.reserve(x.size());
  for (auto s : x.stamps()) labels.push_back(format_timestamp(s, x.kind()));
  write_file_atomic(a.out + ".csv", coherence_csv(result, labels));
  emit_plot(result, a.out + ".svg", a.title);
}

// ------------------------------------------------------------------ memory

struct MemoryArgs {
  std::string input, out, regressor = "sine";
  std::vector<double> q{0.6, 0.7, 0.8};
};

void do_memory(const MemoryArgs& a) {
  require_readable({a.input});
  const auto reg = parse_gph_regressor(a.regressor);
  const auto columns = load_csv_columns(a.input);
  std::string csv = join({"series", "bandwidth", "m", "d_hat", "se"});
  for (const auto& [name, series] : columns)
    for (double q : a.q) {
      const auto e = gph(series.values(), q, reg);
      csv += join({name, "T^" + num(q), std::to_string(e.m), num(e.d_hat), num(e.se)});
    }
  emit(a.out, csv);
}

// ----------------------------------------------------------------- regress

struct RegressArgs {
  std::string x, y, x_col, y_col, out;
  std::string method = "ols", wavelet_band = "5:6", fourier_band = "0.5:0.7", aux_band, filter = "d4";
  std::string regressor = "sine";
  int levels = 6;
  bool include_scaling = false;
  double residual_q = 0.7;
};

void do_regress(const RegressArgs& a) {
  const auto [xs, ys] = load_pair(a.x, a.x_col, a.y, a.y_col);
  const auto x = xs.values(), y = ys.values();
  RegressionOptions opts;
  opts.residual_q = a.residual_q;
  opts.regressor = parse_gph_regressor(a.regressor);

  std::vector<Method> methods;
  if (a.method == "all") methods = {Method::OLS, Method::WBLS, Method::NBLS, Method::FMNBLS};
  else methods = {parse_method(a.method)};

  std::string csv = regression_csv_header();
  for (Method m : methods) {
    switch (m) {
      case Method::OLS:
        csv += regression_csv_row(ols(y, x, opts));
        break;
      case Method::WBLS: {
        const auto [k, l] = parse_pair(a.wavelet_band, "--wavelet-band");
        if (k != std::floor(k) || l != std::floor(l)) throw std::invalid_argument("--wavelet-band: levels must be integers");
        WblsConfig c{static_cast<int>(k), static_cast<int>(l), a.levels, parse_wavelet_family(a.filter),
                     a.include_scaling};
        csv += regression_csv_row(wbls(y, x, c, opts));
        break;
      }
      case Method::NBLS:
        csv += regression_csv_row(nbls(y, x, parse_fourier_band(a.fourier_band), opts));
        break;
      case Method::FMNBLS: {
        std::optional<BandSpec> aux;
        if (!a.aux_band.empty()) aux = parse_fourier_band(a.aux_band);
        csv += regression_csv_row(fmnbls(y, x, parse_fourier_band(a.fourier_band), aux, opts));
        break;
      }
    }
  }
  emit(a.out, csv);
}

// ---------------------------------------------------------------------- rv

struct RvArgs {
  std::string input, column, out, method = "jwtsrv", resample, filter = "d4", jump_filter = "haar";
  std::size_t delta_n = 10;
  std::optional<std::size_t> grids;
  std::optional<int> levels;
};

struct DayRow {
  std::string date;
  double rv = 0, jv = 0, jwtsrv = 0;
  std::size_t jumps = 0;
  bool negative = false;
};

void do_rv(const RvArgs& a) {
  require_readable({a.input});
  if (a.method != "rv" && a.method != "jwtsrv") throw std::invalid_argument("--method must be rv or jwtsrv");
  const auto ticks = load_one(a.input, a.column);
  if (ticks.kind() == TimeKind::Date) throw std::invalid_argument("tick file needs intraday timestamps");
  const bool ms = ticks.kind() == TimeKind::DateTime;
  const std::int64_t per_day = ms ? kMsPerDay : 86'400;
  const std::int64_t step = a.resample.empty() ? 0 : parse_duration_seconds(a.resample) * (ms ? 1000 : 1);

  std::map<std::int64_t, std::pair<std::size_t, std::size_t>> days;  // day -> [first, last]
  const auto stamps = ticks.stamps();
  for (std::size_t i = 0; i < ticks.size(); ++i) {
    const std::int64_t s = stamps[i];
    const std::int64_t day = s >= 0 ? s / per_day : -((-s + per_day - 1) / per_day);
    auto [it, fresh] = days.try_emplace(day, i, i);
    if (!fresh) it->second.second = i;
  }
  std::vector<std::pair<std::int64_t, std::pair<std::size_t, std::size_t>>> list(days.begin(), days.end());

  JwtsrvConfig cfg;
  cfg.filter = parse_wavelet_family(a.filter);
  cfg.jump_filter = parse_wavelet_family(a.jump_filter);
  cfg.delta_n = a.delta_n;
  cfg.grids = a.grids;
  cfg.levels = a.levels;

  std::vector<DayRow> rows(list.size());
  parallel_for(list.size(), [&](std::size_t k) {
    const auto [day, range] = list[k];
    const auto [first, last] = range;
    std::vector<double> logp;
    std::vector<double> prices(ticks.values().begin() + static_cast<std::ptrdiff_t>(first),
                               ticks.values().begin() + static_cast<std::ptrdiff_t>(last) + 1);
    if (step > 0) {
      std::vector<std::int64_t> st(stamps.begin() + static_cast<std::ptrdiff_t>(first),
                                   stamps.begin() + static_cast<std::ptrdiff_t>(last) + 1);
      prices = resample_last_tick(st, prices, step);
    }
    logp.reserve(prices.size());
    for (double p : prices) {
      if (!(p > 0)) throw std::invalid_argument("prices must be positive");
      logp.push_back(std::log(p));
    }
    DayRow& row = rows[k];
    row.date = ms ? format_timestamp(day, TimeKind::Date) : std::to_string(day);
    if (logp.size() < 2) throw std::invalid_argument("day " + row.date + " has fewer than two prices");
    for (std::size_t t = 1; t < logp.size(); ++t) row.rv += (logp[t] - logp[t - 1]) * (logp[t] - logp[t - 1]);
    if (a.method == "jwtsrv") {
      const auto d = jwtsrv(logp, cfg);
      row.jv = d.jv;
      row.jwtsrv = d.total;
      row.jumps = d.jumps.locations.size();
      row.negative = d.negative;
    }
  });

  std::string csv = join({"date", "rv", "jv", "jwtsrv", "n_jumps"});
  for (const auto& r : rows) {
    if (a.method == "rv") csv += join({r.date, num(r.rv), "", "", ""});
    else csv += join({r.date, num(r.rv), num(r.jv), num(r.jwtsrv), std::to_string(r.jumps)});
    if (r.negative) std::cerr << "specband rv: warning: negative jwtsrv on " << r.date << '\n';
  }
  emit(a.out, csv);
}

// ---------------------------------------------------------------------- iv

struct IvArgs {
  std::string input, out, measure = "mfiv";
  double sd_mult = 1.0;
  ChainFilter filter;
};

void do_iv(const IvArgs& a) {
  require_readable({a.input});
  if (a.measure != "mfiv" && a.measure != "civ1" && a.measure != "civ2")
    throw std::invalid_argument("--measure must be mfiv, civ1 or civ2");
  const auto chains = load_chains(a.input);
  std::string csv = join({"quote_date", "tau_days", "measure", "implied_variance", "implied_vol"});
  std::size_t written = 0;
  for (const auto& raw : chains) {
    const std::string qd = format_timestamp(raw.quote_date, TimeKind::Date);
    OptionChain chain;
    try {
      chain = filter_chain(raw, a.filter);
    } catch (const std::invalid_argument& e) {
      std::cerr << "specband iv: skipping " << qd << " expiry " << format_timestamp(raw.expiry, TimeKind::Date)
                << ": " << e.what() << '\n';
      continue;
    }
    const auto curve = fit_vol_curve(chain);
    double v = 0;
    if (a.measure == "mfiv") v = mfiv(curve, a.sd_mult);
    else if (a.measure == "civ1") v = civ(curve, CorridorSpec::civ1());
    else v = civ(curve, CorridorSpec::civ2());
    csv += join({qd, std::to_string(raw.expiry - raw.quote_date), a.measure, num(v), num(std::sqrt(v / chain.tau))});
    ++written;
  }
  if (written == 0) throw std::invalid_argument("no maturity survived the chain filters");
  emit(a.out, csv);
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"Band-spectrum, wavelet and volatility estimation toolkit", "specband"};
  app.require_subcommand(1);
  std::function<void()> action;
  std::string active;

  // simulate
  auto* sim = app.add_subcommand("simulate", "Write synthetic data with a truth sidecar");
  sim->require_subcommand(1);

  ArfimaArgs arf;
  auto* s_arf = sim->add_subcommand("arfima", "ARFIMA(0,d,0) series");
  s_arf->add_option("--d", arf.d, "Memory parameter");
  s_arf->add_option("--n", arf.n, "Length");
  s_arf->add_option("--sd", arf.sd, "Innovation standard deviation");
  s_arf->add_option("--seed", arf.seed);
  s_arf->add_option("-o,--output", arf.out)->required();
  s_arf->add_option("--truth", arf.truth, "Sidecar path (default <output>.truth.csv)");
  s_arf->callback([&] { action = [&] { do_arfima(arf); }; active = "simulate"; });

  FcointArgs fc;
  auto* s_fc = sim->add_subcommand("fcoint", "Fractionally cointegrated pair");
  s_fc->add_option("--alpha", fc.truth.alpha);
  s_fc->add_option("--beta", fc.truth.beta);
  s_fc->add_option("--d", fc.truth.d);
  s_fc->add_option("--d-u", fc.truth.d_u);
  s_fc->add_option("--rho", fc.truth.rho);
  s_fc->add_option("--u-sd", fc.truth.u_sd);
  s_fc->add_option("--n", fc.n);
  s_fc->add_option("--seed", fc.seed);
  s_fc->add_option("-o,--output", fc.out)->required();
  s_fc->add_option("--truth", fc.truth_file);
  s_fc->callback([&] { action = [&] { do_fcoint(fc); }; active = "simulate"; });

  JumpArgs jd;
  auto* s_jd = sim->add_subcommand("jumpdiff", "Jump diffusion ticks with noise");
  s_jd->add_option("--mu", jd.spec.mu);
  s_jd->add_option("--sigma", jd.spec.sigma);
  s_jd->add_option("--lambda", jd.spec.lambda, "Jumps per day");
  s_jd->add_option("--xi-mean", jd.spec.xi_mean);
  s_jd->add_option("--xi-sd", jd.spec.xi_sd);
  s_jd->add_option("--eta", jd.spec.eta, "Noise standard deviation");
  s_jd->add_option("--n", jd.spec.n, "Ticks per day");
  s_jd->add_option("--days", jd.spec.days);
  s_jd->add_option("--seed", jd.spec.seed);
  s_jd->add_option("--price0", jd.price0);
  s_jd->add_option("--start", jd.start, "First session date");
  s_jd->add_option("-o,--output", jd.out)->required();
  s_jd->add_option("--truth", jd.truth);
  s_jd->callback([&] { action = [&] { do_jumpdiff(jd); }; active = "simulate"; });

  ChainArgs bc;
  auto* s_bc = sim->add_subcommand("bschain", "Black option chain");
  s_bc->add_option("--forward", bc.forward);
  s_bc->add_option("--sigma", bc.sigma);
  s_bc->add_option("--tau-days", bc.tau_days);
  s_bc->add_option("--lo", bc.lo);
  s_bc->add_option("--hi", bc.hi);
  s_bc->add_option("--step", bc.step);
  s_bc->add_option("--rate", bc.rate);
  s_bc->add_option("--quote-date", bc.quote_date);
  s_bc->add_option("-o,--output", bc.out)->required();
  s_bc->add_option("--truth", bc.truth);
  s_bc->callback([&] { action = [&] { do_bschain(bc); }; active = "simulate"; });

  ModwtArgs mw;
  auto* c_mw = app.add_subcommand("modwt", "MODWT coefficients of one series");
  c_mw->add_option("--input", mw.input)->required();
  c_mw->add_option("--column", mw.column);
  c_mw->add_option("--levels", mw.levels);
  c_mw->add_option("--filter", mw.filter, "haar, d4 or la8");
  c_mw->add_option("-o,--output", mw.out);
  c_mw->add_option("--energy", mw.energy, "Energy decomposition CSV");
  c_mw->callback([&] { action = [&] { do_modwt(mw); }; active = "modwt"; });

  CoherenceArgs co;
  auto* c_co = app.add_subcommand("coherence", "Wavelet coherence CSV and SVG");
  c_co->add_option("--x", co.x)->required();
  c_co->add_option("--y", co.y)->required();
  c_co->add_option("--x-col", co.x_col);
  c_co->add_option("--y-col", co.y_col);
  c_co->add_option("--mc", co.mc, "Monte Carlo surrogates (0 skips significance)");
  c_co->add_option("--quantile", co.quantile);
  c_co->add_option("--seed", co.seed);
  c_co->add_option("--dj", co.scales.dj);
  c_co->add_option("--s0", co.scales.s0);
  c_co->add_option("--smax", co.scales.s_max);
  c_co->add_option("--title", co.title);
  c_co->add_option("-o,--output", co.out, "Output prefix")->required();
  c_co->callback([&] { action = [&] { do_coherence(co); }; active = "coherence"; });

  MemoryArgs me;
  auto* c_me = app.add_subcommand("memory", "GPH estimates for every column");
  c_me->add_option("--input", me.input)->required();
  c_me->add_option("--q", me.q, "Bandwidth exponents")->delimiter(',');
  c_me->add_option("--gph-regressor", me.regressor, "sine or log");
  c_me->add_option("-o,--output", me.out);
  c_me->callback([&] { action = [&] { do_memory(me); }; active = "memory"; });

  RegressArgs rg;
  auto* c_rg = app.add_subcommand("regress", "Band-spectrum regression of y on x");
  c_rg->add_option("--x", rg.x)->required();
  c_rg->add_option("--y", rg.y)->required();
  c_rg->add_option("--x-col", rg.x_col);
  c_rg->add_option("--y-col", rg.y_col);
  c_rg->add_option("--method", rg.method, "ols, wbls, nbls, fmnbls or all");
  c_rg->add_option("--wavelet-band", rg.wavelet_band, "k:l");
  c_rg->add_option("--fourier-band", rg.fourier_band, "a:b exponents or indices");
  c_rg->add_option("--aux-band", rg.aux_band);
  c_rg->add_option("--levels", rg.levels);
  c_rg->add_option("--filter", rg.filter);
  c_rg->add_flag("--include-scaling", rg.include_scaling);
  c_rg->add_option("--residual-q", rg.residual_q);
  c_rg->add_option("--gph-regressor", rg.regressor);
  c_rg->add_option("-o,--output", rg.out);
  c_rg->callback([&] { action = [&] { do_regress(rg); }; active = "regress"; });

  RvArgs rv;
  auto* c_rv = app.add_subcommand("rv", "Daily realized measures from ticks");
  c_rv->add_option("--input", rv.input)->required();
  c_rv->add_option("--column", rv.column);
  c_rv->add_option("--method", rv.method, "rv or jwtsrv");
  c_rv->add_option("--resample", rv.resample, "Last-tick grid such as 5m");
  c_rv->add_option("--delta-n", rv.delta_n);
  c_rv->add_option("--grids", rv.grids);
  c_rv->add_option("--levels", rv.levels);
  c_rv->add_option("--filter", rv.filter);
  c_rv->add_option("--jump-filter", rv.jump_filter);
  c_rv->add_option("-o,--output", rv.out);
  c_rv->callback([&] { action = [&] { do_rv(rv); }; active = "rv"; });

  IvArgs iv;
  auto* c_iv = app.add_subcommand("iv", "Model-free or corridor implied variance");
  c_iv->add_option("--input", iv.input)->required();
  c_iv->add_option("--measure", iv.measure, "mfiv, civ1 or civ2");
  c_iv->add_option("--sd-mult", iv.sd_mult);
  c_iv->add_option("--min-price", iv.filter.min_price);
  c_iv->add_option("--min-days", iv.filter.min_days);
  c_iv->add_option("--min-count", iv.filter.min_count);
  c_iv->add_option("-o,--output", iv.out);
  c_iv->callback([&] { action = [&] { do_iv(iv); }; active = "iv"; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "specband: error: " << e.what() << '\n';
    return 1;
  }

  const std::string prefix = "specband " + active + ": ";
  try {
    action();
  } catch (const NumericError& e) {
    std::cerr << prefix << "numeric error: " << e.what() << '\n';
    return 2;
  } catch (const IoError& e) {
    std::cerr << prefix << "io error: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << prefix << "invalid input: " << e.what() << '\n';
    return 1;
  } catch (const std::out_of_range& e) {
    std::cerr << prefix << "invalid input: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << prefix << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

int run(const std::vector<std::string>& args) {
  std::vector<const char*> argv{"specband"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data());
}

}  // namespace specband::cli
