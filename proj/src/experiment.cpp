#include "gftdual/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <map>
#include <tuple>

#include "gftdual/alignment.hpp"
#include "gftdual/dup_bound.hpp"
#include "gftdual/error.hpp"
#include "gftdual/graph.hpp"
#include "gftdual/spectral.hpp"

namespace gftdual {

const char* to_string(ExperimentMethod method) noexcept {
  switch (method) {
    case ExperimentMethod::CD: return "CD";
    case ExperimentMethod::CDPM: return "CDPM";
    case ExperimentMethod::DUP: return "DUP";
  }
  return "Unknown";
}

ExperimentMethod parse_experiment_method(std::string_view name) {
  if (name == "CD" || name == "cd") return ExperimentMethod::CD;
  if (name == "CDPM" || name == "cdpm") return ExperimentMethod::CDPM;
  if (name == "DUP" || name == "dup") return ExperimentMethod::DUP;
  throw Error(Errc::InvalidArgument, "unknown method '" + std::string(name) + "'");
}

namespace {

void validate(const ExperimentConfig& c) {
  if (c.n_values.empty()) throw Error(Errc::InvalidArgument, "n_values is empty");
  for (std::size_t i = 0; i < c.n_values.size(); ++i) {
    if (c.n_values[i] < 1) throw Error(Errc::InvalidArgument, "n values must be positive");
    if (i > 0 && c.n_values[i] <= c.n_values[i - 1]) throw Error(Errc::InvalidArgument, "n_values must ascend");
  }
  if (!(c.p >= 0.0 && c.p <= 1.0)) throw Error(Errc::InvalidArgument, "p outside [0, 1]");
  if (c.trials < 1) throw Error(Errc::InvalidArgument, "trials must be at least 1");
  if (c.restarts < 1) throw Error(Errc::InvalidArgument, "restarts must be at least 1");
  if (c.methods.empty()) throw Error(Errc::InvalidArgument, "no methods requested");
}

SpectralDecomposition sample_simple_spectrum(int n, double p, Rng& rng, int& resamples) {
  for (;;) {
    SpectralDecomposition d = eigendecompose(erdos_renyi(n, p, rng));
    if (has_distinct_eigenvalues(d)) return d;
    if (++resamples > kMaxResamples) {
      throw Error(Errc::ResampleCapExceeded, "no graph with a simple spectrum in G(" + std::to_string(n) + ", " +
                                                 std::to_string(p) + ") after " + std::to_string(kMaxResamples) +
                                                 " resamples");
    }
  }
}

std::string format_real(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

}  // namespace

std::vector<ExperimentRecord> run_experiment(const ExperimentConfig& config) {
  validate(config);
  std::vector<ExperimentMethod> methods = config.methods;
  std::sort(methods.begin(), methods.end());
  methods.erase(std::unique(methods.begin(), methods.end()), methods.end());

  std::vector<ExperimentRecord> records;
  for (int n : config.n_values) {
    for (int trial = 0; trial < config.trials; ++trial) {
      const RngSeed trial_seed = derive_seed(config.seed, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(trial));
      Rng rng(trial_seed);
      int resamples = 0;
      const SpectralDecomposition s1 = sample_simple_spectrum(n, config.p, rng, resamples);
      const SpectralDecomposition s2 = sample_simple_spectrum(n, config.p, rng, resamples);

      SolverConfig solver{config.epsilon, config.max_iterations, config.restarts, derive_seed(trial_seed, 1)};
      for (ExperimentMethod method : methods) {
        ExperimentRecord rec;
        rec.n = n;
        rec.p = config.p;
        rec.trial = trial;
        rec.method = method;
        rec.resample_count = resamples;
        const auto start = std::chrono::steady_clock::now();
        if (method == ExperimentMethod::DUP) {
          const BoundResult b = dup_bound(build_coupling(s1.vectors, s2.vectors));
          rec.objective = b.bound;
          rec.dualness = dualness_from_objective(n, b.bound);
          rec.iterations = b.rounds;
          rec.restarts_used = 0;
        } else {
          const AlignmentSolution sol =
              multistart(method == ExperimentMethod::CD ? Method::CD : Method::CDPM, s1.vectors, s2.vectors, solver);
          rec.objective = sol.objective;
          rec.dualness = sol.dualness;
          rec.iterations = sol.iterations;
          rec.restarts_used = config.restarts;
        }
        if (config.record_timing) {
          rec.wall_time_ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
        }
        records.push_back(rec);
      }
    }
  }
  std::stable_sort(records.begin(), records.end(), [](const ExperimentRecord& a, const ExperimentRecord& b) {
    return std::tie(a.n, a.trial, a.method) < std::tie(b.n, b.trial, b.method);
  });
  return records;
}

std::string write_csv(const std::vector<ExperimentRecord>& records) {
  if (records.empty()) throw Error(Errc::EmptyInput, "no records to write");
  std::string out(kCsvHeader);
  out += '\n';
  for (const auto& r : records) {
    out += std::to_string(r.n) + ',' + format_real(r.p) + ',' + std::to_string(r.trial) + ',' + to_string(r.method) +
           ',' + format_real(r.objective) + ',' + format_real(r.dualness) + ',' + std::to_string(r.iterations) + ',' +
           std::to_string(r.restarts_used) + ',' + std::to_string(r.resample_count) + ',' +
           std::to_string(r.wall_time_ms) + '\n';
  }
  return out;
}

namespace {

template <class T>
T parse_field(std::string_view token, std::size_t line) {
  T value{};
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw ParseError(line, "bad CSV field '" + std::string(token) + "'");
  }
  return value;
}

}  // namespace

std::vector<ExperimentRecord> read_csv(std::string_view text) {
  std::vector<ExperimentRecord> records;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (!header_seen) {
      if (line != kCsvHeader) throw ParseError(line_no, "unexpected CSV header");
      header_seen = true;
      continue;
    }
    std::vector<std::string_view> f;
    std::size_t start = 0;
    for (;;) {
      const std::size_t comma = line.find(',', start);
      f.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (f.size() != 10) throw ParseError(line_no, "expected 10 CSV fields");
    ExperimentRecord r;
    r.n = parse_field<int>(f[0], line_no);
    r.p = parse_field<double>(f[1], line_no);
    r.trial = parse_field<int>(f[2], line_no);
    try {
      r.method = parse_experiment_method(f[3]);
    } catch (const Error&) {
      throw ParseError(line_no, "unknown method '" + std::string(f[3]) + "'");
    }
    r.objective = parse_field<double>(f[4], line_no);
    r.dualness = parse_field<double>(f[5], line_no);
    r.iterations = parse_field<int>(f[6], line_no);
    r.restarts_used = parse_field<int>(f[7], line_no);
    r.resample_count = parse_field<int>(f[8], line_no);
    r.wall_time_ms = parse_field<std::int64_t>(f[9], line_no);
    records.push_back(r);
  }
  if (!header_seen) throw ParseError(line_no, "missing CSV header");
  return records;
}

std::vector<Series> mean_series(const std::vector<ExperimentRecord>& records) {
  std::map<ExperimentMethod, std::map<int, std::pair<double, int>>> acc;
  for (const auto& r : records) {
    auto& [sum, count] = acc[r.method][r.n];
    sum += r.objective;
    ++count;
  }
  std::vector<Series> out;
  for (const auto& [method, by_n] : acc) {
    Series s{method, {}};
    for (const auto& [n, sc] : by_n) s.points.push_back({n, sc.first / sc.second});
    out.push_back(std::move(s));
  }
  return out;
}

std::string plot_fig1(const std::vector<ExperimentRecord>& records) {
  if (records.empty()) throw Error(Errc::EmptyInput, "no records to plot");
  const std::vector<Series> series = mean_series(records);

  int n_lo = records.front().n, n_hi = records.front().n;
  double m_lo = series.front().points.front().mean_objective, m_hi = m_lo;
  for (const auto& s : series) {
    for (const auto& pt : s.points) {
      n_lo = std::min(n_lo, pt.n);
      n_hi = std::max(n_hi, pt.n);
      m_lo = std::min(m_lo, pt.mean_objective);
      m_hi = std::max(m_hi, pt.mean_objective);
    }
  }
  if (m_lo == m_hi) {
    m_lo -= 0.5;
    m_hi += 0.5;
  }
  const double pad = 0.05 * (m_hi - m_lo);
  const double y_lo = m_lo - pad, y_hi = m_hi + pad;
  auto x_px = [&](double n) { return n_lo == n_hi ? 360.0 : 80.0 + 560.0 * (n - n_lo) / (n_hi - n_lo); };
  auto y_px = [&](double m) { return 540.0 - 500.0 * (m - y_lo) / (y_hi - y_lo); };

  auto fmt = [](const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return std::string(buf);
  };
  auto color = [](ExperimentMethod m) {
    switch (m) {
      case ExperimentMethod::CD: return "#1f77b4";
      case ExperimentMethod::CDPM: return "#d62728";
      case ExperimentMethod::DUP: return "#2ca02c";
    }
    return "#000000";
  };

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"800\" height=\"600\" viewBox=\"0 0 800 600\">\n";
  svg += "<rect x=\"0\" y=\"0\" width=\"800\" height=\"600\" fill=\"white\"/>\n";
  svg += "<text x=\"360\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">"
         "Mean trace objective, G(N, " + fmt("%g", records.front().p) + ")</text>\n";
  svg += "<line x1=\"80\" y1=\"540\" x2=\"640\" y2=\"540\" stroke=\"black\"/>\n";
  svg += "<line x1=\"80\" y1=\"40\" x2=\"80\" y2=\"540\" stroke=\"black\"/>\n";

  std::vector<int> ns;
  for (const auto& s : series)
    for (const auto& pt : s.points) ns.push_back(pt.n);
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
  for (int n : ns) {
    const std::string x = fmt("%.3f", x_px(n));
    svg += "<line x1=\"" + x + "\" y1=\"540\" x2=\"" + x + "\" y2=\"546\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + x + "\" y=\"562\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" +
           std::to_string(n) + "</text>\n";
  }
  for (int k = 0; k <= 4; ++k) {
    const double m = m_lo + (m_hi - m_lo) * k / 4.0;
    const std::string y = fmt("%.3f", y_px(m));
    svg += "<line x1=\"74\" y1=\"" + y + "\" x2=\"80\" y2=\"" + y + "\" stroke=\"black\"/>\n";
    svg += "<text x=\"70\" y=\"" + y + "\" text-anchor=\"end\" dominant-baseline=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"12\">" + fmt("%.3g", m) + "</text>\n";
  }
  svg += "<text x=\"360\" y=\"588\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">N</text>\n";
  svg += "<text x=\"20\" y=\"290\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\" "
         "transform=\"rotate(-90 20 290)\">mean objective</text>\n";

  int legend_row = 0;
  for (const auto& s : series) {
    std::string points;
    for (const auto& pt : s.points) {
      if (!points.empty()) points += ' ';
      points += fmt("%.3f", x_px(pt.n)) + "," + fmt("%.3f", y_px(pt.mean_objective));
    }
    svg += "<polyline data-method=\"" + std::string(to_string(s.method)) + "\" fill=\"none\" stroke=\"" +
           color(s.method) + "\" stroke-width=\"2\" points=\"" + points + "\"/>\n";
    const std::string ly = std::to_string(60 + 24 * legend_row++);
    svg += "<line x1=\"660\" y1=\"" + ly + "\" x2=\"690\" y2=\"" + ly + "\" stroke=\"" + color(s.method) +
           "\" stroke-width=\"2\"/>\n";
    svg += "<text x=\"698\" y=\"" + ly + "\" dominant-baseline=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" +
           std::string(to_string(s.method)) + "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace gftdual
