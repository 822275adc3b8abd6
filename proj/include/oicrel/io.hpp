#pragma once

// JSON instance, params and allocation files; CSV and SVG output helpers.

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "oicrel/error.hpp"
#include "oicrel/ga.hpp"
#include "oicrel/pso.hpp"
#include "oicrel/rap.hpp"

namespace oicrel {

inline constexpr const char* kToolkitVersion = "0.1.0";

namespace io_detail {

using nlohmann::json;

template <typename T>
T field(const json& j, const char* key) {
  if (!j.contains(key)) throw Error(ErrorCode::ParseError, std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("field '") + key + "': " + e.what());
  }
}

template <typename T>
Matrix<T> matrix_field(const json& j, const char* key, std::size_t m, std::size_t n) {
  const auto rows = field<std::vector<std::vector<double>>>(j, key);
  if (rows.size() != m) {
    throw Error(ErrorCode::ShapeMismatch, std::string("'") + key + "' must have m rows");
  }
  Matrix<T> out(m, n);
  for (std::size_t i = 0; i < m; ++i) {
    if (rows[i].size() != n) {
      throw Error(ErrorCode::ShapeMismatch, std::string("'") + key + "' must have n columns");
    }
    for (std::size_t j2 = 0; j2 < n; ++j2) out(i, j2) = static_cast<T>(rows[i][j2]);
  }
  return out;
}

template <typename T>
json matrix_json(const Matrix<T>& mat) {
  json rows = json::array();
  for (std::size_t i = 0; i < mat.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < mat.cols(); ++j) row.push_back(mat(i, j));
    rows.push_back(row);
  }
  return rows;
}

inline IntervalSet interval_set(const json& j) {
  IntervalSet set;
  for (const auto& pair : j) {
    if (!pair.is_array() || pair.size() != 2) {
      throw Error(ErrorCode::ParseError, "interval must be [lo, hi]");
    }
    set.emplace_back(pair[0].get<double>(), pair[1].get<double>());
  }
  return set;
}

inline json interval_set_json(const IntervalSet& set) {
  json out = json::array();
  for (const auto& r : set) out.push_back({r.lo(), r.hi()});
  return out;
}

}  // namespace io_detail

inline std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline nlohmann::json parse_json(const std::string& text, const std::string& what) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, what + ": " + e.what());
  }
}

inline CostModel parse_cost_model(const std::string& s) {
  if (s == "max-per-oic") return CostModel::MaxPerOic;
  if (s == "sum") return CostModel::Sum;
  throw Error(ErrorCode::ParseError, "cost model must be max-per-oic or sum");
}

inline ObjectiveForm parse_objective(const std::string& s) {
  if (s == "all-ready") return ObjectiveForm::AllReady;
  if (s == "enumerated") return ObjectiveForm::Enumerated;
  throw Error(ErrorCode::ParseError, "objective must be all-ready or enumerated");
}

/// Fields: m, n, readiness, wakeup, cost, budget, r_intervals, plus optional
/// name, function_names, unsupported, r_sets, cost_model, objective. Without
/// r_sets the single set r_intervals is used.
inline RapInstance instance_from_json(const nlohmann::json& j) {
  using namespace io_detail;
  if (!j.is_object()) throw Error(ErrorCode::ParseError, "instance must be an object");
  RapInstance inst;
  const auto m = field<std::size_t>(j, "m");
  const auto n = field<std::size_t>(j, "n");
  inst.name = j.value("name", std::string{});
  inst.rd = field<std::vector<double>>(j, "readiness");
  if (inst.rd.size() != m) throw Error(ErrorCode::ShapeMismatch, "readiness must have m entries");
  inst.p = matrix_field<double>(j, "wakeup", m, n);
  inst.cost = matrix_field<double>(j, "cost", m, n);
  inst.budget = field<double>(j, "budget");
  if (j.contains("unsupported")) inst.unsupported = matrix_field<unsigned char>(j, "unsupported", m, n);
  if (j.contains("function_names")) {
    inst.function_names = field<std::vector<std::string>>(j, "function_names");
  }
  try {
    if (j.contains("r_sets")) {
      for (const auto& s : j.at("r_sets")) inst.r_sets.push_back(interval_set(s));
    } else {
      inst.r_sets.push_back(interval_set(j.at("r_intervals")));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("r_intervals: ") + e.what());
  }
  if (j.contains("cost_model")) inst.cost_model = parse_cost_model(field<std::string>(j, "cost_model"));
  if (j.contains("objective")) inst.objective = parse_objective(field<std::string>(j, "objective"));
  validate(inst);
  return inst;
}

inline nlohmann::json to_json(const RapInstance& inst) {
  using namespace io_detail;
  nlohmann::json j{{"name", inst.name},
                   {"m", inst.m()},
                   {"n", inst.n()},
                   {"readiness", inst.rd},
                   {"wakeup", matrix_json(inst.p)},
                   {"cost", matrix_json(inst.cost)},
                   {"budget", inst.budget},
                   {"cost_model", to_string(inst.cost_model)},
                   {"objective", to_string(inst.objective)}};
  j["r_intervals"] = inst.r_sets.empty() ? nlohmann::json::array()
                                         : interval_set_json(inst.r_sets.front());
  nlohmann::json sets = nlohmann::json::array();
  for (const auto& s : inst.r_sets) sets.push_back(interval_set_json(s));
  j["r_sets"] = sets;
  if (!inst.function_names.empty()) j["function_names"] = inst.function_names;
  if (inst.unsupported.size() != 0) j["unsupported"] = matrix_json(inst.unsupported);
  return j;
}

inline RapInstance load_instance(const std::filesystem::path& path) {
  return instance_from_json(parse_json(read_text(path), path.string()));
}

/// `{"sets": [[[lo, hi], ...], ...]}`
inline std::vector<IntervalSet> load_interval_sets(const std::filesystem::path& path) {
  const auto j = parse_json(read_text(path), path.string());
  std::vector<IntervalSet> sets;
  try {
    for (const auto& s : j.at("sets")) sets.push_back(io_detail::interval_set(s));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("sets: ") + e.what());
  }
  return sets;
}

/// How an allocation file was interpreted.
enum class AllocationSource { Full, Placed };

struct LoadedAllocation {
  Allocation alloc;
  AllocationSource source = AllocationSource::Full;
};

/// A JSON object {"x": [[..]], "a": [[..]]} is taken as is. Anything else is
/// read as the text form "X bits / U counts" and A is filled by place_copies.
inline LoadedAllocation allocation_from_text(const std::string& text, const RapInstance& inst,
                                             double r_point) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    const auto j = parse_json(text, "allocation");
    Allocation alloc{io_detail::matrix_field<unsigned char>(j, "x", inst.m(), inst.n()),
                     io_detail::matrix_field<unsigned char>(j, "a", inst.m(), inst.n())};
    return {std::move(alloc), AllocationSource::Full};
  }
  const auto sol = parse_published(text, inst.m(), inst.n());
  return {place_copies(inst, sol.x, sol.u, r_point), AllocationSource::Placed};
}

inline nlohmann::json allocation_json(const Allocation& alloc) {
  return {{"x", io_detail::matrix_json(alloc.x)},
          {"a", io_detail::matrix_json(alloc.a)},
          {"text", format_allocation(alloc)}};
}

// Params files hold any subset of the fields; the rest keep their defaults.

inline GaParams ga_params_from_json(const nlohmann::json& j, GaParams p = {}) {
  try {
    p.p_size = j.value("p_size", p.p_size);
    p.p_cross = j.value("p_cross", p.p_cross);
    p.p_mutat = j.value("p_mutat", p.p_mutat);
    p.m_gen = j.value("m_gen", p.m_gen);
    p.d_runs = j.value("d_runs", p.d_runs);
    p.primary_steps = j.value("primary_steps", p.primary_steps);
    p.threshold_quantile = j.value("threshold_quantile", p.threshold_quantile);
    p.primary_phase = j.value("primary_phase", p.primary_phase);
    p.greedy_min_cells = j.value("greedy_min_cells", p.greedy_min_cells);
    if (j.contains("policy")) {
      const auto s = j.at("policy").get<std::string>();
      if (s == "optimistic") p.policy = ComparePolicy::Optimistic;
      else if (s == "pessimistic") p.policy = ComparePolicy::Pessimistic;
      else if (s == "combined") p.policy = ComparePolicy::Combined;
      else throw Error(ErrorCode::ParseError, "unknown policy '" + s + "'");
    }
    if (j.contains("early_stop")) {
      EarlyStop es;
      es.window = j.at("early_stop").value("window", es.window);
      es.delta = j.at("early_stop").value("delta", es.delta);
      p.early_stop = es;
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("GA params: ") + e.what());
  }
  p.validate();
  return p;
}

inline PsoParams pso_params_from_json(const nlohmann::json& j, PsoParams p = {}) {
  try {
    p.swarm = j.value("swarm", p.swarm);
    p.iterations = j.value("iterations", p.iterations);
    p.archive = j.value("archive", p.archive);
    p.phi1 = j.value("phi1", p.phi1);
    p.phi2 = j.value("phi2", p.phi2);
    p.w1 = j.value("w1", p.w1);
    p.w2 = j.value("w2", p.w2);
    p.neighborhood = j.value("neighborhood", p.neighborhood);
    if (j.contains("variant")) p.variant = parse_variant(j.at("variant").get<std::string>());
    if (j.contains("sub_mode")) {
      const auto s = j.at("sub_mode").get<std::string>();
      if (s == "moore") p.sub_mode = SubtractionMode::Moore;
      else if (s == "as-printed") p.sub_mode = SubtractionMode::AsPrinted;
      else throw Error(ErrorCode::ParseError, "sub_mode must be moore or as-printed");
    }
    if (j.contains("early_stop")) {
      EarlyStop es{20, 1e-9};
      es.window = j.at("early_stop").value("window", es.window);
      es.delta = j.at("early_stop").value("delta", es.delta);
      p.early_stop = es;
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("PSO params: ") + e.what());
  }
  p.validate();
  return p;
}

/// Writes through a temporary file and renames it into place.
inline void write_atomic(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw Error(ErrorCode::InvalidConfig, "cannot write " + tmp.string());
    out << content;
  }
  std::filesystem::rename(tmp, path);
}

struct SvgSeries {
  std::string name;
  std::vector<double> xs;
  std::vector<double> ys;
};

/// Static line chart. Purely a view of the given numbers.
inline std::string svg_line_chart(const std::string& title, const std::string& x_label,
                                  const std::string& y_label,
                                  const std::vector<SvgSeries>& series) {
  constexpr double W = 720, H = 440, L = 80, R = 160, T = 40, B = 60;
  double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  bool first = true;
  for (const auto& s : series) {
    for (std::size_t k = 0; k < s.xs.size(); ++k) {
      if (first) {
        x0 = x1 = s.xs[k];
        y0 = y1 = s.ys[k];
        first = false;
      }
      x0 = std::min(x0, s.xs[k]);
      x1 = std::max(x1, s.xs[k]);
      y0 = std::min(y0, s.ys[k]);
      y1 = std::max(y1, s.ys[k]);
    }
  }
  if (x1 == x0) x1 = x0 + 1;
  if (y1 == y0) y1 = y0 + 1e-6;
  auto px = [&](double x) { return L + (x - x0) / (x1 - x0) * (W - L - R); };
  auto py = [&](double y) { return H - B - (y - y0) / (y1 - y0) * (H - T - B); };
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                 "#9467bd", "#8c564b", "#17becf", "#7f7f7f"};

  std::ostringstream os;
  os.precision(10);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
     << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" << title
     << "</text>\n";
  os << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B
     << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B
     << "\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double xv = x0 + (x1 - x0) * k / 4.0;
    const double yv = y0 + (y1 - y0) * k / 4.0;
    os << "<text x=\"" << px(xv) << "\" y=\"" << H - B + 18 << "\" text-anchor=\"middle\">" << xv
       << "</text>\n";
    os << "<text x=\"" << L - 6 << "\" y=\"" << py(yv) + 4 << "\" text-anchor=\"end\">" << yv
       << "</text>\n";
  }
  os << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 16 << "\" text-anchor=\"middle\">"
     << x_label << "</text>\n";
  os << "<text transform=\"translate(18," << (T + H - B) / 2
     << ") rotate(-90)\" text-anchor=\"middle\">" << y_label << "</text>\n";
  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* color = colors[s % 8];
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t k = 0; k < series[s].xs.size(); ++k) {
      os << px(series[s].xs[k]) << ',' << py(series[s].ys[k]) << ' ';
    }
    os << "\"/>\n";
    os << "<text x=\"" << W - R + 10 << "\" y=\"" << T + 16 * (s + 1) << "\" fill=\"" << color
       << "\">" << series[s].name << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace oicrel
