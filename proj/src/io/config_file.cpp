#include "hospsim/io/config_file.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace hospsim {

ConfigError::ConfigError(std::string field, int line, const std::string& what)
    : std::runtime_error((line > 0 ? "line " + std::to_string(line) + ": " : std::string()) +
                         (field.empty() ? what : field + ": " + what)),
      field_(std::move(field)),
      line_(line) {}

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Shortest text that parses back to the same double.
std::string fmt_double(double v) {
  char buf[40];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ec == std::errc() ? end : buf);
}

double parse_double(std::string_view key, std::string_view text) {
  text = trim(text);
  double v = 0.0;
  const auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || p != text.data() + text.size() || text.empty()) {
    throw ConfigError(std::string(key), 0, "expected a number, got '" + std::string(text) + "'");
  }
  return v;
}

long parse_int(std::string_view key, std::string_view text) {
  text = trim(text);
  long v = 0;
  const auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || p != text.data() + text.size() || text.empty()) {
    throw ConfigError(std::string(key), 0, "expected an integer, got '" + std::string(text) + "'");
  }
  return v;
}

std::vector<double> parse_list(std::string_view key, std::string_view text, std::size_t min_n, std::size_t max_n) {
  std::vector<double> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    out.push_back(parse_double(key, text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (out.size() < min_n || out.size() > max_n) {
    const std::string want = min_n == max_n ? std::to_string(min_n) : std::to_string(min_n) + " or " + std::to_string(max_n);
    throw ConfigError(std::string(key), 0, "expected " + want + " comma-separated numbers, got " + std::to_string(out.size()));
  }
  return out;
}

std::string fmt_list(const double* v, std::size_t n) {
  std::string s;
  for (std::size_t i = 0; i < n; ++i) s += (i ? ", " : "") + fmt_double(v[i]);
  return s;
}

struct Field {
  std::function<void(ScenarioConfig&, std::string_view key, std::string_view value)> set;
  std::function<std::string(const ScenarioConfig&)> get;
};

using Registry = std::vector<std::pair<std::string, Field>>;

template <typename Access>
Field real(Access acc) {
  return {[acc](ScenarioConfig& c, std::string_view k, std::string_view v) { acc(c) = parse_double(k, v); },
          [acc](const ScenarioConfig& c) { return fmt_double(acc(const_cast<ScenarioConfig&>(c))); }};
}

template <typename Access>
Field integer(Access acc) {
  return {[acc](ScenarioConfig& c, std::string_view k, std::string_view v) {
            const long x = parse_int(k, v);
            if (x < INT32_MIN || x > INT32_MAX) throw ConfigError(std::string(k), 0, "integer out of range");
            acc(c) = static_cast<int>(x);
          },
          [acc](const ScenarioConfig& c) { return std::to_string(acc(const_cast<ScenarioConfig&>(c))); }};
}

template <typename Access>
Field boolean(Access acc) {
  return {[acc](ScenarioConfig& c, std::string_view k, std::string_view v) {
            v = trim(v);
            if (v == "true" || v == "1") {
              acc(c) = true;
            } else if (v == "false" || v == "0") {
              acc(c) = false;
            } else {
              throw ConfigError(std::string(k), 0, "expected true or false, got '" + std::string(v) + "'");
            }
          },
          [acc](const ScenarioConfig& c) { return std::string(acc(const_cast<ScenarioConfig&>(c)) ? "true" : "false"); }};
}

// Fixed-length list stored contiguously (std::array<double, N> or nested arrays of double).
template <std::size_t N, typename Access>
Field list(Access acc) {
  return {[acc](ScenarioConfig& c, std::string_view k, std::string_view v) {
            const auto xs = parse_list(k, v, N, N);
            double* dst = acc(c);
            for (std::size_t i = 0; i < N; ++i) dst[i] = xs[i];
          },
          [acc](const ScenarioConfig& c) { return fmt_list(acc(const_cast<ScenarioConfig&>(c)), N); }};
}

template <typename Access>
Field triangular(Access acc) {
  return {[acc](ScenarioConfig& c, std::string_view k, std::string_view v) {
            const auto xs = parse_list(k, v, 2, 3);
            acc(c) = xs.size() == 2 ? Triangular::symmetric(xs[0], xs[1]) : Triangular{xs[0], xs[1], xs[2]};
          },
          [acc](const ScenarioConfig& c) {
            const Triangular& t = acc(const_cast<ScenarioConfig&>(c));
            const double v[3] = {t.min, t.max, t.mode};
            return fmt_list(v, 3);
          }};
}

const Registry& registry() {
  static const Registry r = [] {
    Registry r;
    for (std::size_t s = 0; s < kSpecialtyCount; ++s) {
      r.emplace_back("beds.section" + std::to_string(s + 1), integer([s](ScenarioConfig& c) -> int& { return c.beds[s]; }));
    }
    for (std::size_t s = 0; s < kSpecialtyCount; ++s) {
      r.emplace_back("specialists.section" + std::to_string(s + 1),
                     integer([s](ScenarioConfig& c) -> int& { return c.specialists[s]; }));
    }
    r.emplace_back("K", real([](ScenarioConfig& c) -> double& { return c.K; }));
    r.emplace_back("L", real([](ScenarioConfig& c) -> double& { return c.L; }));
    r.emplace_back("M", integer([](ScenarioConfig& c) -> int& { return c.M; }));
    r.emplace_back("N", integer([](ScenarioConfig& c) -> int& { return c.N; }));
    r.emplace_back("O", integer([](ScenarioConfig& c) -> int& { return c.O; }));
    r.emplace_back("P", real([](ScenarioConfig& c) -> double& { return c.P; }));
    r.emplace_back("horizon_days", real([](ScenarioConfig& c) -> double& { return c.horizon_days; }));
    r.emplace_back("warmup_days", real([](ScenarioConfig& c) -> double& { return c.warmup_days; }));
    r.emplace_back("mode", Field{[](ScenarioConfig& c, std::string_view k, std::string_view v) {
                                   v = trim(v);
                                   if (v == "hybrid") {
                                     c.mode = Mode::Hybrid;
                                   } else if (v == "des-only") {
                                     c.mode = Mode::DesOnly;
                                   } else {
                                     throw ConfigError(std::string(k), 0, "expected hybrid or des-only, got '" + std::string(v) + "'");
                                   }
                                 },
                                 [](const ScenarioConfig& c) { return std::string(to_string(c.mode)); }});
    r.emplace_back("replications", integer([](ScenarioConfig& c) -> int& { return c.replications; }));

    r.emplace_back("clinical.arrival_rate_per_day", real([](ScenarioConfig& c) -> double& { return c.clinical.arrival_rate_per_day; }));
    r.emplace_back("clinical.tourist_probability", real([](ScenarioConfig& c) -> double& { return c.clinical.tourist_probability; }));
    r.emplace_back("clinical.gp_count", integer([](ScenarioConfig& c) -> int& { return c.clinical.gp_count; }));
    r.emplace_back("clinical.triage_minutes", triangular([](ScenarioConfig& c) -> Triangular& { return c.clinical.triage_minutes; }));
    r.emplace_back("clinical.length_of_stay_days",
                   triangular([](ScenarioConfig& c) -> Triangular& { return c.clinical.length_of_stay_days; }));
    r.emplace_back("clinical.home_treatment_days",
                   triangular([](ScenarioConfig& c) -> Triangular& { return c.clinical.home_treatment_days; }));
    r.emplace_back("clinical.recommendation", list<3>([](ScenarioConfig& c) { return c.clinical.recommendation.data(); }));
    r.emplace_back("clinical.recover_after_stay", real([](ScenarioConfig& c) -> double& { return c.clinical.recover_after_stay; }));
    r.emplace_back("clinical.tourist_online_pref", real([](ScenarioConfig& c) -> double& { return c.clinical.tourist_online_pref; }));
    r.emplace_back("clinical.local_online_pref", real([](ScenarioConfig& c) -> double& { return c.clinical.local_online_pref; }));
    r.emplace_back("clinical.hosp_pref", real([](ScenarioConfig& c) -> double& { return c.clinical.hosp_pref; }));
    r.emplace_back("clinical.trait_weights", list<kTraits>([](ScenarioConfig& c) { return c.clinical.trait_weights.data(); }));
    r.emplace_back("clinical.min_age", integer([](ScenarioConfig& c) -> int& { return c.clinical.min_age; }));
    r.emplace_back("clinical.max_age", integer([](ScenarioConfig& c) -> int& { return c.clinical.max_age; }));
    r.emplace_back("clinical.paediatric_max_age", integer([](ScenarioConfig& c) -> int& { return c.clinical.paediatric_max_age; }));

#define HOSPSIM_BEH_REAL(name) r.emplace_back("behaviour." #name, real([](ScenarioConfig& c) -> double& { return c.behaviour.name; }))
    HOSPSIM_BEH_REAL(anxious_factor);
    HOSPSIM_BEH_REAL(disagree_mismatch);
    HOSPSIM_BEH_REAL(disagree_match);
    HOSPSIM_BEH_REAL(channel_disagree_mismatch);
    HOSPSIM_BEH_REAL(channel_disagree_match);
    HOSPSIM_BEH_REAL(recheck_yield);
    HOSPSIM_BEH_REAL(channel_pref_shift);
    HOSPSIM_BEH_REAL(confirmation_window_minutes);
    r.emplace_back("behaviour.worry_threshold", integer([](ScenarioConfig& c) -> int& { return c.behaviour.worry_threshold; }));
    HOSPSIM_BEH_REAL(leave_threshold_days);
    r.emplace_back("behaviour.five_day_timer", boolean([](ScenarioConfig& c) -> bool& { return c.behaviour.five_day_timer; }));
    r.emplace_back("behaviour.shortage_threshold", integer([](ScenarioConfig& c) -> int& { return c.behaviour.shortage_threshold; }));
    HOSPSIM_BEH_REAL(doctor_change_scale);
    HOSPSIM_BEH_REAL(self_discharge_prob);
    HOSPSIM_BEH_REAL(popularity_completed);
    HOSPSIM_BEH_REAL(popularity_contested);
    HOSPSIM_BEH_REAL(popularity_abandoned);
    HOSPSIM_BEH_REAL(popularity_min);
    HOSPSIM_BEH_REAL(popularity_max);
#undef HOSPSIM_BEH_REAL

    r.emplace_back("adherence.base", list<9>([](ScenarioConfig& c) { return c.adherence.base[0].data(); }));
    r.emplace_back("adherence.age_tilt", list<kAgeBands>([](ScenarioConfig& c) { return c.adherence.age_tilt.data(); }));
    r.emplace_back("adherence.gender_tilt", list<kGenders>([](ScenarioConfig& c) { return c.adherence.gender_tilt.data(); }));
    r.emplace_back("adherence.trait_tilt", list<kTraits>([](ScenarioConfig& c) { return c.adherence.trait_tilt.data(); }));
    r.emplace_back("adherence.health_tilt", list<kHealthLevels>([](ScenarioConfig& c) { return c.adherence.health_tilt.data(); }));
    r.emplace_back("adherence.shortage_tilt", real([](ScenarioConfig& c) -> double& { return c.adherence.shortage_tilt; }));
    r.emplace_back("adherence.availability", list<4>([](ScenarioConfig& c) { return c.adherence.availability[0].data(); }));
    const char* levels[] = {"good", "partial", "poor"};
    for (std::size_t a = 0; a < kAdherenceLevels; ++a) {
      r.emplace_back(std::string("adherence.health.") + levels[a],
                     list<9>([a](ScenarioConfig& c) { return c.adherence.health[a][0].data(); }));
    }
    return r;
  }();
  return r;
}

const Field* find_field(std::string_view key) {
  for (const auto& [k, f] : registry()) {
    if (k == key) return &f;
  }
  return nullptr;
}

// Field named at the start of a validation message ("beds.section3 must ...").
std::string leading_field(const std::string& msg) {
  const auto sp = msg.find_first_of(" :");
  return sp == std::string::npos ? std::string() : msg.substr(0, sp);
}

}  // namespace

void set_config_value(ScenarioConfig& config, std::string_view key, std::string_view value) {
  const Field* f = find_field(key);
  if (f == nullptr) throw ConfigError(std::string(key), 0, "unknown key");
  f->set(config, key, value);
}

ScenarioConfig parse_config(std::string_view text, const ScenarioConfig& base) {
  ScenarioConfig c = base;
  std::set<std::string, std::less<>> seen;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError("", line_no, "expected 'key = value', got '" + std::string(line) + "'");
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    if (!seen.insert(key).second) throw ConfigError(key, line_no, "key given twice");
    try {
      set_config_value(c, key, value);
    } catch (const ConfigError& e) {
      throw ConfigError(e.field(), line_no, std::string(e.what()).substr(e.field().size() + 2));
    }
  }
  try {
    c.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(leading_field(e.what()), 0, std::string(e.what()).substr(leading_field(e.what()).size() + 1));
  }
  return c;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("", 0, "cannot read config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string dump_config(const ScenarioConfig& config) {
  std::string out;
  for (const auto& [k, f] : registry()) out += k + " = " + f.get(config) + "\n";
  return out;
}

std::vector<std::string> config_keys() {
  std::vector<std::string> keys;
  for (const auto& [k, f] : registry()) keys.push_back(k);
  return keys;
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string config_hash(const ScenarioConfig& config) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(dump_config(config))));
  return buf;
}

}  // namespace hospsim
