#include "hospsim/metrics/trace.hpp"

#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace hospsim {

namespace {

std::string hex(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%a", v);
  return buf;
}

std::string hex(SimTime t) { return hex(t.minutes()); }

double parse_double(const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0') throw std::runtime_error("trace: bad number '" + s + "'");
  return v;
}

unsigned long long parse_uint(const std::string& s) {
  char* end = nullptr;
  const unsigned long long v = std::strtoull(s.c_str(), &end, 10);
  if (end == s.c_str() || *end != '\0') throw std::runtime_error("trace: bad integer '" + s + "'");
  return v;
}

}  // namespace

void write_trace(std::ostream& os, const ReplicationTrace& t) {
  os << "trace 1\n";
  os << "mode " << (t.mode == Mode::Hybrid ? "hybrid" : "des") << '\n';
  os << "window " << hex(t.warmup) << ' ' << hex(t.end) << '\n';
  os << "beds";
  for (int b : t.baseline_beds) os << ' ' << b;
  os << '\n';
  for (const auto& p : t.patients) {
    os << "P " << p.id << ' ' << static_cast<int>(p.type) << ' ' << p.disease << ' ' << hex(p.arrival) << ' '
       << static_cast<int>(p.exit) << ' ' << hex(p.exit_time) << ' ' << static_cast<int>(p.final_state) << '\n';
  }
  for (const auto& s : t.spans) {
    os << "S " << s.patient << ' ' << static_cast<int>(s.kind) << ' ' << hex(s.start) << ' ' << hex(s.end) << ' '
       << (s.censored ? 1 : 0) << '\n';
  }
  for (const auto& e : t.escalations) os << "E " << e.patient << ' ' << hex(e.time) << '\n';
  for (const auto& w : t.work) {
    os << "W " << w.doctor << ' ' << w.specialty << ' ' << hex(w.start) << ' ' << hex(w.end) << ' '
       << (w.scheduled ? 1 : 0) << '\n';
  }
  os << "end\n";
}

ReplicationTrace read_trace(std::istream& is) {
  ReplicationTrace t;
  std::string line;
  if (!std::getline(is, line) || line != "trace 1") throw std::runtime_error("trace: missing 'trace 1' header");
  bool done = false;
  while (std::getline(is, line)) {
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    auto next = [&]() {
      std::string f;
      if (!(ls >> f)) throw std::runtime_error("trace: truncated record '" + line + "'");
      return f;
    };
    if (tag == "mode") {
      t.mode = next() == "hybrid" ? Mode::Hybrid : Mode::DesOnly;
    } else if (tag == "window") {
      t.warmup = SimTime{parse_double(next())};
      t.end = SimTime{parse_double(next())};
    } else if (tag == "beds") {
      for (int& b : t.baseline_beds) b = static_cast<int>(parse_uint(next()));
    } else if (tag == "P") {
      PatientRecord p;
      p.id = parse_uint(next());
      p.type = static_cast<PatientType>(parse_uint(next()));
      p.disease = parse_uint(next());
      p.arrival = SimTime{parse_double(next())};
      p.exit = static_cast<ExitKind>(parse_uint(next()));
      p.exit_time = SimTime{parse_double(next())};
      p.final_state = static_cast<PatientState>(parse_uint(next()));
      t.patients.push_back(p);
    } else if (tag == "S") {
      WaitSpan s;
      s.patient = parse_uint(next());
      s.kind = static_cast<SpanKind>(parse_uint(next()));
      s.start = SimTime{parse_double(next())};
      s.end = SimTime{parse_double(next())};
      s.censored = parse_uint(next()) != 0;
      t.spans.push_back(s);
    } else if (tag == "E") {
      EscalationRecord e;
      e.patient = parse_uint(next());
      e.time = SimTime{parse_double(next())};
      t.escalations.push_back(e);
    } else if (tag == "W") {
      WorkInterval w;
      w.doctor = parse_uint(next());
      w.specialty = parse_uint(next());
      w.start = SimTime{parse_double(next())};
      w.end = SimTime{parse_double(next())};
      w.scheduled = parse_uint(next()) != 0;
      t.work.push_back(w);
    } else if (tag == "end") {
      done = true;
      break;
    } else {
      throw std::runtime_error("trace: unknown record '" + tag + "'");
    }
  }
  if (!done) throw std::runtime_error("trace: missing 'end' marker");
  return t;
}

}  // namespace hospsim
