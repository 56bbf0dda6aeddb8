#include "qnet_app/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "qnet/util/errors.hpp"

namespace qnet::app {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool valid_name(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isalnum(c) || c == '_'; });
}

const Config::Section* section_of(const Config& cfg, const std::string& name) {
  const auto it = cfg.sections().find(name);
  return it == cfg.sections().end() ? nullptr : &it->second;
}

void check_known(const Config& cfg, const std::string& section, const std::vector<std::string>& known) {
  const Config::Section* s = section_of(cfg, section);
  if (!s) return;
  for (const auto& [key, value] : *s)
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw ConfigError("unknown key '" + key + "' in [" + section + "]");
}

double number_or(const Config& cfg, const std::string& section, const std::string& key, double fallback) {
  const auto v = cfg.find(section, key);
  return v ? parse_number(*v, section + "." + key) : fallback;
}

}  // namespace

Config Config::parse(std::istream& in, const std::string& origin) {
  Config cfg;
  std::string line, current;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string where = origin + ":" + std::to_string(lineno);
    const auto comment = line.find_first_of("#;");
    const std::string text = trim(comment == std::string::npos ? line : line.substr(0, comment));
    if (text.empty()) continue;
    if (text.front() == '[') {
      if (text.back() != ']') throw ConfigError(where + ": unterminated section header");
      current = trim(text.substr(1, text.size() - 2));
      if (!valid_name(current)) throw ConfigError(where + ": bad section name '" + current + "'");
      cfg.sections_[current];
      continue;
    }
    const auto eq = text.find('=');
    if (eq == std::string::npos) throw ConfigError(where + ": expected key = value");
    if (current.empty()) throw ConfigError(where + ": key outside of any section");
    const std::string key = trim(text.substr(0, eq));
    if (!valid_name(key)) throw ConfigError(where + ": bad key '" + key + "'");
    if (cfg.sections_[current].count(key)) throw ConfigError(where + ": duplicate key '" + key + "'");
    cfg.sections_[current][key] = trim(text.substr(eq + 1));
  }
  return cfg;
}

Config Config::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path.string() + "'");
  return parse(in, path.string());
}

void Config::set_dotted(const std::string& assignment) {
  const auto eq = assignment.find('=');
  const auto dot = assignment.find('.');
  if (eq == std::string::npos || dot == std::string::npos || dot > eq)
    throw ConfigError("override '" + assignment + "' is not of the form section.key=value");
  const std::string section = trim(assignment.substr(0, dot));
  const std::string key = trim(assignment.substr(dot + 1, eq - dot - 1));
  if (!valid_name(section) || !valid_name(key)) throw ConfigError("bad override key in '" + assignment + "'");
  set(section, key, trim(assignment.substr(eq + 1)));
}

void Config::set(const std::string& section, const std::string& key, std::string value) {
  sections_[section][key] = std::move(value);
}

std::optional<std::string> Config::find(const std::string& section, const std::string& key) const {
  const Section* s = section_of(*this, section);
  if (!s) return std::nullopt;
  const auto it = s->find(key);
  if (it == s->end()) return std::nullopt;
  return it->second;
}

std::string Config::serialize() const {
  std::ostringstream out;
  bool first = true;
  for (const auto& [name, section] : sections_) {
    if (!first) out << '\n';
    first = false;
    out << '[' << name << "]\n";
    for (const auto& [key, value] : section) out << key << " = " << value << '\n';
  }
  return out.str();
}

double parse_number(const std::string& text, const std::string& where) {
  const std::string t = trim(text);
  if (t == "inf" || t == "+inf") return std::numeric_limits<double>::infinity();
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size() || !std::isfinite(v))
    throw ConfigError(where + ": '" + text + "' is not a number");
  return v;
}

long parse_integer(const std::string& text, const std::string& where) {
  const std::string t = trim(text);
  long v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size())
    throw ConfigError(where + ": '" + text + "' is not an integer");
  return v;
}

bool parse_bool(const std::string& text, const std::string& where) {
  const std::string t = trim(text);
  if (t == "true" || t == "yes" || t == "on" || t == "1") return true;
  if (t == "false" || t == "no" || t == "off" || t == "0") return false;
  throw ConfigError(where + ": '" + text + "' is not a boolean");
}

std::string format_number(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

const std::vector<std::string>& device_keys() {
  static const std::vector<std::string> keys{
      "q1_frequency_mhz", "q1_t1_us",       "q1_t2r_us",        "q1_t2e_us",       "q1_dim",
      "q2_frequency_mhz", "q2_t1_us",       "q2_t2r_us",        "q2_t2e_us",       "q2_dim",
      "bus_frequency_mhz", "bus_lifetime_us", "bus_quality_factor", "bus_dim",       "chi_q1_bus_mhz",
      "chi_q2_bus_mhz",   "chi_q1_q2_khz",  "dephasing",        "cross_kerr"};
  return keys;
}

const std::vector<std::string>& drive_keys() {
  static const std::vector<std::string> keys{"omega1_mhz",            "omega2_mhz", "detuning_mhz",
                                             "relative_detuning_mhz", "phase1_rad", "phase2_rad",
                                             "envelope",              "t_eff_ns",   "sigma_ns",
                                             "padding_ns"};
  return keys;
}

const std::vector<std::string>& output_keys() {
  static const std::vector<std::string> keys{"dir", "overwrite"};
  return keys;
}

NetworkModel build_device(const Config& cfg) {
  check_known(cfg, device_section, device_keys());
  NetworkModel m = NetworkModel::reference_device();
  const std::string d = device_section;
  auto qubit = [&](QubitSpec& q, const std::string& p) {
    q.frequency = AngularFrequency::mhz(number_or(cfg, d, p + "_frequency_mhz", q.frequency.in_mhz()));
    q.t1_s = number_or(cfg, d, p + "_t1_us", q.t1_s / us) * us;
    q.t2_ramsey_s = number_or(cfg, d, p + "_t2r_us", q.t2_ramsey_s / us) * us;
    q.t2_echo_s = number_or(cfg, d, p + "_t2e_us", q.t2_echo_s / us) * us;
    if (const auto v = cfg.find(d, p + "_dim")) q.dim = static_cast<int>(parse_integer(*v, d + "." + p + "_dim"));
  };
  qubit(m.q1, "q1");
  qubit(m.q2, "q2");
  m.bus.frequency = AngularFrequency::mhz(number_or(cfg, d, "bus_frequency_mhz", m.bus.frequency.in_mhz()));
  m.bus.lifetime_s = number_or(cfg, d, "bus_lifetime_us", m.bus.lifetime_s / us) * us;
  if (const auto v = cfg.find(d, "bus_dim")) m.bus.dim = static_cast<int>(parse_integer(*v, d + ".bus_dim"));
  m.chi.q1_bus = AngularFrequency::mhz(number_or(cfg, d, "chi_q1_bus_mhz", m.chi.q1_bus.in_mhz()));
  m.chi.q2_bus = AngularFrequency::mhz(number_or(cfg, d, "chi_q2_bus_mhz", m.chi.q2_bus.in_mhz()));
  m.chi.q1_q2 = AngularFrequency::khz(number_or(cfg, d, "chi_q1_q2_khz", m.chi.q1_q2.in_hz() / 1e3));
  if (const auto v = cfg.find(d, "dephasing")) {
    if (*v == "ramsey")
      m.dephasing = DephasingSource::Ramsey;
    else if (*v == "echo")
      m.dephasing = DephasingSource::Echo;
    else
      throw ConfigError("device.dephasing must be 'ramsey' or 'echo', got '" + *v + "'");
  }
  if (const auto v = cfg.find(d, "cross_kerr")) m.cross_kerr_enabled = parse_bool(*v, d + ".cross_kerr");
  try {
    m.validate();
    if (const auto v = cfg.find(d, "bus_quality_factor"))
      check_quality_factor(m, parse_number(*v, d + ".bus_quality_factor"));
  } catch (const qnet::InvalidArgument& e) {
    throw ConfigError(std::string("device: ") + e.what());
  }
  return m;
}

DriveConfig build_drive(const Config& cfg) {
  check_known(cfg, drive_section, drive_keys());
  const std::string d = drive_section;
  DriveConfig drive = DriveConfig::resonant(AngularFrequency::mhz(number_or(cfg, d, "omega1_mhz", 5.0)));
  drive.omega2 = AngularFrequency::mhz(number_or(cfg, d, "omega2_mhz", drive.omega1.in_mhz()));
  drive.detuning = AngularFrequency::mhz(number_or(cfg, d, "detuning_mhz", 0.0));
  drive.relative_detuning = AngularFrequency::mhz(number_or(cfg, d, "relative_detuning_mhz", 0.0));
  drive.phase1 = number_or(cfg, d, "phase1_rad", 0.0);
  drive.phase2 = number_or(cfg, d, "phase2_rad", 0.0);
  const std::string envelope = cfg.find(d, "envelope").value_or("constant");
  const bool shaped_keys = cfg.find(d, "t_eff_ns") || cfg.find(d, "sigma_ns") || cfg.find(d, "padding_ns");
  if (envelope == "shaped") {
    const auto t_eff = cfg.find(d, "t_eff_ns");
    if (!t_eff) throw ConfigError("drive.envelope = shaped needs drive.t_eff_ns");
    const PulseShape p = PulseShape::padded(parse_number(*t_eff, d + ".t_eff_ns") * ns,
                                            number_or(cfg, d, "sigma_ns", 4.0) * ns,
                                            number_or(cfg, d, "padding_ns", 40.0) * ns);
    drive.envelope1 = p;
    drive.envelope2 = p;
  } else if (envelope != "constant") {
    throw ConfigError("drive.envelope must be 'constant' or 'shaped', got '" + envelope + "'");
  } else if (shaped_keys) {
    throw ConfigError("pulse keys in [drive] need drive.envelope = shaped");
  }
  try {
    drive.validate();
    if (drive.envelope1) drive.envelope1->validate();
  } catch (const qnet::InvalidArgument& e) {
    throw ConfigError(std::string("drive: ") + e.what());
  }
  return drive;
}

void store_device(const NetworkModel& m, Config& cfg) {
  const std::string d = device_section;
  auto qubit = [&](const QubitSpec& q, const std::string& p) {
    cfg.set(d, p + "_frequency_mhz", format_number(q.frequency.in_mhz()));
    cfg.set(d, p + "_t1_us", format_number(q.t1_s / us));
    cfg.set(d, p + "_t2r_us", format_number(q.t2_ramsey_s / us));
    cfg.set(d, p + "_t2e_us", format_number(q.t2_echo_s / us));
    cfg.set(d, p + "_dim", std::to_string(q.dim));
  };
  qubit(m.q1, "q1");
  qubit(m.q2, "q2");
  cfg.set(d, "bus_frequency_mhz", format_number(m.bus.frequency.in_mhz()));
  cfg.set(d, "bus_lifetime_us", format_number(m.bus.lifetime_s / us));
  cfg.set(d, "bus_dim", std::to_string(m.bus.dim));
  cfg.set(d, "chi_q1_bus_mhz", format_number(m.chi.q1_bus.in_mhz()));
  cfg.set(d, "chi_q2_bus_mhz", format_number(m.chi.q2_bus.in_mhz()));
  cfg.set(d, "chi_q1_q2_khz", format_number(m.chi.q1_q2.in_hz() / 1e3));
  cfg.set(d, "dephasing", m.dephasing == DephasingSource::Echo ? "echo" : "ramsey");
  cfg.set(d, "cross_kerr", m.cross_kerr_enabled ? "true" : "false");
}

void store_drive(const DriveConfig& drive, Config& cfg) {
  const std::string d = drive_section;
  cfg.set(d, "omega1_mhz", format_number(drive.omega1.in_mhz()));
  cfg.set(d, "omega2_mhz", format_number(drive.omega2.in_mhz()));
  cfg.set(d, "detuning_mhz", format_number(drive.detuning.in_mhz()));
  cfg.set(d, "relative_detuning_mhz", format_number(drive.relative_detuning.in_mhz()));
  cfg.set(d, "phase1_rad", format_number(drive.phase1));
  cfg.set(d, "phase2_rad", format_number(drive.phase2));
  if (drive.envelope1) {
    cfg.set(d, "envelope", "shaped");
    cfg.set(d, "t_eff_ns", format_number(drive.envelope1->effective_s / ns));
    cfg.set(d, "sigma_ns", format_number(drive.envelope1->sigma_s / ns));
    cfg.set(d, "padding_ns", format_number((drive.envelope1->total_s - drive.envelope1->effective_s) / ns));
  } else {
    cfg.set(d, "envelope", "constant");
  }
}

}  // namespace qnet::app
