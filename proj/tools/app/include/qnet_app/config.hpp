#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qnet/model/network.hpp"

namespace qnet::app {

/// Malformed file, unknown key or out-of-domain value.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// INI-style configuration: `[section]` headers, `key = value` lines and
/// `#` or `;` comments. Keys carry their unit as a suffix (omega1_mhz, t1_us).
class Config {
 public:
  using Section = std::map<std::string, std::string>;

  static Config parse(std::istream& in, const std::string& origin = "<input>");
  static Config load(const std::filesystem::path& path);

  /// Applies `section.key=value`.
  void set_dotted(const std::string& assignment);
  void set(const std::string& section, const std::string& key, std::string value);
  std::optional<std::string> find(const std::string& section, const std::string& key) const;
  const std::map<std::string, Section>& sections() const { return sections_; }

  std::string serialize() const;

 private:
  std::map<std::string, Section> sections_;
};

/// Accepts decimal and exponent notation plus `inf`.
double parse_number(const std::string& text, const std::string& where);
long parse_integer(const std::string& text, const std::string& where);
bool parse_bool(const std::string& text, const std::string& where);
std::string format_number(double value);

inline constexpr const char* device_section = "device";
inline constexpr const char* drive_section = "drive";
inline constexpr const char* scenario_section = "scenario";
inline constexpr const char* output_section = "output";

const std::vector<std::string>& device_keys();
const std::vector<std::string>& drive_keys();
const std::vector<std::string>& output_keys();

/// Missing keys fall back to the reference device. Throws ConfigError.
NetworkModel build_device(const Config& cfg);
DriveConfig build_drive(const Config& cfg);

/// Writes every device and drive field back as config keys.
void store_device(const NetworkModel& model, Config& cfg);
void store_drive(const DriveConfig& drive, Config& cfg);

}  // namespace qnet::app
