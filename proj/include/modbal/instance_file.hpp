#pragma once

// JSON instance files. One format carries either an abstract problem (slot
// model and/or window jobs) or a home-building plan, selected by "mode".
// The layout is documented in docs/instance-schema.md.

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "modbal/balance.hpp"
#include "modbal/core_model.hpp"
#include "modbal/homebuilding.hpp"
#include "modbal/improve.hpp"
#include "modbal/jit_metrics.hpp"

namespace modbal {

inline constexpr int kFormatVersion = 1;

enum class Mode { Abstract, Homebuilding };

std::string to_string(Mode mode);

struct SlotModelData {
  ElementUniverse universe;
  std::vector<CompositeJob> jobs;
  TimeGrid grid;
  SlotSchedule schedule;  // schedule.processors doubles as the processor list
  std::optional<CountVector> reference_profile;
  std::optional<double> delta_max;

  bool operator==(const SlotModelData&) const = default;
};

struct WindowData {
  std::vector<WindowJob> jobs;
  PenaltyWeights weights;

  bool operator==(const WindowData&) const = default;
};

struct ExplicitCorrections {
  double budget = 0.0;
  std::vector<CorrectionGroup> groups;

  bool operator==(const ExplicitCorrections&) const = default;
};

struct HomebuildingData {
  std::string first_month;  // "YYYY-MM", label only
  HousingModel model;
  TeamSchedule schedule;
  CountVector capacity;  // per detail, +inf when unlimited
  std::optional<RequirementTable> reference;
  std::optional<ExplicitCorrections> corrections;

  bool operator==(const HomebuildingData&) const = default;
};

struct InstanceFile {
  int format_version = kFormatVersion;
  std::string name;
  Mode mode = Mode::Abstract;
  std::optional<SlotModelData> slot_model;
  std::optional<WindowData> windows;
  std::optional<HomebuildingData> homebuilding;
  LoopParams improve;

  bool operator==(const InstanceFile&) const = default;
};

/// File cannot be read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Text is not JSON. The message carries the line and column.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// JSON does not follow the instance schema. path() is a JSON pointer.
class SchemaError : public std::runtime_error {
 public:
  SchemaError(std::string path, const std::string& message);

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

InstanceFile parse_instance(const std::string& text);
std::string serialize_instance(const InstanceFile& instance);

InstanceFile load_instance(const std::filesystem::path& path);
void save_instance(const InstanceFile& instance, const std::filesystem::path& path);

/// Runs every model validator on the populated parts. Throws ValidationError.
void validate_file(const InstanceFile& instance);

/// Validated slot-model instance built from the file data.
Instance slot_instance(const SlotModelData& data);

}  // namespace modbal
