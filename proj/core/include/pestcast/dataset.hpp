#pragma once

#include "pestcast/dates.hpp"

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace pestcast::dataset {

/// One pheromone-trap inspection: insects counted since the previous visit.
struct TrapVisitRecord {
    std::string trap_id;
    double lat = 0.0;
    double lon = 0.0;
    Date date;
    int catches = 0;

    bool operator==(const TrapVisitRecord&) const = default;
};

/// Daily weather at a trap location. Triples are (min, max, mean) of the
/// hourly values; ap_sum is the day's accumulated precipitation in mm.
struct DailyWeatherRecord {
    std::string trap_id;
    Date date;
    double t2m_min = 0.0, t2m_max = 0.0, t2m_mean = 0.0;
    double tsoil_min = 0.0, tsoil_max = 0.0, tsoil_mean = 0.0;
    double rh_min = 0.0, rh_max = 0.0, rh_mean = 0.0;
    double ap_sum = 0.0;
    double dp_min = 0.0, dp_max = 0.0, dp_mean = 0.0;
    double ws_min = 0.0, ws_max = 0.0, ws_mean = 0.0;

    bool operator==(const DailyWeatherRecord&) const = default;
};

/// Satellite vegetation indices at a trap location. Sparse in time and any
/// single index may be absent for a given acquisition.
struct VegIndexRecord {
    std::string trap_id;
    Date date;
    std::optional<double> ndvi, ndwi, ndmi, gi, gcvi;

    bool operator==(const VegIndexRecord&) const = default;
};

/// Everything known about one (trap, inspection day) pair before feature
/// engineering. weather_window covers the window_days consecutive days up to
/// and including prediction_date; vi_window covers the same trailing span
/// (inclusive of both endpoints, so integration has both boundary days).
struct RawInstance {
    std::string trap_id;
    Date prediction_date;
    double lat = 0.0;
    double lon = 0.0;
    std::vector<std::pair<Date, int>> catch_history; // ascending, strictly before prediction_date
    std::vector<DailyWeatherRecord> weather_window;  // ascending by date
    std::vector<VegIndexRecord> vi_window;           // ascending by date
    int label_catches = 0;
};

struct RejectedInstance {
    std::string trap_id;
    Date prediction_date;
    std::vector<std::string> reasons;
};

struct AssembledInstances {
    std::vector<RawInstance> valid;
    std::vector<RejectedInstance> rejected;
};

// CSV loading. All loaders verify the schema header, parse with per-line
// error reporting, sort by (trap_id, date) and reject duplicate keys.
std::vector<TrapVisitRecord> load_trap_csv(const std::filesystem::path& path);
std::vector<DailyWeatherRecord> load_weather_csv(const std::filesystem::path& path);
std::vector<VegIndexRecord> load_vi_csv(const std::filesystem::path& path);

void write_trap_csv(const std::filesystem::path& path, std::span<const TrapVisitRecord> records);
void write_weather_csv(const std::filesystem::path& path, std::span<const DailyWeatherRecord> records);
void write_vi_csv(const std::filesystem::path& path, std::span<const VegIndexRecord> records);

// Record-level validation, shared by the loaders and the synthetic generator's
// output tests. Throws ValidationError with a description of the first failure.
void validate_trap_records(std::span<const TrapVisitRecord> sorted_records);
void validate_weather_record(const DailyWeatherRecord& r);
void validate_vi_record(const VegIndexRecord& r);

/// Joins the three record streams into per-visit instances. A visit is valid
/// when it has at least n_lags prior visits and a complete weather window;
/// otherwise it lands in `rejected` with the failing reasons. Deterministic
/// and independent of input row order.
AssembledInstances assemble_raw_instances(std::span<const TrapVisitRecord> traps,
                                          std::span<const DailyWeatherRecord> weather,
                                          std::span<const VegIndexRecord> vi,
                                          int window_days = 7,
                                          int n_lags = 3);

inline constexpr int kMinVisitGapDays = 1;
inline constexpr int kMaxVisitGapDays = 30;

} // namespace pestcast::dataset
