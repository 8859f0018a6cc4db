#include "pestcast/dataset.hpp"

#include "pestcast/csv.hpp"
#include "pestcast/errors.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

namespace pestcast::dataset {

namespace {

const std::vector<std::string> kTrapHeader = {"trap_id", "lat", "lon", "date", "catches"};

const std::vector<std::string> kWeatherHeader = {
    "trap_id", "date",    "t2m_min",   "t2m_max", "t2m_mean", "tsoil_min",
    "tsoil_max", "tsoil_mean", "rh_min", "rh_max",  "rh_mean",  "ap_sum",
    "dp_min",  "dp_max",  "dp_mean",   "ws_min",  "ws_max",   "ws_mean"};

const std::vector<std::string> kViHeader = {"trap_id", "date", "ndvi", "ndwi", "ndmi", "gi", "gcvi"};

[[noreturn]] void bad_row(const std::filesystem::path& path, size_t line, const std::string& what) {
    throw ParseError(path.string() + ":" + std::to_string(line) + ": " + what);
}

[[noreturn]] void invalid_row(const std::filesystem::path& path, size_t line, const std::string& what) {
    throw ValidationError(path.string() + ":" + std::to_string(line) + ": " + what);
}

Date parse_date_field(const std::filesystem::path& path, size_t line, const std::string& field) {
    const auto date = Date::parse(field);
    if (!date) bad_row(path, line, "invalid date '" + field + "'");
    return *date;
}

double parse_double_field(const std::filesystem::path& path, size_t line, const std::string& field,
                          const std::string& name) {
    const auto value = csv::parse_double(field);
    if (!value) bad_row(path, line, "invalid number for " + name + ": '" + field + "'");
    return *value;
}

void check_triple(const std::filesystem::path& path, size_t line, const std::string& name,
                  double lo, double hi, double mean) {
    if (!(lo <= mean && mean <= hi)) {
        invalid_row(path, line, name + " violates min <= mean <= max (" + csv::format_double(lo) +
                                    ", " + csv::format_double(mean) + ", " + csv::format_double(hi) + ")");
    }
}

template <typename Record>
void sort_and_check_duplicates(std::vector<Record>& records, const std::filesystem::path& path) {
    std::stable_sort(records.begin(), records.end(), [](const Record& a, const Record& b) {
        if (a.trap_id != b.trap_id) return a.trap_id < b.trap_id;
        return a.date < b.date;
    });
    for (size_t i = 1; i < records.size(); ++i) {
        if (records[i].trap_id == records[i - 1].trap_id && records[i].date == records[i - 1].date) {
            throw ValidationError(path.string() + ": duplicate key (" + records[i].trap_id + ", " +
                                  records[i].date.to_string() + ")");
        }
    }
}

} // namespace

void validate_trap_records(std::span<const TrapVisitRecord> sorted_records) {
    for (size_t i = 0; i < sorted_records.size(); ++i) {
        const auto& r = sorted_records[i];
        if (r.catches < 0) {
            throw ValidationError("negative catches for (" + r.trap_id + ", " + r.date.to_string() + ")");
        }
        if (i > 0 && sorted_records[i - 1].trap_id == r.trap_id) {
            const auto& prev = sorted_records[i - 1];
            const int gap = days_between(prev.date, r.date);
            if (gap < kMinVisitGapDays || gap > kMaxVisitGapDays) {
                throw ValidationError("trap " + r.trap_id + ": visit gap of " + std::to_string(gap) +
                                      " days before " + r.date.to_string() + " outside [" +
                                      std::to_string(kMinVisitGapDays) + ", " +
                                      std::to_string(kMaxVisitGapDays) + "]");
            }
            if (prev.lat != r.lat || prev.lon != r.lon) {
                throw ValidationError("trap " + r.trap_id + ": inconsistent coordinates at " +
                                      r.date.to_string());
            }
        }
    }
}

std::vector<TrapVisitRecord> load_trap_csv(const std::filesystem::path& path) {
    const auto rows = csv::read_file(path, kTrapHeader);
    std::vector<TrapVisitRecord> records;
    records.reserve(rows.size());
    for (const auto& row : rows) {
        if (row.fields.size() != kTrapHeader.size()) {
            bad_row(path, row.line, "expected " + std::to_string(kTrapHeader.size()) + " fields, got " +
                                        std::to_string(row.fields.size()));
        }
        TrapVisitRecord r;
        r.trap_id = row.fields[0];
        if (r.trap_id.empty()) bad_row(path, row.line, "empty trap_id");
        r.lat = parse_double_field(path, row.line, row.fields[1], "lat");
        r.lon = parse_double_field(path, row.line, row.fields[2], "lon");
        r.date = parse_date_field(path, row.line, row.fields[3]);
        const auto catches = csv::parse_int(row.fields[4]);
        if (!catches) bad_row(path, row.line, "invalid catches '" + row.fields[4] + "'");
        if (*catches < 0) invalid_row(path, row.line, "catches must be >= 0, got " + row.fields[4]);
        r.catches = static_cast<int>(*catches);
        records.push_back(std::move(r));
    }
    sort_and_check_duplicates(records, path);
    validate_trap_records(records);
    return records;
}

void validate_weather_record(const DailyWeatherRecord& r) {
    const auto key = "(" + r.trap_id + ", " + r.date.to_string() + ")";
    auto triple = [&](const char* name, double lo, double hi, double mean) {
        if (!(lo <= mean && mean <= hi)) {
            throw ValidationError(std::string(name) + " violates min <= mean <= max at " + key);
        }
    };
    triple("t2m", r.t2m_min, r.t2m_max, r.t2m_mean);
    triple("tsoil", r.tsoil_min, r.tsoil_max, r.tsoil_mean);
    triple("rh", r.rh_min, r.rh_max, r.rh_mean);
    triple("dp", r.dp_min, r.dp_max, r.dp_mean);
    triple("ws", r.ws_min, r.ws_max, r.ws_mean);
    if (r.rh_min < 0.0 || r.rh_max > 100.0) throw ValidationError("rh outside [0, 100] at " + key);
    if (r.ap_sum < 0.0) throw ValidationError("ap_sum must be >= 0 at " + key);
    if (r.ws_min < 0.0) throw ValidationError("ws must be >= 0 at " + key);
}

std::vector<DailyWeatherRecord> load_weather_csv(const std::filesystem::path& path) {
    const auto rows = csv::read_file(path, kWeatherHeader);
    std::vector<DailyWeatherRecord> records;
    records.reserve(rows.size());
    for (const auto& row : rows) {
        if (row.fields.size() != kWeatherHeader.size()) {
            bad_row(path, row.line, "expected " + std::to_string(kWeatherHeader.size()) +
                                        " fields, got " + std::to_string(row.fields.size()));
        }
        DailyWeatherRecord r;
        r.trap_id = row.fields[0];
        if (r.trap_id.empty()) bad_row(path, row.line, "empty trap_id");
        r.date = parse_date_field(path, row.line, row.fields[1]);
        double* const slots[] = {&r.t2m_min, &r.t2m_max,  &r.t2m_mean,  &r.tsoil_min,
                                 &r.tsoil_max, &r.tsoil_mean, &r.rh_min, &r.rh_max,
                                 &r.rh_mean, &r.ap_sum,   &r.dp_min,    &r.dp_max,
                                 &r.dp_mean, &r.ws_min,   &r.ws_max,    &r.ws_mean};
        for (size_t i = 0; i < std::size(slots); ++i) {
            *slots[i] = parse_double_field(path, row.line, row.fields[i + 2], kWeatherHeader[i + 2]);
        }
        check_triple(path, row.line, "t2m", r.t2m_min, r.t2m_max, r.t2m_mean);
        check_triple(path, row.line, "tsoil", r.tsoil_min, r.tsoil_max, r.tsoil_mean);
        check_triple(path, row.line, "rh", r.rh_min, r.rh_max, r.rh_mean);
        check_triple(path, row.line, "dp", r.dp_min, r.dp_max, r.dp_mean);
        check_triple(path, row.line, "ws", r.ws_min, r.ws_max, r.ws_mean);
        if (r.rh_min < 0.0 || r.rh_max > 100.0) invalid_row(path, row.line, "rh outside [0, 100]");
        if (r.ap_sum < 0.0) invalid_row(path, row.line, "ap_sum must be >= 0");
        if (r.ws_min < 0.0) invalid_row(path, row.line, "ws must be >= 0");
        records.push_back(std::move(r));
    }
    sort_and_check_duplicates(records, path);
    return records;
}

void validate_vi_record(const VegIndexRecord& r) {
    const auto key = "(" + r.trap_id + ", " + r.date.to_string() + ")";
    auto in_unit = [&](const char* name, const std::optional<double>& v) {
        if (v && (*v < -1.0 || *v > 1.0)) {
            throw ValidationError(std::string(name) + " outside [-1, 1] at " + key);
        }
    };
    in_unit("ndvi", r.ndvi);
    in_unit("ndwi", r.ndwi);
    in_unit("ndmi", r.ndmi);
    if (r.gi && *r.gi < 0.0) throw ValidationError("gi must be >= 0 at " + key);
    if (r.gcvi && *r.gcvi < 0.0) throw ValidationError("gcvi must be >= 0 at " + key);
}

std::vector<VegIndexRecord> load_vi_csv(const std::filesystem::path& path) {
    const auto rows = csv::read_file(path, kViHeader);
    std::vector<VegIndexRecord> records;
    records.reserve(rows.size());
    for (const auto& row : rows) {
        if (row.fields.size() != kViHeader.size()) {
            bad_row(path, row.line, "expected " + std::to_string(kViHeader.size()) + " fields, got " +
                                        std::to_string(row.fields.size()));
        }
        VegIndexRecord r;
        r.trap_id = row.fields[0];
        if (r.trap_id.empty()) bad_row(path, row.line, "empty trap_id");
        r.date = parse_date_field(path, row.line, row.fields[1]);
        auto optional_field = [&](size_t idx) -> std::optional<double> {
            if (row.fields[idx].empty()) return std::nullopt;
            return parse_double_field(path, row.line, row.fields[idx], kViHeader[idx]);
        };
        r.ndvi = optional_field(2);
        r.ndwi = optional_field(3);
        r.ndmi = optional_field(4);
        r.gi = optional_field(5);
        r.gcvi = optional_field(6);
        try {
            validate_vi_record(r);
        } catch (const ValidationError& e) {
            invalid_row(path, row.line, e.what());
        }
        records.push_back(std::move(r));
    }
    sort_and_check_duplicates(records, path);
    return records;
}

void write_trap_csv(const std::filesystem::path& path, std::span<const TrapVisitRecord> records) {
    std::string out = csv::join_fields(kTrapHeader) + "\n";
    for (const auto& r : records) {
        out += r.trap_id + "," + csv::format_double(r.lat) + "," + csv::format_double(r.lon) + "," +
               r.date.to_string() + "," + std::to_string(r.catches) + "\n";
    }
    csv::write_file(path, out);
}

void write_weather_csv(const std::filesystem::path& path, std::span<const DailyWeatherRecord> records) {
    std::string out = csv::join_fields(kWeatherHeader) + "\n";
    for (const auto& r : records) {
        const double values[] = {r.t2m_min, r.t2m_max,  r.t2m_mean,  r.tsoil_min,
                                 r.tsoil_max, r.tsoil_mean, r.rh_min, r.rh_max,
                                 r.rh_mean, r.ap_sum,   r.dp_min,    r.dp_max,
                                 r.dp_mean, r.ws_min,   r.ws_max,    r.ws_mean};
        out += r.trap_id + "," + r.date.to_string();
        for (const double v : values) {
            out += ",";
            out += csv::format_double(v);
        }
        out += "\n";
    }
    csv::write_file(path, out);
}

void write_vi_csv(const std::filesystem::path& path, std::span<const VegIndexRecord> records) {
    std::string out = csv::join_fields(kViHeader) + "\n";
    for (const auto& r : records) {
        out += r.trap_id + "," + r.date.to_string() + "," + csv::format_optional(r.ndvi) + "," +
               csv::format_optional(r.ndwi) + "," + csv::format_optional(r.ndmi) + "," +
               csv::format_optional(r.gi) + "," + csv::format_optional(r.gcvi) + "\n";
    }
    csv::write_file(path, out);
}

AssembledInstances assemble_raw_instances(std::span<const TrapVisitRecord> traps,
                                          std::span<const DailyWeatherRecord> weather,
                                          std::span<const VegIndexRecord> vi,
                                          int window_days,
                                          int n_lags) {
    if (window_days < 1) throw ArgumentError("window_days must be >= 1");
    if (n_lags < 0) throw ArgumentError("n_lags must be >= 0");

    // Re-sort defensively so the result does not depend on caller row order.
    std::vector<TrapVisitRecord> visits(traps.begin(), traps.end());
    std::sort(visits.begin(), visits.end(), [](const auto& a, const auto& b) {
        if (a.trap_id != b.trap_id) return a.trap_id < b.trap_id;
        return a.date < b.date;
    });

    std::unordered_map<std::string, std::map<int, const DailyWeatherRecord*>> weather_by_trap;
    for (const auto& w : weather) {
        weather_by_trap[w.trap_id][w.date.day_number()] = &w;
    }
    std::unordered_map<std::string, std::vector<const VegIndexRecord*>> vi_by_trap;
    for (const auto& v : vi) {
        vi_by_trap[v.trap_id].push_back(&v);
    }
    for (auto& [id, list] : vi_by_trap) {
        std::sort(list.begin(), list.end(),
                  [](const auto* a, const auto* b) { return a->date < b->date; });
    }

    AssembledInstances out;
    size_t trap_begin = 0;
    while (trap_begin < visits.size()) {
        size_t trap_end = trap_begin;
        while (trap_end < visits.size() && visits[trap_end].trap_id == visits[trap_begin].trap_id) {
            ++trap_end;
        }
        const auto& trap_id = visits[trap_begin].trap_id;
        const auto* trap_weather = [&]() -> const std::map<int, const DailyWeatherRecord*>* {
            const auto it = weather_by_trap.find(trap_id);
            return it == weather_by_trap.end() ? nullptr : &it->second;
        }();
        const auto* trap_vi = [&]() -> const std::vector<const VegIndexRecord*>* {
            const auto it = vi_by_trap.find(trap_id);
            return it == vi_by_trap.end() ? nullptr : &it->second;
        }();

        for (size_t i = trap_begin; i < trap_end; ++i) {
            const auto& visit = visits[i];
            std::vector<std::string> reasons;

            if (i - trap_begin < static_cast<size_t>(n_lags)) {
                reasons.emplace_back("insufficient-catch-history");
            }

            std::vector<DailyWeatherRecord> window;
            const int pd = visit.date.day_number();
            bool weather_complete = true;
            for (int d = pd - window_days + 1; d <= pd; ++d) {
                const DailyWeatherRecord* rec = nullptr;
                if (trap_weather) {
                    const auto it = trap_weather->find(d);
                    if (it != trap_weather->end()) rec = it->second;
                }
                if (!rec) {
                    weather_complete = false;
                    break;
                }
                window.push_back(*rec);
            }
            if (!weather_complete) reasons.emplace_back("incomplete-weather-window");

            if (!reasons.empty()) {
                out.rejected.push_back(RejectedInstance{trap_id, visit.date, std::move(reasons)});
                continue;
            }

            RawInstance inst;
            inst.trap_id = trap_id;
            inst.prediction_date = visit.date;
            inst.lat = visit.lat;
            inst.lon = visit.lon;
            inst.label_catches = visit.catches;
            for (size_t j = trap_begin; j < i; ++j) {
                inst.catch_history.emplace_back(visits[j].date, visits[j].catches);
            }
            inst.weather_window = std::move(window);
            if (trap_vi) {
                // The VI span keeps both boundary days so a trailing integral
                // over window_days has endpoints (weather, by contrast, is a
                // sum of exactly window_days daily values).
                for (const auto* v : *trap_vi) {
                    const int delta = pd - v->date.day_number();
                    if (delta >= 0 && delta <= window_days) inst.vi_window.push_back(*v);
                }
            }
            out.valid.push_back(std::move(inst));
        }
        trap_begin = trap_end;
    }
    return out;
}

} // namespace pestcast::dataset
