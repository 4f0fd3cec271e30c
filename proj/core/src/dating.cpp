#include "tvgc/dating.hpp"

#include <algorithm>
#include <sstream>

#include <nlohmann/json.hpp>

#include "tvgc/errors.hpp"

namespace tvgc {

std::vector<CausalEpisode> date_episodes(const StatSequence& stats,
                                         const CriticalValueSequence& cv,
                                         std::size_t min_duration) {
    if (stats.points.size() != cv.indices.size() ||
        (stats.points.size() > 0 && (stats.points.front().index != cv.indices.front() ||
                                     stats.points.back().index != cv.indices.back()))) {
        throw ValidationError("date_episodes: statistic and critical-value sequences do not "
                              "share an index domain");
    }

    std::vector<CausalEpisode> episodes;
    bool open = false;
    CausalEpisode current;
    std::size_t last_inside = 0;

    auto close_current = [&](bool at_sample_end) {
        current.end_index = last_inside;
        current.ongoing = at_sample_end;
        current.sub_minimal = current.observation_count() < min_duration;
        episodes.push_back(current);
        open = false;
    };

    for (std::size_t i = 0; i < stats.points.size(); ++i) {
        const StatPoint& point = stats.points[i];
        if (!point.value) continue; // gaps neither open nor close
        const double value = *point.value;
        const double threshold = cv.values[i];
        if (!open) {
            if (value > threshold) { // strict: "exceeds"
                open = true;
                current = CausalEpisode{};
                current.start_index = point.index;
                current.peak_statistic = value;
                current.algorithm = stats.algorithm;
                current.robust = stats.robust;
                last_inside = point.index;
            }
        } else {
            if (value < threshold) { // strict: "goes below"; ties keep prior state
                close_current(/*at_sample_end=*/false);
            } else {
                current.peak_statistic = std::max(current.peak_statistic, value);
                last_inside = point.index;
            }
        }
    }
    if (open) close_current(/*at_sample_end=*/true);
    return episodes;
}

EpisodeReport episode_report(const std::vector<CausalEpisode>& episodes,
                             const AlignedDataset& dataset) {
    EpisodeReport report;
    report.country = dataset.country;
    report.episodes = episodes;

    std::ostringstream text;
    if (episodes.empty()) {
        text << "No causal episodes detected for " << dataset.country << ".\n";
    } else {
        text << episodes.size() << (episodes.size() == 1 ? " causal episode" : " causal episodes")
             << " detected for " << dataset.country << " ("
             << algorithm_name(episodes.front().algorithm)
             << (episodes.front().robust ? ", heteroskedasticity-robust" : ", homoskedastic")
             << "):\n";
    }
    for (CausalEpisode& episode : report.episodes) {
        if (episode.end_index >= dataset.size() || episode.start_index > episode.end_index) {
            throw ValidationError("episode_report: episode indices outside the dataset");
        }
        episode.start_date = dataset.dates[episode.start_index];
        const Date effective_end = dataset.dates[episode.end_index];
        episode.end_date = episode.ongoing ? std::nullopt : std::make_optional(effective_end);
        episode.duration_days = effective_end - *episode.start_date + 1;

        text << "  " << episode.start_date->to_string() << " to "
             << (episode.ongoing ? "(ongoing)" : effective_end.to_string()) << ": "
             << episode.duration_days << (episode.duration_days == 1 ? " day" : " days")
             << ", peak statistic " << episode.peak_statistic;
        if (episode.sub_minimal) text << " [below minimum duration]";
        text << "\n";
    }
    report.text = text.str();
    return report;
}

std::string episodes_to_jsonl(const EpisodeReport& report) {
    std::ostringstream out;
    for (const CausalEpisode& episode : report.episodes) {
        nlohmann::json record;
        record["country"] = report.country;
        record["algorithm"] = algorithm_name(episode.algorithm);
        record["robust"] = episode.robust;
        record["start_date"] = episode.start_date ? episode.start_date->to_string() : "";
        if (episode.end_date) {
            record["end_date"] = episode.end_date->to_string();
        } else {
            record["end_date"] = nullptr;
        }
        record["duration_days"] = episode.duration_days;
        record["peak_statistic"] = episode.peak_statistic;
        record["sub_minimal"] = episode.sub_minimal;
        record["start_index"] = episode.start_index;
        record["end_index"] = episode.end_index;
        record["ongoing"] = episode.ongoing;
        out << record.dump() << '\n';
    }
    return out.str();
}

} // namespace tvgc
