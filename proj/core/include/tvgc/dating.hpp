#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tvgc/bootstrap.hpp"
#include "tvgc/procedures.hpp"
#include "tvgc/series.hpp"

namespace tvgc {

/// A dated stretch where the statistic sequence sits above its critical
/// value. date_episodes produces index-level episodes; episode_report maps
/// indices to calendar dates and fills start_date/end_date/duration_days.
struct CausalEpisode {
    std::size_t start_index = 0;
    std::size_t end_index = 0; // last observation above the threshold
    bool ongoing = false;      // still above at the sample end
    double peak_statistic = 0.0;
    Algorithm algorithm = Algorithm::forward;
    bool robust = false;
    bool sub_minimal = false; // shorter than min_duration; reported, not dropped

    std::optional<Date> start_date;
    std::optional<Date> end_date; // absent while undated or when ongoing
    int duration_days = 0;        // calendar days, inclusive; ongoing runs to sample end

    std::size_t observation_count() const { return end_index - start_index + 1; }
};

/// Chronological scan per the crossing rules: an episode opens at the first
/// index with statistic strictly above the threshold and closes at the next
/// index strictly below; ties keep the prior state and missing points
/// neither open nor close. Episodes shorter than min_duration observations
/// are flagged sub_minimal. Requires stats and cv to share their endpoint
/// domain.
std::vector<CausalEpisode> date_episodes(const StatSequence& stats,
                                         const CriticalValueSequence& cv,
                                         std::size_t min_duration = 1);

struct EpisodeReport {
    std::string country;
    std::vector<CausalEpisode> episodes; // dated
    std::string text;                    // human-readable rendering
};

/// Maps episode indices to the dataset's dates, computes inclusive calendar
/// durations, and renders a summary. Pure formatting.
EpisodeReport episode_report(const std::vector<CausalEpisode>& episodes,
                             const AlignedDataset& dataset);

/// One JSON object per episode:
/// {country, algorithm, robust, start_date, end_date, duration_days,
///  peak_statistic, sub_minimal, start_index, end_index, ongoing}
/// (end_date is null while an episode is ongoing at the sample end).
std::string episodes_to_jsonl(const EpisodeReport& report);

} // namespace tvgc
