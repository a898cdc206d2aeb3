#include "dbdesc/classify.hpp"

#include "dbdesc/log.hpp"
#include "dbdesc/parallel.hpp"
#include "dbdesc/prompts.hpp"
#include "dbdesc/text.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>
#include <map>

namespace dbdesc {

std::string category_kind_name(CategoryKind kind) {
    switch (kind) {
    case CategoryKind::measure: return "measure";
    case CategoryKind::code: return "code";
    case CategoryKind::enum_dim: return "enum";
    case CategoryKind::datetime_dim: return "datetime";
    case CategoryKind::text_dim: return "text";
    }
    return "text";
}

std::string category_wire_token(CategoryKind kind) {
    return text::to_upper(category_kind_name(kind));
}

std::string granularity_name(Granularity granularity) {
    switch (granularity) {
    case Granularity::year: return "year";
    case Granularity::quarter: return "quarter";
    case Granularity::month: return "month";
    case Granularity::day: return "day";
    case Granularity::hour: return "hour";
    case Granularity::minute: return "minute";
    case Granularity::second: return "second";
    }
    return "day";
}

std::optional<CategoryKind> category_kind_from_token(const std::string& token) {
    std::string upper = text::to_upper(token);
    if (upper == "MEASURE") return CategoryKind::measure;
    if (upper == "CODE") return CategoryKind::code;
    if (upper == "ENUM") return CategoryKind::enum_dim;
    if (upper == "DATETIME") return CategoryKind::datetime_dim;
    if (upper == "TEXT") return CategoryKind::text_dim;
    return std::nullopt;
}

std::optional<Granularity> granularity_from_token(const std::string& token) {
    std::string upper = text::to_upper(token);
    if (upper == "YEAR") return Granularity::year;
    if (upper == "QUARTER") return Granularity::quarter;
    if (upper == "MONTH") return Granularity::month;
    if (upper == "DAY") return Granularity::day;
    if (upper == "HOUR") return Granularity::hour;
    if (upper == "MINUTE") return Granularity::minute;
    if (upper == "SECOND") return Granularity::second;
    return std::nullopt;
}

// --- rule pass ---------------------------------------------------------------

namespace {

bool has_identifier_suffix(const std::string& name) {
    std::string lower = text::to_lower(name);
    auto ends_with = [&](const char* suffix) {
        size_t len = std::strlen(suffix);
        return lower.size() >= len && lower.compare(lower.size() - len, len, suffix) == 0;
    };
    return ends_with("id") || ends_with("code") || ends_with("uuid");
}

bool is_numeric_kind(NormalizedType type) {
    return type == NormalizedType::integer || type == NormalizedType::real;
}

bool is_key_like(const ColumnProfile& profile) {
    return profile.meta.is_primary_key || profile.meta.declared_unique || profile.is_unique;
}

} // namespace

std::optional<FieldCategory> classify_rule_based(const ColumnProfile& profile,
                                                 const ClassifyOptions& options) {
    const ColumnMeta& meta = profile.meta;

    if (meta.is_primary_key || meta.is_foreign_key ||
        (has_identifier_suffix(meta.name) && (profile.is_unique || meta.declared_unique))) {
        return FieldCategory{CategoryKind::code, std::nullopt, Confidence::rule};
    }
    if (meta.normalized_type == NormalizedType::datetime) {
        return FieldCategory{CategoryKind::datetime_dim, std::nullopt, Confidence::rule};
    }
    if (meta.normalized_type == NormalizedType::boolean) {
        return FieldCategory{CategoryKind::enum_dim, std::nullopt, Confidence::rule};
    }
    if (is_numeric_kind(meta.normalized_type) && !is_key_like(profile) &&
        profile.distinct_count > options.enum_threshold) {
        return FieldCategory{CategoryKind::measure, std::nullopt, Confidence::rule};
    }
    if (profile.distinct_count >= 1 && profile.distinct_count <= options.enum_threshold) {
        return FieldCategory{CategoryKind::enum_dim, std::nullopt, Confidence::rule};
    }
    if (meta.normalized_type == NormalizedType::text && profile.strlen_max &&
        *profile.strlen_max > options.text_threshold) {
        return FieldCategory{CategoryKind::text_dim, std::nullopt, Confidence::rule};
    }
    return std::nullopt;
}

FieldCategory default_category(const ColumnMeta& meta) {
    switch (meta.normalized_type) {
    case NormalizedType::datetime:
        return FieldCategory{CategoryKind::datetime_dim, Granularity::day, Confidence::rule};
    case NormalizedType::boolean:
        return FieldCategory{CategoryKind::enum_dim, std::nullopt, Confidence::rule};
    case NormalizedType::integer:
    case NormalizedType::real:
        return FieldCategory{CategoryKind::measure, std::nullopt, Confidence::rule};
    default:
        return FieldCategory{CategoryKind::text_dim, std::nullopt, Confidence::rule};
    }
}

// --- model pass --------------------------------------------------------------

namespace {

const std::vector<std::string> kCategoryTokens = {"MEASURE", "CODE", "ENUM", "DATETIME", "TEXT"};
const std::vector<std::string> kGranularityTokens = {"YEAR", "QUARTER", "MONTH", "DAY",
                                                     "HOUR",  "MINUTE",  "SECOND"};

CategoryKind parse_failure_fallback(const ColumnMeta& meta) {
    if (is_numeric_kind(meta.normalized_type)) return CategoryKind::measure;
    if (meta.normalized_type == NormalizedType::datetime) return CategoryKind::datetime_dim;
    if (meta.normalized_type == NormalizedType::boolean) return CategoryKind::enum_dim;
    return CategoryKind::text_dim;
}

} // namespace

FieldCategory classify_with_model(const ClassificationRequest& request, ModelSession& session,
                                  const ClassifyOptions&) {
    std::string target = request.table + "." + request.profile->meta.name;
    std::string prompt = prompts::field_classification_prompt(request);

    std::string reply = session.call(prompts::kStageFieldClassification, target, prompt);
    auto token = extract_token(reply, kCategoryTokens);
    if (!token) {
        std::string retry_prompt =
            prompt + "\n\nYour previous answer contained no category token. Answer with exactly "
                     "one of: MEASURE, CODE, ENUM, DATETIME, TEXT.\n";
        reply = session.call(prompts::kStageFieldClassification, target, retry_prompt);
        token = extract_token(reply, kCategoryTokens);
    }

    FieldCategory category;
    category.confidence = Confidence::model;
    if (token) {
        category.kind = *category_kind_from_token(*token);
    } else {
        category.kind = parse_failure_fallback(request.profile->meta);
        log::warn("model gave no usable category for " + target + "; defaulting to " +
                  category_kind_name(category.kind));
    }
    return category;
}

// --- datetime granularity ------------------------------------------------------

namespace {

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    return std::all_of(s.begin(), s.end(),
                       [](unsigned char c) { return std::isdigit(c) != 0; });
}

bool digits_at(const std::string& s, size_t pos, size_t count) {
    if (pos + count > s.size()) return false;
    for (size_t i = pos; i < pos + count; ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    }
    return true;
}

int int_at(const std::string& s, size_t pos, size_t count) {
    return std::stoi(s.substr(pos, count));
}

bool valid_month(int m) { return m >= 1 && m <= 12; }
bool valid_day(int d) { return d >= 1 && d <= 31; }
bool valid_hms(const std::string& s, size_t pos) {
    return int_at(s, pos, 2) < 24 && int_at(s, pos + 3, 2) < 60 && int_at(s, pos + 6, 2) < 60;
}

// YYYY-MM-DD with either - or / separators
bool is_date_prefix(const std::string& s) {
    return s.size() >= 10 && digits_at(s, 0, 4) && (s[4] == '-' || s[4] == '/') &&
           digits_at(s, 5, 2) && s[7] == s[4] && digits_at(s, 8, 2) &&
           valid_month(int_at(s, 5, 2)) && valid_day(int_at(s, 8, 2));
}

} // namespace

std::optional<Granularity> match_datetime_pattern(const std::string& raw) {
    std::string s = text::trim(raw);
    if (s.empty()) return std::nullopt;

    if (is_date_prefix(s)) {
        if (s.size() == 10) return Granularity::day;
        char sep = s[10];
        if (sep != ' ' && sep != 'T') return std::nullopt;
        std::string rest = s.substr(11);
        // HH:MM:SS with optional fraction and zone
        if (rest.size() >= 8 && digits_at(rest, 0, 2) && rest[2] == ':' && digits_at(rest, 3, 2) &&
            rest[5] == ':' && digits_at(rest, 6, 2) && valid_hms(rest, 0)) {
            return Granularity::second;
        }
        if (rest.size() == 5 && digits_at(rest, 0, 2) && rest[2] == ':' && digits_at(rest, 3, 2) &&
            int_at(rest, 0, 2) < 24 && int_at(rest, 3, 2) < 60) {
            return Granularity::minute;
        }
        if (rest.size() == 2 && digits_at(rest, 0, 2) && int_at(rest, 0, 2) < 24) {
            return Granularity::hour;
        }
        return std::nullopt;
    }

    // bare time of day
    if (s.size() == 8 && digits_at(s, 0, 2) && s[2] == ':' && digits_at(s, 3, 2) && s[5] == ':' &&
        digits_at(s, 6, 2) && valid_hms(s, 0)) {
        return Granularity::second;
    }

    // YYYY-MM / YYYY/MM
    if (s.size() == 7 && digits_at(s, 0, 4) && (s[4] == '-' || s[4] == '/') && digits_at(s, 5, 2) &&
        valid_month(int_at(s, 5, 2))) {
        return Granularity::month;
    }

    // 2024Q1 / 2024-Q1
    {
        std::string upper = text::to_upper(s);
        if ((upper.size() == 6 && digits_at(upper, 0, 4) && upper[4] == 'Q' && upper[5] >= '1' &&
             upper[5] <= '4') ||
            (upper.size() == 7 && digits_at(upper, 0, 4) && upper[4] == '-' && upper[5] == 'Q' &&
             upper[6] >= '1' && upper[6] <= '4')) {
            return Granularity::quarter;
        }
    }

    if (all_digits(s)) {
        if (s.size() == 4) {
            int year = int_at(s, 0, 4);
            if (year >= 1500 && year <= 2999) return Granularity::year;
            return std::nullopt;
        }
        if (s.size() == 6 && valid_month(int_at(s, 4, 2))) return Granularity::month; // YYYYMM
        if (s.size() == 8 && valid_month(int_at(s, 4, 2)) && valid_day(int_at(s, 6, 2))) {
            return Granularity::day; // YYYYMMDD
        }
        if (s.size() == 9 || s.size() == 10) return Granularity::second; // epoch seconds
        if (s.size() == 12 || s.size() == 13) return Granularity::second; // epoch millis
    }
    return std::nullopt;
}

std::optional<Granularity> probe_granularity(const std::vector<std::string>& samples) {
    if (samples.empty()) return std::nullopt;
    std::map<Granularity, size_t> votes;
    for (const auto& sample : samples) {
        if (auto hit = match_datetime_pattern(sample)) ++votes[*hit];
    }
    for (const auto& [granularity, count] : votes) {
        if (count * 5 >= samples.size() * 4) return granularity; // >= 80% agreement
    }
    return std::nullopt;
}

Granularity infer_datetime_granularity(const std::string& table, const ColumnProfile& profile,
                                       ModelSession* session) {
    std::string target = table + "." + profile.meta.name;

    // an unambiguous declared type needs no probe
    std::string declared = text::to_upper(text::trim(profile.meta.declared_type));
    size_t paren = declared.find('(');
    if (paren != std::string::npos) declared = text::trim(declared.substr(0, paren));
    if (declared == "DATE") return Granularity::day;
    if (declared == "TIME" || declared == "TIMETZ") return Granularity::second;

    if (profile.samples.empty()) {
        log::debug("no samples to probe datetime granularity of " + target + "; using day");
        return Granularity::day;
    }

    if (auto probed = probe_granularity(profile.samples)) return *probed;

    if (session && session->has_model()) {
        try {
            std::string prompt = prompts::datetime_granularity_prompt(table, profile);
            std::string reply =
                session->call(prompts::kStageDatetimeGranularity, target, prompt);
            auto token = extract_token(reply, kGranularityTokens);
            if (!token) {
                std::string retry_prompt =
                    prompt + "\n\nYour previous answer contained no granularity token. Answer "
                             "with exactly one of: YEAR, QUARTER, MONTH, DAY, HOUR, MINUTE, "
                             "SECOND.\n";
                reply = session->call(prompts::kStageDatetimeGranularity, target, retry_prompt);
                token = extract_token(reply, kGranularityTokens);
            }
            if (token) return *granularity_from_token(*token);
        } catch (const ModelError& e) {
            log::warn(std::string("granularity model call failed for ") + target + ": " +
                      e.what());
        }
    }

    log::warn("datetime granularity of " + target + " is ambiguous; defaulting to day");
    return Granularity::day;
}

// --- full decision -------------------------------------------------------------

FieldCategory classify_column(const std::string& table, const ColumnProfile& profile,
                              const std::vector<std::string>& peer_columns, ModelSession* session,
                              const ClassifyOptions& options) {
    FieldCategory category;
    if (auto ruled = classify_rule_based(profile, options)) {
        category = *ruled;
    } else if (profile.row_count == 0 || !session || !session->has_model()) {
        // nothing to show a model, or no model to ask
        category = default_category(profile.meta);
    } else {
        ClassificationRequest request{table, peer_columns, &profile};
        category = classify_with_model(request, *session, options);
    }

    if (category.kind == CategoryKind::datetime_dim && !category.granularity) {
        category.granularity = infer_datetime_granularity(table, profile, session);
    }
    if (category.kind != CategoryKind::datetime_dim) category.granularity.reset();
    return category;
}

CategoryMap classify_snapshot(const SchemaSnapshot& snapshot, const ProfileSet& profiles,
                              ModelSession* session, const ClassifyOptions& options,
                              size_t max_inflight) {
    struct Target {
        const TableMeta* table;
        const ColumnMeta* column;
    };
    std::vector<Target> targets;
    for (const auto& table : snapshot.tables) {
        for (const auto& column : table.columns) targets.push_back({&table, &column});
    }

    std::vector<FieldCategory> results(targets.size());
    parallel_for(targets.size(), max_inflight, [&](size_t i) {
        const auto& [table, column] = targets[i];
        auto profile_it = profiles.find({table->name, column->name});
        if (profile_it == profiles.end()) {
            throw Error("no profile for " + table->name + "." + column->name);
        }
        std::vector<std::string> peers;
        for (const auto& peer : table->columns) {
            if (peer.name != column->name) peers.push_back(peer.name);
        }
        results[i] = classify_column(table->name, profile_it->second, peers, session, options);
    });

    CategoryMap categories;
    for (size_t i = 0; i < targets.size(); ++i) {
        categories.emplace(ColumnRef{targets[i].table->name, targets[i].column->name}, results[i]);
    }
    return categories;
}

} // namespace dbdesc
