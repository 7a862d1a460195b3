#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "evident/error.hpp"

namespace evident {

// Opaque user token: non-empty, no whitespace.
using UserId = std::string;

bool valid_user_id(std::string_view id);

enum class EventKind { tweet, retweet, mention, citation, follow };

std::string_view to_string(EventKind k);
std::optional<EventKind> parse_event_kind(std::string_view s);

// One interaction record. target is empty exactly when kind == tweet.
// A tweet performing several actions at once is encoded as multiple records
// sharing a timestamp; only the record flagged primary increments the
// actor's tweet total.
struct EventRecord {
    EventKind kind = EventKind::tweet;
    UserId actor;
    UserId target;
    std::optional<std::int64_t> timestamp;
    bool primary = true;

    bool operator==(const EventRecord&) const = default;
};

// Wire format (tab-separated, one record per line):
//   kind<TAB>actor<TAB>target<TAB>timestamp<TAB>primary
// target is "-" for plain tweets, timestamp is a base-10 integer or "-",
// primary is 0 or 1. Returns nullopt for malformed lines.
std::optional<EventRecord> parse_event_line(std::string_view line);
std::string format_event_line(const EventRecord& e);

struct UserTotals {
    std::uint64_t tweets = 0;     // T_u
    std::uint64_t retweets = 0;   // Rt_u
    std::uint64_t mentions = 0;   // Mt_u
    std::uint64_t citations = 0;  // Ct_u

    bool operator==(const UserTotals&) const = default;
};

struct PairCounts {
    std::uint64_t retweets = 0;   // Rt_u(v)
    std::uint64_t mentions = 0;   // Mt_u(v)
    std::uint64_t citations = 0;  // Ct_u(v)

    std::uint64_t total() const { return retweets + mentions + citations; }
    bool operator==(const PairCounts&) const = default;
};

// Aggregated per-user and per-ordered-pair counts plus the follow set.
// Grows through add()/merge(); immutable by convention once shared.
class InteractionCounts {
public:
    void add(const EventRecord& e);
    void merge(const InteractionCounts& other);

    // Zero totals for unknown users; unknown pairs yield zero counts.
    UserTotals totals(const UserId& u) const;
    PairCounts pair(const UserId& u, const UserId& v) const;
    bool follows(const UserId& u, const UserId& v) const;

    std::size_t user_count() const { return users_.size(); }
    std::size_t pair_count() const { return pairs_.size(); }
    std::size_t follow_count() const { return follow_.size(); }

    const std::map<UserId, UserTotals>& users() const { return users_; }
    const std::map<std::pair<UserId, UserId>, PairCounts>& pairs() const { return pairs_; }
    const std::set<std::pair<UserId, UserId>>& follow_edges() const { return follow_; }

    // Ordered pairs with at least one interaction, unioned with the follow
    // set; lexicographic order, no duplicates.
    std::vector<std::pair<UserId, UserId>> pairs_with_interaction() const;

    // Load path only: raw insertion without event semantics.
    void set_totals(const UserId& u, const UserTotals& t);
    void set_pair(const UserId& u, const UserId& v, const PairCounts& c);
    void add_follow(const UserId& u, const UserId& v);

    bool operator==(const InteractionCounts&) const = default;

private:
    std::map<UserId, UserTotals> users_;
    std::map<std::pair<UserId, UserId>, PairCounts> pairs_;
    std::set<std::pair<UserId, UserId>> follow_;
};

struct CorpusSnapshot {
    InteractionCounts counts;
    std::uint64_t event_count = 0;    // well-formed records ingested
    std::uint64_t ingest_errors = 0;  // malformed lines skipped
    std::uint64_t source_digest = 0;  // FNV-1a over the ingested bytes

    bool operator==(const CorpusSnapshot&) const = default;
};

// Line-by-line ingestion; malformed lines are counted and skipped.
CorpusSnapshot ingest_events(std::istream& in);
void ingest_into(CorpusSnapshot& snapshot, std::istream& in);

// Sequential ingestion of several files into one snapshot.
// Throws unreadable_input if a file cannot be opened.
CorpusSnapshot ingest_files(const std::vector<std::string>& paths);

// Versioned text container; round-trips counts bit-exactly. Load rejects
// unknown versions (version_mismatch) and damaged files (corrupt_snapshot).
void save_snapshot(const CorpusSnapshot& snapshot, const std::string& path);
CorpusSnapshot load_snapshot(const std::string& path);

}  // namespace evident
