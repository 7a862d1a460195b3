#include "evident/interaction.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <iterator>

namespace evident {

namespace {

constexpr std::uint64_t kFnvBasis = 0xcbf29ce484222325ull;
constexpr std::uint64_t kFnvPrime = 0x100000001b3ull;

std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t state = kFnvBasis) {
    for (unsigned char c : bytes) {
        state ^= c;
        state *= kFnvPrime;
    }
    return state;
}

std::optional<std::int64_t> parse_i64(std::string_view s) {
    std::int64_t value = 0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) return std::nullopt;
    return value;
}

std::optional<std::uint64_t> parse_u64(std::string_view s) {
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
    return value;
}

std::optional<std::uint64_t> parse_hex64(std::string_view s) {
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value, 16);
    if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
    return value;
}

std::string hex16(std::uint64_t v) {
    char buf[24];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = line.find(sep, start);
        if (pos == std::string_view::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return fields;
}

}  // namespace

bool valid_user_id(std::string_view id) {
    if (id.empty() || id == "-") return false;
    return std::none_of(id.begin(), id.end(),
                        [](unsigned char c) { return std::isspace(c) != 0; });
}

std::string_view to_string(EventKind k) {
    switch (k) {
        case EventKind::tweet: return "tweet";
        case EventKind::retweet: return "retweet";
        case EventKind::mention: return "mention";
        case EventKind::citation: return "citation";
        case EventKind::follow: return "follow";
    }
    return "?";
}

std::optional<EventKind> parse_event_kind(std::string_view s) {
    if (s == "tweet") return EventKind::tweet;
    if (s == "retweet") return EventKind::retweet;
    if (s == "mention") return EventKind::mention;
    if (s == "citation") return EventKind::citation;
    if (s == "follow") return EventKind::follow;
    return std::nullopt;
}

std::optional<EventRecord> parse_event_line(std::string_view line) {
    auto fields = split(line, '\t');
    if (fields.size() != 5) return std::nullopt;

    auto kind = parse_event_kind(fields[0]);
    if (!kind) return std::nullopt;
    if (!valid_user_id(fields[1])) return std::nullopt;

    EventRecord e;
    e.kind = *kind;
    e.actor = UserId(fields[1]);

    if (*kind == EventKind::tweet) {
        if (fields[2] != "-") return std::nullopt;
    } else {
        if (!valid_user_id(fields[2]) || fields[2] == fields[1]) return std::nullopt;
        e.target = UserId(fields[2]);
    }

    if (fields[3] != "-") {
        auto ts = parse_i64(fields[3]);
        if (!ts) return std::nullopt;
        e.timestamp = *ts;
    }

    if (fields[4] == "0") e.primary = false;
    else if (fields[4] == "1") e.primary = true;
    else return std::nullopt;

    return e;
}

std::string format_event_line(const EventRecord& e) {
    std::string out(to_string(e.kind));
    out += '\t';
    out += e.actor;
    out += '\t';
    out += e.kind == EventKind::tweet ? "-" : e.target;
    out += '\t';
    out += e.timestamp ? std::to_string(*e.timestamp) : "-";
    out += '\t';
    out += e.primary ? '1' : '0';
    return out;
}

void InteractionCounts::add(const EventRecord& e) {
    UserTotals& actor = users_[e.actor];
    if (e.kind == EventKind::follow) {
        users_[e.target];
        follow_.emplace(e.actor, e.target);
        return;
    }
    if (e.primary) ++actor.tweets;
    switch (e.kind) {
        case EventKind::tweet:
            break;
        case EventKind::retweet:
            ++actor.retweets;
            ++pairs_[{e.actor, e.target}].retweets;
            users_[e.target];
            break;
        case EventKind::mention:
            ++actor.mentions;
            ++pairs_[{e.actor, e.target}].mentions;
            users_[e.target];
            break;
        case EventKind::citation:
            ++actor.citations;
            ++pairs_[{e.actor, e.target}].citations;
            users_[e.target];
            break;
        case EventKind::follow:
            break;
    }
}

void InteractionCounts::merge(const InteractionCounts& other) {
    for (const auto& [u, t] : other.users_) {
        UserTotals& mine = users_[u];
        mine.tweets += t.tweets;
        mine.retweets += t.retweets;
        mine.mentions += t.mentions;
        mine.citations += t.citations;
    }
    for (const auto& [k, c] : other.pairs_) {
        PairCounts& mine = pairs_[k];
        mine.retweets += c.retweets;
        mine.mentions += c.mentions;
        mine.citations += c.citations;
    }
    follow_.insert(other.follow_.begin(), other.follow_.end());
}

UserTotals InteractionCounts::totals(const UserId& u) const {
    auto it = users_.find(u);
    return it == users_.end() ? UserTotals{} : it->second;
}

PairCounts InteractionCounts::pair(const UserId& u, const UserId& v) const {
    auto it = pairs_.find({u, v});
    return it == pairs_.end() ? PairCounts{} : it->second;
}

bool InteractionCounts::follows(const UserId& u, const UserId& v) const {
    return follow_.count({u, v}) != 0;
}

std::vector<std::pair<UserId, UserId>> InteractionCounts::pairs_with_interaction() const {
    std::vector<std::pair<UserId, UserId>> out;
    out.reserve(pairs_.size() + follow_.size());
    auto pit = pairs_.begin();
    auto fit = follow_.begin();
    while (pit != pairs_.end() && fit != follow_.end()) {
        if (pit->first < *fit) {
            if (pit->second.total() > 0) out.push_back(pit->first);
            ++pit;
        } else if (*fit < pit->first) {
            out.push_back(*fit);
            ++fit;
        } else {
            out.push_back(*fit);
            ++pit;
            ++fit;
        }
    }
    for (; pit != pairs_.end(); ++pit) {
        if (pit->second.total() > 0) out.push_back(pit->first);
    }
    for (; fit != follow_.end(); ++fit) out.push_back(*fit);
    return out;
}

void InteractionCounts::set_totals(const UserId& u, const UserTotals& t) { users_[u] = t; }

void InteractionCounts::set_pair(const UserId& u, const UserId& v, const PairCounts& c) {
    pairs_[{u, v}] = c;
}

void InteractionCounts::add_follow(const UserId& u, const UserId& v) {
    users_[u];
    users_[v];
    follow_.emplace(u, v);
}

void ingest_into(CorpusSnapshot& snapshot, std::istream& in) {
    if (in.fail()) {
        throw Error(Error::Code::unreadable_input, "input stream is not readable");
    }
    std::string line;
    while (std::getline(in, line)) {
        snapshot.source_digest = fnv1a64(line, snapshot.source_digest);
        snapshot.source_digest = fnv1a64("\n", snapshot.source_digest);
        if (auto record = parse_event_line(line)) {
            snapshot.counts.add(*record);
            ++snapshot.event_count;
        } else {
            ++snapshot.ingest_errors;
        }
    }
    if (in.bad()) {
        throw Error(Error::Code::unreadable_input, "I/O failure while reading events");
    }
}

CorpusSnapshot ingest_events(std::istream& in) {
    CorpusSnapshot snapshot;
    snapshot.source_digest = kFnvBasis;
    ingest_into(snapshot, in);
    return snapshot;
}

CorpusSnapshot ingest_files(const std::vector<std::string>& paths) {
    CorpusSnapshot snapshot;
    snapshot.source_digest = kFnvBasis;
    for (const auto& path : paths) {
        std::ifstream in(path, std::ios::binary);
        if (!in) {
            throw Error(Error::Code::unreadable_input, "cannot open '" + path + "'");
        }
        ingest_into(snapshot, in);
    }
    return snapshot;
}

namespace {

constexpr int kSnapshotVersion = 1;

std::string snapshot_body(const InteractionCounts& counts) {
    std::string body;
    for (const auto& [u, t] : counts.users()) {
        body += "U " + u + ' ' + std::to_string(t.tweets) + ' ' + std::to_string(t.retweets) +
                ' ' + std::to_string(t.mentions) + ' ' + std::to_string(t.citations) + '\n';
    }
    for (const auto& [k, c] : counts.pairs()) {
        body += "P " + k.first + ' ' + k.second + ' ' + std::to_string(c.retweets) + ' ' +
                std::to_string(c.mentions) + ' ' + std::to_string(c.citations) + '\n';
    }
    for (const auto& [u, v] : counts.follow_edges()) {
        body += "F " + u + ' ' + v + '\n';
    }
    return body;
}

[[noreturn]] void corrupt(const std::string& why) {
    throw Error(Error::Code::corrupt_snapshot, "corrupt snapshot: " + why);
}

std::uint64_t header_value(std::istream& in, const std::string& key) {
    std::string line;
    if (!std::getline(in, line)) corrupt("truncated header");
    auto fields = split(line, ' ');
    if (fields.size() != 2 || fields[0] != key) corrupt("expected '" + key + "' header line");
    auto value = key == "digest" || key == "checksum" ? parse_hex64(fields[1])
                                                      : parse_u64(fields[1]);
    if (!value) corrupt("bad '" + key + "' value");
    return *value;
}

}  // namespace

void save_snapshot(const CorpusSnapshot& snapshot, const std::string& path) {
    const std::string body = snapshot_body(snapshot.counts);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error(Error::Code::write_failure, "cannot open '" + path + "' for writing");
    }
    out << "EVSNAP " << kSnapshotVersion << '\n'
        << "users " << snapshot.counts.user_count() << '\n'
        << "pairs " << snapshot.counts.pair_count() << '\n'
        << "follows " << snapshot.counts.follow_count() << '\n'
        << "events " << snapshot.event_count << '\n'
        << "errors " << snapshot.ingest_errors << '\n'
        << "digest " << hex16(snapshot.source_digest) << '\n'
        << "checksum " << hex16(fnv1a64(body)) << '\n'
        << body;
    out.flush();
    if (!out) {
        throw Error(Error::Code::write_failure, "I/O failure while writing '" + path + "'");
    }
}

CorpusSnapshot load_snapshot(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(Error::Code::unreadable_input, "cannot open '" + path + "'");
    }

    std::string magic_line;
    if (!std::getline(in, magic_line)) corrupt("empty file");
    auto magic = split(magic_line, ' ');
    if (magic.size() != 2 || magic[0] != "EVSNAP") corrupt("bad magic");
    auto version = parse_u64(magic[1]);
    if (!version) corrupt("bad version field");
    if (*version != kSnapshotVersion) {
        throw Error(Error::Code::version_mismatch,
                    "snapshot version " + std::to_string(*version) + ", expected " +
                        std::to_string(kSnapshotVersion));
    }

    const std::uint64_t users = header_value(in, "users");
    const std::uint64_t pairs = header_value(in, "pairs");
    const std::uint64_t follows = header_value(in, "follows");

    CorpusSnapshot snapshot;
    snapshot.event_count = header_value(in, "events");
    snapshot.ingest_errors = header_value(in, "errors");
    snapshot.source_digest = header_value(in, "digest");
    const std::uint64_t checksum = header_value(in, "checksum");

    std::string body(std::istreambuf_iterator<char>(in), {});
    if (fnv1a64(body) != checksum) corrupt("checksum mismatch");

    std::uint64_t seen_users = 0, seen_pairs = 0, seen_follows = 0;
    for (std::string_view rest = body; !rest.empty();) {
        std::size_t eol = rest.find('\n');
        if (eol == std::string_view::npos) corrupt("unterminated body line");
        std::string_view line = rest.substr(0, eol);
        rest.remove_prefix(eol + 1);

        auto fields = split(line, ' ');
        if (fields[0] == "U" && fields.size() == 6) {
            if (!valid_user_id(fields[1])) corrupt("bad user id");
            UserTotals t;
            auto a = parse_u64(fields[2]), b = parse_u64(fields[3]);
            auto c = parse_u64(fields[4]), d = parse_u64(fields[5]);
            if (!a || !b || !c || !d) corrupt("bad user totals");
            t.tweets = *a;
            t.retweets = *b;
            t.mentions = *c;
            t.citations = *d;
            snapshot.counts.set_totals(UserId(fields[1]), t);
            ++seen_users;
        } else if (fields[0] == "P" && fields.size() == 6) {
            if (!valid_user_id(fields[1]) || !valid_user_id(fields[2])) corrupt("bad pair ids");
            PairCounts c;
            auto a = parse_u64(fields[3]), b = parse_u64(fields[4]), d = parse_u64(fields[5]);
            if (!a || !b || !d) corrupt("bad pair counts");
            c.retweets = *a;
            c.mentions = *b;
            c.citations = *d;
            snapshot.counts.set_pair(UserId(fields[1]), UserId(fields[2]), c);
            ++seen_pairs;
        } else if (fields[0] == "F" && fields.size() == 3) {
            if (!valid_user_id(fields[1]) || !valid_user_id(fields[2])) corrupt("bad follow ids");
            snapshot.counts.add_follow(UserId(fields[1]), UserId(fields[2]));
            ++seen_follows;
        } else {
            corrupt("unrecognized body line");
        }
    }

    if (seen_users != users || snapshot.counts.user_count() != users) corrupt("user count mismatch");
    if (seen_pairs != pairs || snapshot.counts.pair_count() != pairs) corrupt("pair count mismatch");
    if (seen_follows != follows || snapshot.counts.follow_count() != follows) {
        corrupt("follow count mismatch");
    }

    // Marginal consistency: per-user channel totals must equal the sums of
    // their per-pair counts.
    std::map<UserId, PairCounts> sums;
    for (const auto& [k, c] : snapshot.counts.pairs()) {
        PairCounts& s = sums[k.first];
        s.retweets += c.retweets;
        s.mentions += c.mentions;
        s.citations += c.citations;
    }
    for (const auto& [u, t] : snapshot.counts.users()) {
        auto it = sums.find(u);
        const PairCounts s = it == sums.end() ? PairCounts{} : it->second;
        if (s.retweets != t.retweets || s.mentions != t.mentions || s.citations != t.citations) {
            corrupt("per-pair sums disagree with user totals for '" + u + "'");
        }
    }
    for (const auto& [u, s] : sums) {
        if (snapshot.counts.users().find(u) == snapshot.counts.users().end()) {
            corrupt("pair counts reference unknown user '" + u + "'");
        }
    }

    return snapshot;
}

}  // namespace evident
