#include "commnet/wikitext.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdio>

#include "commnet/errors.hpp"

namespace commnet::wikitext {

namespace {

using namespace std::chrono;

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }

std::string lower_ascii(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

bool icontains(std::string_view haystack, std::string_view needle) {
  if (needle.empty()) return true;
  auto it = std::search(haystack.begin(), haystack.end(), needle.begin(), needle.end(), [](char a, char b) {
    return std::tolower(static_cast<unsigned char>(a)) == std::tolower(static_cast<unsigned char>(b));
  });
  return it != haystack.end();
}

// Namespace prefixes compare after the same normalization as titles.
std::string normalize_namespace(std::string_view ns) {
  std::string out;
  bool pending_space = false;
  for (char c : ns) {
    if (c == '_' || is_space(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

constexpr std::array<std::string_view, 12> kMonths = {"January", "February", "March",     "April",
                                                      "May",     "June",     "July",      "August",
                                                      "September", "October", "November", "December"};

struct TimestampMatch {
  std::size_t begin = 0;  // first char of HH
  std::size_t end = 0;    // one past ")" of "(UTC)"
  Timestamp when;
};

// Parses "HH:MM, D Month YYYY (UTC)" backwards from the "(UTC)" at `utc`.
std::optional<TimestampMatch> parse_timestamp_ending_at(std::string_view s, std::size_t utc) {
  std::size_t k = utc;
  auto expect = [&](char c) {
    if (k == 0 || s[k - 1] != c) return false;
    --k;
    return true;
  };
  auto digits = [&](std::size_t min_len, std::size_t max_len, int& value) {
    const std::size_t end = k;
    while (k > 0 && is_digit(s[k - 1]) && end - k < max_len) --k;
    if (end - k < min_len) return false;
    if (k > 0 && is_digit(s[k - 1])) return false;
    value = 0;
    for (std::size_t i = k; i < end; ++i) value = value * 10 + (s[i] - '0');
    return true;
  };

  int year = 0, day = 0, hour = 0, minute = 0;
  if (!expect(' ') || !digits(4, 4, year) || !expect(' ')) return std::nullopt;
  const std::size_t month_end = k;
  while (k > 0 && is_alpha(s[k - 1])) --k;
  const std::string_view month_name = s.substr(k, month_end - k);
  const auto month_it = std::find(kMonths.begin(), kMonths.end(), month_name);
  if (month_it == kMonths.end()) return std::nullopt;
  if (!expect(' ') || !digits(1, 2, day) || !expect(' ') || !expect(',') || !digits(2, 2, minute) ||
      !expect(':') || !digits(1, 2, hour))
    return std::nullopt;
  if (hour > 23 || minute > 59) return std::nullopt;

  const year_month_day date{std::chrono::year{year},
                            std::chrono::month{static_cast<unsigned>(month_it - kMonths.begin() + 1)},
                            std::chrono::day{static_cast<unsigned>(day)}};
  if (!date.ok()) return std::nullopt;
  TimestampMatch m;
  m.begin = k;
  m.end = utc + 5;
  m.when = sys_days{date} + hours{hour} + minutes{minute};
  return m;
}

std::vector<TimestampMatch> find_timestamps(std::string_view s) {
  std::vector<TimestampMatch> out;
  for (std::size_t pos = s.find("(UTC)"); pos != std::string_view::npos; pos = s.find("(UTC)", pos + 5))
    if (auto m = parse_timestamp_ending_at(s, pos)) out.push_back(*m);
  return out;
}

struct UserLink {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::string user;
};

// [[User:X]], [[User talk:X|label]], [[:user:X/sub#anchor|...]] within [from, to).
std::vector<UserLink> find_user_links(std::string_view s, std::size_t from, std::size_t to) {
  std::vector<UserLink> out;
  for (std::size_t pos = s.find("[[", from); pos != std::string_view::npos && pos < to; pos = s.find("[[", pos + 2)) {
    std::size_t t = pos + 2;
    std::size_t target_end = t;
    while (target_end < to && s[target_end] != '|' && s[target_end] != ']' && s[target_end] != '\n' &&
           s[target_end] != '[')
      ++target_end;
    if (target_end >= to || s[target_end] == '\n' || s[target_end] == '[') continue;
    std::string_view target = trim(s.substr(t, target_end - t));
    if (!target.empty() && target.front() == ':') target = trim(target.substr(1));
    const auto colon = target.find(':');
    if (colon == std::string_view::npos) continue;
    const std::string ns = normalize_namespace(target.substr(0, colon));
    if (ns != "user" && ns != "user talk") continue;
    std::string_view name = target.substr(colon + 1);
    name = name.substr(0, std::min(name.find('/'), name.find('#')));
    std::string user = canonical_username(name);
    if (user.empty()) continue;
    const auto close = s.find("]]", target_end);
    if (close == std::string_view::npos || close + 2 > to) continue;
    out.push_back({pos, close + 2, std::move(user)});
  }
  return out;
}

std::size_t line_start(std::string_view s, std::size_t pos) {
  const auto nl = pos == 0 ? std::string_view::npos : s.rfind('\n', pos - 1);
  return nl == std::string_view::npos ? 0 : nl + 1;
}

bool suspect(Timestamp ts, const ParseOptions& options) {
  return ts < sys_days{std::chrono::year{2001} / January / 1} || ts > options.latest_plausible;
}

struct SignedSpan {
  TimestampMatch stamp;
  std::optional<std::string> user;
};

// Every timestamp in the text, each paired with the last user link between
// it and the previous timestamp on the same line.
std::vector<SignedSpan> scan_signatures(std::string_view s) {
  std::vector<SignedSpan> out;
  std::size_t prev_end = 0;
  for (const auto& stamp : find_timestamps(s)) {
    const std::size_t from = std::max(line_start(s, stamp.begin), prev_end);
    auto links = find_user_links(s, from, stamp.begin);
    SignedSpan span{stamp, std::nullopt};
    if (!links.empty()) span.user = std::move(links.back().user);
    out.push_back(std::move(span));
    prev_end = stamp.end;
  }
  return out;
}

// Level of a heading line ("== A ==" -> 2), 0 if the line is not a heading.
int heading_level(std::string_view line, std::string& text) {
  line = trim(line);
  std::size_t lead = 0;
  while (lead < line.size() && line[lead] == '=') ++lead;
  std::size_t trail = 0;
  while (trail < line.size() - lead && line[line.size() - 1 - trail] == '=') ++trail;
  const std::size_t level = std::min(lead, trail);
  if (level == 0 || line.size() <= 2 * level) return 0;
  text = std::string(trim(line.substr(level, line.size() - 2 * level)));
  if (text.empty()) return 0;
  return static_cast<int>(std::min<std::size_t>(level, 6));
}

int leading_depth(std::string_view line) {
  int depth = 0;
  for (char c : line) {
    if (c == ':' || c == '*')
      ++depth;
    else
      break;
  }
  return depth;
}

}  // namespace

std::string canonical_username(std::string_view raw) {
  std::string out;
  bool pending_space = false;
  for (char c : raw) {
    if (c == '_' || is_space(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(c);
  }
  if (out.empty()) return out;
  const auto first = static_cast<unsigned char>(out[0]);
  if (first >= 'a' && first <= 'z') {
    out[0] = static_cast<char>(first - 'a' + 'A');
  } else if (first == 0xC3 && out.size() > 1) {
    // Latin-1 supplement lowercase U+00E0..U+00FE (except U+00F7) in UTF-8.
    const auto second = static_cast<unsigned char>(out[1]);
    if (second >= 0xA0 && second <= 0xBE && second != 0xB7) out[1] = static_cast<char>(second - 0x20);
  }
  return out;
}

std::optional<std::string> talk_page_owner(std::string_view title) {
  const auto colon = title.find(':');
  if (colon == std::string_view::npos) return std::nullopt;
  if (normalize_namespace(title.substr(0, colon)) != "user talk") return std::nullopt;
  std::string_view rest = title.substr(colon + 1);
  rest = rest.substr(0, rest.find('/'));
  std::string owner = canonical_username(rest);
  if (owner.empty()) return std::nullopt;
  return owner;
}

std::string format_timestamp(Timestamp ts) {
  const auto day_point = floor<days>(ts);
  const year_month_day ymd{day_point};
  const hh_mm_ss hms{ts - day_point};
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02dZ", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                static_cast<int>(hms.hours().count()), static_cast<int>(hms.minutes().count()),
                static_cast<int>(hms.seconds().count()));
  return buf;
}

std::optional<Timestamp> parse_iso_timestamp(std::string_view text) {
  int y = 0, mo = 0, d = 0, h = 0, mi = 0, sec = 0;
  char z = 0;
  const std::string copy(text);
  if (std::sscanf(copy.c_str(), "%4d-%2d-%2dT%2d:%2d:%2d%c", &y, &mo, &d, &h, &mi, &sec, &z) != 7 || z != 'Z' ||
      copy.size() != 20)
    return std::nullopt;
  const year_month_day date{std::chrono::year{y}, std::chrono::month{static_cast<unsigned>(mo)},
                            std::chrono::day{static_cast<unsigned>(d)}};
  if (!date.ok() || h > 23 || mi > 59 || sec > 60) return std::nullopt;
  return sys_days{date} + hours{h} + minutes{mi} + seconds{sec};
}

std::optional<Signature> parse_signature(std::string_view segment, const ParseOptions& options) {
  for (auto& span : scan_signatures(segment))
    if (span.user) return Signature{std::move(*span.user), span.stamp.when, suspect(span.stamp.when, options)};
  return std::nullopt;
}

TalkPage TalkPage::from(std::string title, std::string wikitext) {
  auto owner = talk_page_owner(title);
  if (!owner) throw DataError("not a user talk page: '" + title + "'");
  return TalkPage{std::move(title), std::move(*owner), std::move(wikitext)};
}

std::vector<DiscussionThread> split_threads(const TalkPage& page) {
  std::vector<DiscussionThread> threads;
  const std::string_view text = page.wikitext;
  DiscussionThread current;
  bool seen_heading = false;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    const std::size_t line_end = nl == std::string_view::npos ? text.size() : nl + 1;
    const std::string_view line = text.substr(pos, line_end - pos);
    std::string heading;
    if (heading_level(line, heading) == 2) {
      if (seen_heading || !trim(current.body).empty()) threads.push_back(std::move(current));
      current = DiscussionThread{};
      current.heading = std::move(heading);
      seen_heading = true;
    } else {
      current.body.append(line);
    }
    pos = line_end;
  }
  if (seen_heading || threads.empty()) threads.push_back(std::move(current));
  return threads;
}

std::vector<Post> extract_posts(std::string_view body, const ParseOptions& options) {
  std::vector<Post> posts;
  std::size_t segment_begin = 0;
  for (auto& span : scan_signatures(body)) {
    const std::size_t segment_end = span.stamp.end;
    if (span.user) {
      const std::string_view segment = body.substr(segment_begin, segment_end - segment_begin);
      Post post;
      post.author = std::move(*span.user);
      post.timestamp = span.stamp.when;
      post.suspect_timestamp = suspect(span.stamp.when, options);
      // Indentation of the signed line: unsigned lines earlier in the segment
      // are not part of the post, and continuation lines repeat the prefix.
      std::string_view line = body.substr(line_start(body, span.stamp.begin));
      line = line.substr(0, line.find('\n'));
      while (!line.empty() && (line.front() == ' ' || line.front() == '\t')) line.remove_prefix(1);
      post.depth = leading_depth(line);
      for (const auto& marker : options.template_markers)
        if (icontains(segment, marker)) {
          post.is_template_message = true;
          break;
        }
      posts.push_back(std::move(post));
    }
    segment_begin = segment_end;
  }
  return posts;
}

bool is_mass_message(const DiscussionThread& thread, const ParseOptions& options) {
  for (const auto& post : thread.posts)
    for (const auto& agent : options.delivery_agents)
      if (post.author == canonical_username(agent)) return true;
  for (const auto& marker : options.mass_message_markers)
    if (thread.body.find(marker) != std::string::npos) return true;
  return false;
}

std::vector<DiscussionThread> parse_talk_page(const TalkPage& page, const ParseOptions& options) {
  auto threads = split_threads(page);
  for (auto& thread : threads) {
    thread.posts = extract_posts(thread.body, options);
    thread.is_mass_message = is_mass_message(thread, options);
  }
  return threads;
}

bool is_talk_title(std::string_view title) {
  const auto colon = title.find(':');
  if (colon != std::string_view::npos) {
    const std::string ns = normalize_namespace(title.substr(0, colon));
    if (ns == "talk" || (ns.size() >= 5 && ns.compare(ns.size() - 5, 5, " talk") == 0)) return true;
  }
  std::size_t pos = 0;
  while ((pos = title.find('/', pos)) != std::string_view::npos) {
    ++pos;
    const auto next = title.find('/', pos);
    const auto segment = trim(title.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos));
    if (lower_ascii(segment) == "talk") return true;
  }
  return false;
}

std::set<std::string> extract_project_members(const std::vector<std::pair<std::string, std::string>>& project_pages,
                                              const ParseOptions& options) {
  std::set<std::string> agents;
  for (const auto& agent : options.delivery_agents) agents.insert(canonical_username(agent));
  std::set<std::string> members;
  for (const auto& [title, text] : project_pages) {
    if (is_talk_title(title)) throw DataError("talk page passed as project page: '" + title + "'");
    for (auto& span : scan_signatures(text))
      if (span.user && !agents.count(*span.user)) members.insert(std::move(*span.user));
  }
  return members;
}

}  // namespace commnet::wikitext
