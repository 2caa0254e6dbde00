#pragma once

#include <chrono>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace commnet::wikitext {

using Timestamp = std::chrono::sys_seconds;

// MediaWiki title normalization for user names: underscores become spaces,
// whitespace runs collapse, ends are trimmed, the first letter is uppercased.
std::string canonical_username(std::string_view raw);

// "User talk:Foo_bar/Archive 1" -> "Foo bar"; nullopt for other namespaces.
std::optional<std::string> talk_page_owner(std::string_view title);

std::string format_timestamp(Timestamp ts);                // 2021-02-11T14:02:00Z
std::optional<Timestamp> parse_iso_timestamp(std::string_view text);

struct Signature {
  std::string user;
  Timestamp timestamp;
  // Outside 2001..latest_plausible; kept, only flagged.
  bool suspect_timestamp = false;

  friend bool operator==(const Signature&, const Signature&) = default;
};

struct ParseOptions {
  std::vector<std::string> delivery_agents{"MediaWiki message delivery"};
  std::vector<std::string> mass_message_markers{"<!-- Message sent by User:"};
  // Substrings that mark a post as (substituted) template output.
  std::vector<std::string> template_markers{"{{", "<!-- Template:", "<!--Template:", "barnstar"};
  Timestamp latest_plausible = std::chrono::floor<std::chrono::seconds>(std::chrono::system_clock::now());
};

// First signature in the segment: a User:/User talk: link followed on the same
// line by "HH:MM, D Month YYYY (UTC)". With several links before one
// timestamp, the last link is the author.
std::optional<Signature> parse_signature(std::string_view segment, const ParseOptions& options = {});

struct TalkPage {
  std::string title;
  std::string owner;
  std::string wikitext;

  // Throws DataError when the title is not in the User talk namespace.
  static TalkPage from(std::string title, std::string wikitext);
};

struct Post {
  std::string author;
  Timestamp timestamp;
  int depth = 0;
  bool is_template_message = false;
  bool suspect_timestamp = false;
};

struct DiscussionThread {
  std::string heading;
  std::string body;
  std::vector<Post> posts;
  bool is_mass_message = false;
};

// One thread per level-2 heading; text before the first heading forms a
// thread with an empty heading (omitted if blank and headings exist).
// Deeper headings stay inside their thread. Posts are not filled in.
std::vector<DiscussionThread> split_threads(const TalkPage& page);

// Splits a thread body at timestamps; every timestamp closes a segment and
// segments closed by a full signature become posts. Unsigned text is dropped.
// Depth is the count of leading ":" / "*" on the line holding the signature.
std::vector<Post> extract_posts(std::string_view body, const ParseOptions& options = {});

bool is_mass_message(const DiscussionThread& thread, const ParseOptions& options = {});

// split_threads + extract_posts + is_mass_message.
std::vector<DiscussionThread> parse_talk_page(const TalkPage& page, const ParseOptions& options = {});

// Union of signers over project pages. Throws DataError for talk pages
// ("... talk:" namespaces or ".../Talk" subpages).
std::set<std::string> extract_project_members(
    const std::vector<std::pair<std::string, std::string>>& project_pages, const ParseOptions& options = {});

bool is_talk_title(std::string_view title);

}  // namespace commnet::wikitext
