#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "commnet/wikitext.hpp"

namespace commnet::wikitext {

// One page of a JSON-lines dump: {"title": ..., "wikitext": ...}
struct PageText {
  std::string title;
  std::string wikitext;

  friend bool operator==(const PageText&, const PageText&) = default;
};

// Flat per-post record, the unit exchanged between parse and build stages.
struct PostRecord {
  std::string page_owner;
  std::string thread;
  std::string author;
  Timestamp timestamp;
  int depth = 0;
  bool mass_message = false;

  friend bool operator==(const PostRecord&, const PostRecord&) = default;
};

std::vector<PostRecord> post_records(const TalkPage& page, const ParseOptions& options = {});

std::vector<PageText> read_pages_jsonl(std::istream& in);
void write_pages_jsonl(std::ostream& out, const std::vector<PageText>& pages);

// {"page_owner","thread","author","timestamp","depth","mass_message"} per line.
std::vector<PostRecord> read_posts_jsonl(std::istream& in);
void write_posts_jsonl(std::ostream& out, const std::vector<PostRecord>& posts);
std::string post_to_json(const PostRecord& post);

}  // namespace commnet::wikitext
