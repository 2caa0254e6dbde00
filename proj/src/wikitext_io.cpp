#include "commnet/wikitext_io.hpp"

#include <istream>
#include <json.hpp>
#include <ostream>

#include "commnet/errors.hpp"

namespace commnet::wikitext {

using nlohmann::json;
using nlohmann::ordered_json;

std::vector<PostRecord> post_records(const TalkPage& page, const ParseOptions& options) {
  std::vector<PostRecord> out;
  for (const auto& thread : parse_talk_page(page, options))
    for (const auto& post : thread.posts)
      out.push_back({page.owner, thread.heading, post.author, post.timestamp, post.depth, thread.is_mass_message});
  return out;
}

namespace {

template <typename Fn>
void for_each_json_line(std::istream& in, const char* what, Fn&& fn) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j;
    try {
      j = json::parse(line);
      fn(j);
    } catch (const json::exception& e) {
      throw DataError(std::string(what) + " line " + std::to_string(line_no) + ": " + e.what());
    }
  }
}

}  // namespace

std::vector<PageText> read_pages_jsonl(std::istream& in) {
  std::vector<PageText> pages;
  for_each_json_line(in, "pages", [&](const json& j) {
    pages.push_back({j.at("title").get<std::string>(), j.at("wikitext").get<std::string>()});
  });
  return pages;
}

void write_pages_jsonl(std::ostream& out, const std::vector<PageText>& pages) {
  for (const auto& page : pages) {
    ordered_json j;
    j["title"] = page.title;
    j["wikitext"] = page.wikitext;
    out << j.dump() << '\n';
  }
}

std::string post_to_json(const PostRecord& post) {
  ordered_json j;
  j["page_owner"] = post.page_owner;
  j["thread"] = post.thread;
  j["author"] = post.author;
  j["timestamp"] = format_timestamp(post.timestamp);
  j["depth"] = post.depth;
  j["mass_message"] = post.mass_message;
  return j.dump();
}

std::vector<PostRecord> read_posts_jsonl(std::istream& in) {
  std::vector<PostRecord> posts;
  for_each_json_line(in, "posts", [&](const json& j) {
    const auto stamp = j.at("timestamp").get<std::string>();
    const auto ts = parse_iso_timestamp(stamp);
    if (!ts) throw DataError("posts: bad timestamp '" + stamp + "'");
    posts.push_back({j.at("page_owner").get<std::string>(), j.at("thread").get<std::string>(),
                     j.at("author").get<std::string>(), *ts, j.value("depth", 0), j.value("mass_message", false)});
  });
  return posts;
}

void write_posts_jsonl(std::ostream& out, const std::vector<PostRecord>& posts) {
  for (const auto& post : posts) out << post_to_json(post) << '\n';
}

}  // namespace commnet::wikitext
