#include <doctest.h>

#include <chrono>
#include <cstdlib>
#include <sstream>

#include "commnet/errors.hpp"
#include "commnet/pipeline/api_client.hpp"
#include "commnet/pipeline/cache.hpp"
#include "commnet/pipeline/config.hpp"
#include "commnet/pipeline/fetch.hpp"
#include "commnet/pipeline/pipeline.hpp"
#include "commnet/pipeline/project_names.hpp"
#include "support/miniwiki.hpp"
#include "support/mock_wiki.hpp"

using namespace commnet;
using namespace commnet::pipeline;
using miniwiki::slurp;
using miniwiki::spit;
using miniwiki::TempDir;
namespace fs = std::filesystem;

namespace {

PipelineConfig fast_config(const fs::path& work) {
  auto c = miniwiki::config_for(work);
  c.offline = false;
  c.request_interval = 0.001;
  c.max_retries = 3;
  return c;
}

mock::MockWiki mini_mock(const PipelineConfig& c) {
  auto w = mock::MockWiki::from_raw(miniwiki::data_dir() / "raw");
  w.aliases = c.project_aliases;
  return w;
}

std::string normalized_assessments(const fs::path& csv, const AliasTable& aliases) {
  std::ifstream in(csv);
  auto rows = quality::read_assessments_csv(in);
  for (auto& r : rows) r.project = normalize_project_name(r.project, aliases);
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    return std::tie(a.project, a.article, a.grade) < std::tie(b.project, b.article, b.grade);
  });
  std::ostringstream out;
  quality::write_assessments_csv(out, rows);
  return out.str();
}

std::string without_talk_pages(const fs::path& jsonl) {
  std::ifstream in(jsonl);
  auto pages = wikitext::read_pages_jsonl(in);
  std::erase_if(pages, [](const auto& p) { return wikitext::is_talk_title(p.title); });
  std::ostringstream out;
  wikitext::write_pages_jsonl(out, pages);
  return out.str();
}

double seconds_between(std::chrono::steady_clock::time_point a, std::chrono::steady_clock::time_point b) {
  return std::chrono::duration<double>(b - a).count();
}

}  // namespace

TEST_CASE("project name normalization") {
  CHECK(normalize_project_name("Wikipedia:WikiProject Tropical cyclones") == "Tropical cyclones");
  CHECK(normalize_project_name("tropical_cyclones") == "Tropical cyclones");
  CHECK(normalize_project_name("WikiProject  Birds ") == "Birds");
  for (const char* raw : {"Wikipedia:WikiProject Tropical cyclones", "tropical_cyclones", "Chess", "x_y  z"}) {
    const auto once = normalize_project_name(raw);
    CHECK(normalize_project_name(once) == once);
  }
  const AliasTable aliases{{"Tropical storms", "Tropical cyclones"}};
  CHECK(normalize_project_name("tropical_storms", aliases) == "Tropical cyclones");
  CHECK_THROWS_AS(normalize_project_name(""), ConfigError);
  CHECK_THROWS_AS(normalize_project_name("Wikipedia:WikiProject "), ConfigError);

  CHECK(project_of_page_title("Wikipedia:WikiProject Birds/Members") == "Birds");
  CHECK(project_of_page_title("Wikipedia:WikiProject Birds") == "Birds");
  CHECK_FALSE(project_of_page_title("User talk:Alice").has_value());
  CHECK(project_slug("Tropical cyclones") == "Tropical_cyclones");
}

TEST_CASE("config validation") {
  CHECK_NOTHROW(config_from_json("{}"));
  CHECK_THROWS_AS(config_from_json(R"({"request_interval": 0})"), ConfigError);
  CHECK_THROWS_AS(config_from_json(R"({"request_interval": -1.5})"), ConfigError);
  CHECK_THROWS_AS(config_from_json(R"({"min_active_nodes": 1})"), ConfigError);
  CHECK_NOTHROW(config_from_json(R"({"min_active_nodes": 2})"));
  CHECK_THROWS_AS(config_from_json(R"({"min_active_node": 5})"), ConfigError);
  CHECK_THROWS_AS(config_from_json(R"({"api": {"talkpages": {}}})"), ConfigError);
  CHECK_THROWS_AS(config_from_json(R"({"api": {"assessment_mode": "everything"}})"), ConfigError);
  CHECK_THROWS_AS(config_from_json(R"({"p": "half"})"), ConfigError);
  CHECK_THROWS_AS(config_from_json("not json"), ConfigError);

  const auto c = config_from_json(R"({"api": {"talk_pages": {"prop": "revisions", "format": null}}})");
  CHECK(c.api.talk_pages.at("prop") == "revisions");
  CHECK_FALSE(c.api.talk_pages.count("format"));

  TempDir dir("config");
  spit(dir.path / "c.json", R"({"api_base_url": "https://a.invalid/api.php", "cache_directory": "cc"})");
  ::setenv("COMMNET_API_BASE_URL", "http://127.0.0.1:9/api.php", 1);
  const auto env = load_config(dir.path / "c.json");
  ::unsetenv("COMMNET_API_BASE_URL");
  CHECK(env.api_base_url == "http://127.0.0.1:9/api.php");
  CHECK(env.cache_directory == dir.path / "cc");
  CHECK(load_config(dir.path / "c.json").api_base_url == "https://a.invalid/api.php");
  CHECK_THROWS_AS(load_config(dir.path / "missing.json"), ConfigError);
}

TEST_CASE("canonical requests") {
  CHECK(url_encode("User talk:Alice|Bob") == "User%20talk%3AAlice%7CBob");
  CHECK(url_encode("a-b_c.d~") == "a-b_c.d~");
  CHECK(canonical_request("https://x/api.php", {{"b", "2"}, {"a", "1 1"}}) == "https://x/api.php?a=1%201&b=2");
  // Parameter order never changes the key.
  Params p1{{"action", "query"}, {"titles", "A"}};
  Params p2;
  p2["titles"] = "A";
  p2["action"] = "query";
  CHECK(canonical_request("u", p1) == canonical_request("u", p2));
}

TEST_CASE("response cache") {
  TempDir dir("cache");
  ResponseCache cache(dir.path);
  CHECK_FALSE(cache.get("k").has_value());
  cache.put("k", "first");
  const auto path = cache.path_for("k");
  CHECK(path.parent_path().filename().string() == sha256_hex("k").substr(0, 2));
  const auto bytes = slurp(path);
  cache.put("k", "second");
  CHECK(slurp(path) == bytes);
  auto e = cache.get("k");
  REQUIRE(e.has_value());
  CHECK(e->payload == "first");
  CHECK(e->key == "k");
  // Payload bytes survive untouched, newlines and all.
  const std::string binary = std::string("a\nb\0c", 5) + "\n";
  cache.put("bin", binary);
  CHECK(cache.get("bin")->payload == binary);
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  // A corrupted header reads as a miss.
  spit(cache.path_for("bad"), "{not json\npayload");
  CHECK_FALSE(cache.get("bad").has_value());
}

TEST_CASE("offline mode serves only cached responses") {
  TempDir dir("offline");
  auto c = fast_config(dir.path);
  c.offline = true;
  ResponseCache cache(c.cache_directory);
  mock::MockWiki wiki;
  ApiClient client(c, wiki, cache);
  const Params params{{"action", "query"}, {"titles", "X"}};
  CHECK_THROWS_AS(client.get(params), NetworkError);
  CHECK(wiki.calls() == 0);
  cache.put(canonical_request(c.api_base_url, params), "{}");
  CHECK(client.get(params) == "{}");
  CHECK(client.cache_hits() == 1);
  CHECK(client.network_calls() == 0);

  OfflineTransport offline;
  CHECK_THROWS_AS(offline.get("https://x.invalid/"), NetworkError);
}

TEST_CASE("throttling backs off and retries") {
  TempDir dir("throttle");
  auto c = fast_config(dir.path);
  c.request_interval = 0.05;
  const Params params{{"action", "query"}, {"list", "allpages"}, {"apprefix", "WikiProject Birds"}};

  SUBCASE("HTTP 429 then success") {
    auto wiki = mini_mock(c);
    wiki.throttle_first = 1;
    ResponseCache cache(c.cache_directory);
    ApiClient client(c, wiki, cache);
    const auto start = std::chrono::steady_clock::now();
    const auto body = client.get(params);
    const double elapsed = seconds_between(start, std::chrono::steady_clock::now());
    CHECK(body.find("WikiProject Birds") != std::string::npos);
    CHECK(wiki.calls() == 2);
    CHECK(elapsed >= 2 * c.request_interval);
    CHECK(seconds_between(wiki.log[0].at, wiki.log[1].at) >= 2 * c.request_interval);
  }
  SUBCASE("maxlag error then success") {
    auto wiki = mini_mock(c);
    wiki.throttle_first = 2;
    wiki.maxlag_instead = true;
    ResponseCache cache(c.cache_directory);
    ApiClient client(c, wiki, cache);
    client.get(params);
    CHECK(wiki.calls() == 3);
    // Second retry waits interval * 2^2.
    CHECK(seconds_between(wiki.log[1].at, wiki.log[2].at) >= 4 * c.request_interval);
    // Throttle responses are never cached.
    ResponseCache fresh(c.cache_directory);
    CHECK(fresh.get(canonical_request(c.api_base_url, params))->payload.find("maxlag") == std::string::npos);
  }
  SUBCASE("Retry-After is honoured when longer") {
    auto wiki = mini_mock(c);
    wiki.throttle_first = 1;
    wiki.retry_after = 0.3;
    ResponseCache cache(c.cache_directory);
    ApiClient client(c, wiki, cache);
    client.get(params);
    CHECK(seconds_between(wiki.log[0].at, wiki.log[1].at) >= 0.3);
  }
  SUBCASE("retry budget exhausted") {
    c.request_interval = 0.001;
    c.max_retries = 2;
    auto wiki = mini_mock(c);
    wiki.throttle_first = 100;
    ResponseCache cache(c.cache_directory);
    ApiClient client(c, wiki, cache);
    CHECK_THROWS_AS(client.get(params), NetworkError);
    CHECK(wiki.calls() == 3);
    CHECK_FALSE(cache.get(canonical_request(c.api_base_url, params)).has_value());
  }
}

TEST_CASE("requests are spaced by the configured interval") {
  TempDir dir("polite");
  auto c = fast_config(dir.path);
  c.request_interval = 0.02;
  auto wiki = mini_mock(c);
  ResponseCache cache(c.cache_directory);
  ApiClient client(c, wiki, cache);
  fetch_project_pages(client, c, "Tropical cyclones");
  REQUIRE(wiki.calls() >= 3);
  for (std::size_t i = 1; i < wiki.log.size(); ++i)
    CHECK(seconds_between(wiki.log[i - 1].at, wiki.log[i].at) >= c.request_interval * 0.999);
}

TEST_CASE("fatal API errors are not retried") {
  TempDir dir("fatal");
  auto c = fast_config(dir.path);
  mock::MockWiki wiki;
  ResponseCache cache(c.cache_directory);
  ApiClient client(c, wiki, cache);
  CHECK_THROWS_AS(client.get({{"action", "nonsense"}}), ConfigError);
  CHECK(wiki.calls() == 1);
}

TEST_CASE("paginated listings") {
  TempDir dir("paging");
  auto c = fast_config(dir.path);

  SUBCASE("two pages of assessments are concatenated once") {
    auto wiki = mini_mock(c);
    wiki.page_size = 8;  // Birds has 10 rows -> 2 pages
    ResponseCache cache(c.cache_directory);
    ApiClient client(c, wiki, cache);
    const auto rows = fetch_assessments(client, c, {"Birds"});
    CHECK(wiki.calls() == 2);
    REQUIRE(rows.size() == 10);
    std::set<std::string> titles;
    for (const auto& r : rows) titles.insert(r.article);
    CHECK(titles.size() == 10);
    CHECK(rows.front().article == "Barn owl");
  }
  SUBCASE("empty project gives no rows") {
    auto wiki = mini_mock(c);
    ResponseCache cache(c.cache_directory);
    ApiClient client(c, wiki, cache);
    CHECK(fetch_assessments(client, c, {"Origami"}).empty());
    CHECK(fetch_project_pages(client, c, "Origami").empty());
  }
  SUBCASE("a repeated continuation token is a loop") {
    auto wiki = mini_mock(c);
    wiki.loop_continuation = true;
    ResponseCache cache(c.cache_directory);
    ApiClient client(c, wiki, cache);
    CHECK_THROWS_AS(fetch_assessments(client, c, {"Birds"}), NetworkError);
    CHECK(wiki.calls() == 2);
  }
}

TEST_CASE("missing user talk pages are skipped") {
  TempDir dir("missing");
  auto c = fast_config(dir.path);
  auto wiki = mini_mock(c);
  ResponseCache cache(c.cache_directory);
  ApiClient client(c, wiki, cache);
  const auto pages = fetch_user_talk_pages(client, c, {"Alice", "Nobody_here", "bob"});
  REQUIRE(pages.size() == 2);
  CHECK(pages[0].title == "User talk:Alice");
  CHECK(pages[1].title == "User talk:Bob");
}

TEST_CASE("ingest through the mock API reproduces the mini-wiki") {
  TempDir dir("ingest");
  auto c = fast_config(dir.path);
  c.api.titles_per_request = 5;
  const Workspace ws{dir.path / "work"};
  auto wiki = mini_mock(c);
  const auto first = run_ingest(c, wiki, ws);
  CHECK(first.network_calls == wiki.calls());
  CHECK(first.network_calls > 10);
  CHECK(first.cache_hits == 0);

  const auto raw = miniwiki::data_dir() / "raw";
  CHECK(slurp(ws.raw() / "projects.txt") == slurp(raw / "projects.txt"));
  // The fixture carries a project talk subpage that ingest never requests.
  CHECK(slurp(ws.raw() / "project_pages.jsonl") == without_talk_pages(raw / "project_pages.jsonl"));
  CHECK(slurp(ws.raw() / "user_talk_pages.jsonl") == slurp(raw / "user_talk_pages.jsonl"));
  // The API reports assessments under canonical project names.
  CHECK(slurp(ws.raw() / "assessments.csv") == normalized_assessments(raw / "assessments.csv", c.project_aliases));

  run_parse(c, ws);
  run_build(c, ws);
  run_quality(c, ws);
  run_metrics(c, ws);
  run_regress(c, ws);
  const auto diffs = miniwiki::diff_against_expected(ws.root);
  CHECK_MESSAGE(diffs.empty(), "differs: " << (diffs.empty() ? "" : diffs.front()));

  SUBCASE("warm cache rerun makes no network calls") {
    std::map<std::string, std::string> before;
    for (const auto& e : fs::recursive_directory_iterator(ws.root))
      if (e.is_regular_file()) before[fs::relative(e.path(), ws.root).string()] = slurp(e.path());
    const auto calls_before = wiki.calls();
    const auto second = run_ingest(c, wiki, ws);
    CHECK(second.network_calls == 0);
    CHECK(second.cache_hits == first.network_calls);
    CHECK(wiki.calls() == calls_before);
    run_parse(c, ws);
    run_build(c, ws);
    run_quality(c, ws);
    run_metrics(c, ws);
    run_regress(c, ws);
    for (const auto& [rel, text] : before) CHECK_MESSAGE(slurp(ws.root / rel) == text, rel);
  }
  SUBCASE("offline rerun from the warm cache") {
    c.offline = true;
    OfflineTransport offline;
    const Workspace ws2{dir.path / "work2"};
    CHECK(run_ingest(c, offline, ws2).cache_hits == first.network_calls);
    CHECK(slurp(ws2.raw() / "project_pages.jsonl") == slurp(ws.raw() / "project_pages.jsonl"));
  }
}

TEST_CASE("interrupted ingest resumes from the cache") {
  TempDir dir("resume");
  auto c = fast_config(dir.path);
  c.max_retries = 0;
  const Workspace ws{dir.path / "work"};
  auto wiki = mini_mock(c);
  // Every request fails after the first six.
  struct Flaky : mock::MockWiki {
    std::size_t budget = 6;
    commnet::pipeline::HttpResponse get(const std::string& url) override {
      if (budget == 0) return {503, "unavailable", {}};
      --budget;
      return MockWiki::get(url);
    }
  } flaky;
  static_cast<mock::MockWiki&>(flaky) = wiki;
  CHECK_THROWS_AS(run_ingest(c, flaky, ws), NetworkError);
  CHECK_FALSE(ws.raw_complete());
  const auto stats = run_ingest(c, wiki, ws);
  CHECK(stats.cache_hits == 6);
  CHECK(ws.raw_complete());
}

TEST_CASE("offline pipeline on the mini-wiki") {
  TempDir dir("offline-run");
  const Workspace ws{dir.path};
  miniwiki::copy_raw(ws.root);
  const auto c = miniwiki::config_for(ws.root);
  OfflineTransport offline;
  const auto stats = run_pipeline(c, offline, ws);
  CHECK(stats.network_calls == 0);
  const auto diffs = miniwiki::diff_against_expected(ws.root);
  CHECK_MESSAGE(diffs.empty(), "differs: " << (diffs.empty() ? "" : diffs.front()));
  CHECK(slurp(ws.root / "metadata.json") == slurp(miniwiki::data_dir() / "expected" / "metadata.json"));

  SUBCASE("stage isolation") {
    const auto networks = slurp(ws.networks() / "summary.csv");
    const auto members = slurp(ws.parsed() / "members.csv");
    spit(ws.quality() / "quality.csv", "garbage\n\"unterminated");
    CHECK_THROWS_AS(run_metrics(c, ws), DataError);
    CHECK(slurp(ws.networks() / "summary.csv") == networks);
    CHECK(slurp(ws.parsed() / "members.csv") == members);
    run_quality(c, ws);
    run_metrics(c, ws);
    CHECK(miniwiki::diff_against_expected(ws.root).empty());
  }
  SUBCASE("errors name their stage") {
    fs::remove(ws.parsed() / "posts.jsonl");
    try {
      run_build(c, ws);
      FAIL("expected an error");
    } catch (const DataError& e) {
      CHECK(std::string(e.what()).rfind("stage build: ", 0) == 0);
    }
    spit(ws.raw() / "project_pages.jsonl", "{\"title\": 3}\n");
    try {
      run_parse(c, ws);
      FAIL("expected an error");
    } catch (const DataError& e) {
      CHECK(std::string(e.what()).rfind("stage parse: ", 0) == 0);
    }
  }
  SUBCASE("min_active_nodes changes the included set") {
    auto strict = c;
    strict.min_active_nodes = 6;
    run_metrics(strict, ws);
    const auto matrix = slurp(ws.metrics() / "data_matrix.csv");
    CHECK(matrix.find("Tropical cyclones") != std::string::npos);
    CHECK(matrix.find("Birds") == std::string::npos);
    CHECK(matrix.find("Chess") == std::string::npos);
    auto loose = c;
    loose.min_active_nodes = 4;
    run_metrics(loose, ws);
    CHECK(slurp(ws.metrics() / "data_matrix.csv").find("Chess") != std::string::npos);
    run_metrics(c, ws);
    CHECK(miniwiki::diff_against_expected(ws.root).empty());
  }
}
