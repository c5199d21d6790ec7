#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "ctxminer/types.hpp"

namespace ctxminer {

// Local web-page stand-in backing the simulated tools.
struct Document {
  std::string id;
  std::string url;  // unique key
  std::string title;
  std::string body;  // markdown
};

struct SearchResult {
  std::string title;
  std::string url;
  std::string snippet;  // <= 240 chars, whitespace-collapsed body window
};

struct FetchResult {
  std::string content;
  int page = 1;
  int total_pages = 1;
};

struct FindMatch {
  std::int64_t offset = 0;  // byte index into the document body
  std::string context;      // match plus up to 200 chars per side
};

// Immutable after load; all tools are read-only.
class Corpus {
 public:
  // Reads every *.json file in the directory: one document per file,
  // {"id","url","title","body"}. Documents are sorted by url so results
  // never depend on filesystem enumeration order. IngestError on duplicate
  // urls or malformed files (named).
  static Corpus load(const std::filesystem::path& dir);

  static Corpus from_documents(std::vector<Document> docs);

  std::size_t size() const { return docs_.size(); }
  const std::vector<Document>& documents() const { return docs_; }
  const Document& document_by_url(const std::string& url) const;  // NotFoundError

  friend std::vector<std::vector<SearchResult>> web_search(
      const Corpus& c, const std::vector<std::string>& queries);

 private:
  void build_index();

  std::vector<Document> docs_;  // sorted by url
  std::unordered_map<std::string, std::size_t> by_url_;
  // term -> (doc index, term frequency), doc indices ascending
  std::unordered_map<std::string, std::vector<std::pair<std::size_t, int>>>
      postings_;
  std::vector<std::int64_t> doc_tokens_;
  double avg_doc_tokens_ = 0.0;
};

// BM25 (k1=1.2, b=0.75) over lowercase alphanumeric tokens; at most 10
// results per query, score descending, ties by url ascending, zero-score
// documents excluded. The snippet is the 240-char body window maximizing
// distinct query-term hits (earliest window on ties).
std::vector<std::vector<SearchResult>> web_search(
    const Corpus& c, const std::vector<std::string>& queries);

// Paginated markdown retrieval: pages hold at most 3000 tokens under the
// default tokenizer and concatenate back to the body byte-exactly.
FetchResult fetch(const Corpus& c, const std::string& url, int page);

// Case-insensitive in-page search: first 5 matches in document order, each
// with 200 chars of context per side clamped at document edges.
std::vector<FindMatch> find(const Corpus& c, const std::string& url,
                            const std::string& query);

// JSON seam shared by the CLI `tool` subcommand and trajectory replay.
// Requests mirror the operation signatures:
//   web_search: {"queries":[...]}        -> {"results":[[...], ...]}
//   fetch:      {"url":..., "page":...}  -> {"content":...,"page":...,"total_pages":...}
//   find:       {"url":..., "query":...} -> {"matches":[{"context":...,"offset":...}]}
nlohmann::json execute_tool(const Corpus& c, ToolKind kind,
                            const nlohmann::json& args);

nlohmann::json search_results_to_json(const std::vector<std::vector<SearchResult>>& r);
nlohmann::json fetch_result_to_json(const FetchResult& r);
nlohmann::json find_matches_to_json(const std::vector<FindMatch>& m);

}  // namespace ctxminer
