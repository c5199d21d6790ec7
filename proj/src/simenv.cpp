#include "ctxminer/simenv.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "ctxminer/tokenizer.hpp"

namespace ctxminer {

namespace {

using nlohmann::json;

constexpr double kBm25K1 = 1.2;
constexpr double kBm25B = 0.75;
constexpr int kMaxSearchResults = 10;
constexpr std::size_t kSnippetBytes = 240;
constexpr std::int64_t kPageTokens = 3000;
constexpr std::size_t kPageBytes = kPageTokens * 4;  // byte_quarter tokens
constexpr int kMaxFindMatches = 5;
constexpr std::size_t kFindContextBytes = 200;

char ascii_lower(char c) {
  const unsigned char uc = static_cast<unsigned char>(c);
  return uc < 0x80 ? static_cast<char>(std::tolower(uc)) : c;
}

std::string lowercase(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = ascii_lower(c);
  return out;
}

bool is_alnum_byte(char c) {
  const unsigned char uc = static_cast<unsigned char>(c);
  return uc < 0x80 && std::isalnum(uc);
}

// Lowercase alphanumeric tokenization; any other byte separates tokens.
std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string cur;
  for (const char c : text) {
    if (is_alnum_byte(c)) {
      cur.push_back(ascii_lower(c));
    } else if (!cur.empty()) {
      tokens.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) tokens.push_back(std::move(cur));
  return tokens;
}

bool is_utf8_continuation(char c) {
  return (static_cast<unsigned char>(c) & 0xC0) == 0x80;
}

// Largest char boundary <= pos.
std::size_t snap_back(std::string_view s, std::size_t pos) {
  while (pos > 0 && pos < s.size() && is_utf8_continuation(s[pos])) --pos;
  return pos;
}

// Smallest char boundary >= pos.
std::size_t snap_forward(std::string_view s, std::size_t pos) {
  while (pos < s.size() && is_utf8_continuation(s[pos])) ++pos;
  return pos;
}

// All case-insensitive match start offsets of needle in haystack,
// document order, overlaps allowed.
std::vector<std::size_t> find_all(const std::string& haystack_lower,
                                  const std::string& needle_lower,
                                  std::size_t limit) {
  std::vector<std::size_t> out;
  if (needle_lower.empty()) return out;
  std::size_t pos = 0;
  while (out.size() < limit) {
    pos = haystack_lower.find(needle_lower, pos);
    if (pos == std::string::npos) break;
    out.push_back(pos);
    ++pos;
  }
  return out;
}

std::string collapse_whitespace(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  bool pending = false;
  for (const char c : s) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      pending = !out.empty();
      continue;
    }
    if (pending) {
      out.push_back(' ');
      pending = false;
    }
    out.push_back(c);
  }
  return out;
}

// The 240-byte body window containing the most distinct query terms,
// earliest window on ties, whitespace-collapsed.
std::string make_snippet(const std::string& body,
                         const std::vector<std::string>& terms) {
  if (body.size() <= kSnippetBytes) return collapse_whitespace(body);

  const std::string body_lower = lowercase(body);
  struct Hit {
    std::size_t begin;
    std::size_t end;
    std::size_t term;
  };
  std::vector<Hit> hits;
  for (std::size_t ti = 0; ti < terms.size(); ++ti) {
    for (const std::size_t pos : find_all(body_lower, terms[ti], 256)) {
      hits.push_back({pos, pos + terms[ti].size(), ti});
    }
  }

  const std::size_t last_start = body.size() - kSnippetBytes;
  // Distinct-hit count only changes where a hit becomes fully contained,
  // so window starts at 0 or right after some hit's end suffice.
  std::set<std::size_t> candidates{0};
  for (const Hit& h : hits) {
    if (h.end >= kSnippetBytes) {
      candidates.insert(std::min(h.end - kSnippetBytes, last_start));
    }
  }

  std::size_t best_start = 0;
  std::size_t best_count = 0;
  for (const std::size_t start : candidates) {
    std::set<std::size_t> seen;
    for (const Hit& h : hits) {
      if (h.begin >= start && h.end <= start + kSnippetBytes) seen.insert(h.term);
    }
    if (seen.size() > best_count) {
      best_count = seen.size();
      best_start = start;
    }
  }

  std::size_t begin = snap_forward(body, best_start);
  std::size_t end = snap_back(body, best_start + kSnippetBytes);
  if (end < begin) end = begin;
  return collapse_whitespace(std::string_view(body).substr(begin, end - begin));
}

std::vector<std::string> page_bodies(const std::string& body) {
  std::vector<std::string> pages;
  std::size_t start = 0;
  while (start < body.size()) {
    std::size_t end = std::min(start + kPageBytes, body.size());
    if (end < body.size()) end = snap_back(body, end);
    pages.push_back(body.substr(start, end - start));
    start = end;
  }
  if (pages.empty()) pages.push_back("");
  return pages;
}

std::string require_string_arg(const json& args, const char* key,
                               const char* what) {
  auto it = args.find(key);
  if (it == args.end() || !it->is_string()) {
    throw ValidationError(std::string(what) + " requires string field \"" + key + "\"");
  }
  return it->get<std::string>();
}

}  // namespace

Corpus Corpus::load(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) {
    throw IngestError("corpus path is not a directory: " + dir.string());
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());

  std::vector<Document> docs;
  docs.reserve(files.size());
  for (const auto& file : files) {
    std::ifstream in(file, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    json j;
    try {
      j = json::parse(buf.str());
    } catch (const json::parse_error& e) {
      throw IngestError("malformed document file " + file.string() + ": " + e.what());
    }
    if (!j.is_object()) {
      throw IngestError("document file " + file.string() + " must hold a JSON object");
    }
    Document d;
    try {
      d.id = require_string_arg(j, "id", "document");
      d.url = require_string_arg(j, "url", "document");
      d.title = require_string_arg(j, "title", "document");
      d.body = require_string_arg(j, "body", "document");
    } catch (const ValidationError& e) {
      throw IngestError("document file " + file.string() + ": " + e.what());
    }
    docs.push_back(std::move(d));
  }
  return from_documents(std::move(docs));
}

Corpus Corpus::from_documents(std::vector<Document> docs) {
  Corpus c;
  c.docs_ = std::move(docs);
  std::sort(c.docs_.begin(), c.docs_.end(),
            [](const Document& a, const Document& b) { return a.url < b.url; });
  for (std::size_t i = 0; i < c.docs_.size(); ++i) {
    auto [it, inserted] = c.by_url_.emplace(c.docs_[i].url, i);
    if (!inserted) {
      throw IngestError("duplicate document url: " + c.docs_[i].url);
    }
  }
  c.build_index();
  return c;
}

void Corpus::build_index() {
  doc_tokens_.resize(docs_.size());
  std::int64_t total = 0;
  for (std::size_t i = 0; i < docs_.size(); ++i) {
    const auto tokens = tokenize(docs_[i].body);
    doc_tokens_[i] = static_cast<std::int64_t>(tokens.size());
    total += doc_tokens_[i];
    std::map<std::string, int> tf;
    for (const auto& t : tokens) ++tf[t];
    for (const auto& [term, count] : tf) {
      postings_[term].emplace_back(i, count);
    }
  }
  avg_doc_tokens_ =
      docs_.empty() ? 0.0 : static_cast<double>(total) / static_cast<double>(docs_.size());
}

const Document& Corpus::document_by_url(const std::string& url) const {
  auto it = by_url_.find(url);
  if (it == by_url_.end()) throw NotFoundError("unknown url: " + url);
  return docs_[it->second];
}

std::vector<std::vector<SearchResult>> web_search(
    const Corpus& c, const std::vector<std::string>& queries) {
  if (queries.empty()) {
    throw ValidationError("web_search needs at least one query");
  }
  const double doc_count = static_cast<double>(c.docs_.size());

  std::vector<std::vector<SearchResult>> out;
  out.reserve(queries.size());
  for (const auto& query : queries) {
    std::vector<SearchResult> results;
    std::vector<std::string> terms = tokenize(query);
    std::sort(terms.begin(), terms.end());
    terms.erase(std::unique(terms.begin(), terms.end()), terms.end());

    std::vector<double> scores(c.docs_.size(), 0.0);
    for (const auto& term : terms) {
      auto it = c.postings_.find(term);
      if (it == c.postings_.end()) continue;
      const double df = static_cast<double>(it->second.size());
      // Lucene-style lower-bounded idf keeps all scores positive, so
      // "zero score" and "no query term present" coincide.
      const double idf = std::log(1.0 + (doc_count - df + 0.5) / (df + 0.5));
      for (const auto& [doc, tf] : it->second) {
        const double norm =
            1.0 - kBm25B + kBm25B * static_cast<double>(c.doc_tokens_[doc]) /
                               c.avg_doc_tokens_;
        scores[doc] += idf * (static_cast<double>(tf) * (kBm25K1 + 1.0)) /
                       (static_cast<double>(tf) + kBm25K1 * norm);
      }
    }

    std::vector<std::size_t> ranked;
    for (std::size_t i = 0; i < scores.size(); ++i) {
      if (scores[i] > 0.0) ranked.push_back(i);
    }
    std::sort(ranked.begin(), ranked.end(), [&](std::size_t a, std::size_t b) {
      if (scores[a] != scores[b]) return scores[a] > scores[b];
      return c.docs_[a].url < c.docs_[b].url;
    });
    if (ranked.size() > static_cast<std::size_t>(kMaxSearchResults)) {
      ranked.resize(kMaxSearchResults);
    }

    results.reserve(ranked.size());
    for (const std::size_t doc : ranked) {
      results.push_back({c.docs_[doc].title, c.docs_[doc].url,
                         make_snippet(c.docs_[doc].body, terms)});
    }
    out.push_back(std::move(results));
  }
  return out;
}

FetchResult fetch(const Corpus& c, const std::string& url, int page) {
  if (page < 1) throw ValidationError("fetch page must be >= 1");
  const Document& doc = c.document_by_url(url);
  const auto pages = page_bodies(doc.body);
  const int total = static_cast<int>(pages.size());
  if (page > total) {
    throw PageRangeError("page " + std::to_string(page) + " out of range for " +
                             url + " (total_pages " + std::to_string(total) + ")",
                         total);
  }
  return {pages[static_cast<std::size_t>(page - 1)], page, total};
}

std::vector<FindMatch> find(const Corpus& c, const std::string& url,
                            const std::string& query) {
  if (query.empty()) throw ValidationError("find query must be non-empty");
  const Document& doc = c.document_by_url(url);
  const std::string body_lower = lowercase(doc.body);
  const std::string query_lower = lowercase(query);

  std::vector<FindMatch> out;
  for (const std::size_t pos : find_all(body_lower, query_lower, kMaxFindMatches)) {
    const std::size_t match_end = pos + query.size();
    std::size_t begin = pos >= kFindContextBytes ? pos - kFindContextBytes : 0;
    std::size_t end = std::min(doc.body.size(), match_end + kFindContextBytes);
    begin = snap_forward(doc.body, begin);
    end = snap_back(doc.body, end);
    out.push_back({static_cast<std::int64_t>(pos),
                   doc.body.substr(begin, end - begin)});
  }
  return out;
}

json search_results_to_json(const std::vector<std::vector<SearchResult>>& r) {
  json per_query = json::array();
  for (const auto& results : r) {
    json list = json::array();
    for (const auto& res : results) {
      json item = json::object();
      item["snippet"] = res.snippet;
      item["title"] = res.title;
      item["url"] = res.url;
      list.push_back(std::move(item));
    }
    per_query.push_back(std::move(list));
  }
  json out = json::object();
  out["results"] = std::move(per_query);
  return out;
}

json fetch_result_to_json(const FetchResult& r) {
  json out = json::object();
  out["content"] = r.content;
  out["page"] = r.page;
  out["total_pages"] = r.total_pages;
  return out;
}

json find_matches_to_json(const std::vector<FindMatch>& matches) {
  json list = json::array();
  for (const auto& m : matches) {
    json item = json::object();
    item["context"] = m.context;
    item["offset"] = m.offset;
    list.push_back(std::move(item));
  }
  json out = json::object();
  out["matches"] = std::move(list);
  return out;
}

json execute_tool(const Corpus& c, ToolKind kind, const json& args) {
  if (!args.is_object()) throw ValidationError("tool args must be a JSON object");
  switch (kind) {
    case ToolKind::web_search: {
      auto it = args.find("queries");
      if (it == args.end() || !it->is_array() || it->empty()) {
        throw ValidationError("web_search args need non-empty array \"queries\"");
      }
      std::vector<std::string> queries;
      for (const auto& q : *it) {
        if (!q.is_string()) {
          throw ValidationError("web_search queries must be strings");
        }
        queries.push_back(q.get<std::string>());
      }
      return search_results_to_json(web_search(c, queries));
    }
    case ToolKind::fetch: {
      const std::string url = require_string_arg(args, "url", "fetch");
      auto it = args.find("page");
      if (it == args.end() || !it->is_number_integer()) {
        throw ValidationError("fetch args need integer \"page\"");
      }
      return fetch_result_to_json(fetch(c, url, it->get<int>()));
    }
    case ToolKind::find: {
      const std::string url = require_string_arg(args, "url", "find");
      const std::string query = require_string_arg(args, "query", "find");
      return find_matches_to_json(find(c, url, query));
    }
  }
  throw ValidationError("unsupported tool");
}

}  // namespace ctxminer
