#pragma once

#include <map>
#include <optional>
#include <string>

#include "cnkit/quartic.hpp"

namespace cnkit {

// Persistent quartic-search results: an append-mostly JSONL file, one record
// per line, keyed by (a_curve, side, b1). Solved and LocallyExcluded records
// are terminal; ExhaustedToHeight records are superseded by greater heights.
class QuarticCache {
 public:
  explicit QuarticCache(std::string path);
  ~QuarticCache();

  QuarticCache(const QuarticCache&) = delete;
  QuarticCache& operator=(const QuarticCache&) = delete;

  const std::string& path() const { return path_; }

  // Usable result for a search at the requested height: any Solved/Excluded
  // record, or an Exhausted record whose height covers the request.
  std::optional<SearchOutcome> lookup(const Int& a_curve, Side side, const Int& b1,
                                      long height) const;

  void record(const Int& a_curve, Side side, const Int& b1, long height,
              const SearchOutcome& outcome);

  // Appends records added since load under an advisory flock. Called by the
  // destructor as well; safe to call repeatedly.
  void flush();

  std::size_t size() const { return entries_.size(); }

 private:
  struct Key {
    std::string a_curve, side, b1;
    auto operator<=>(const Key&) const = default;
  };
  struct Entry {
    SearchOutcome outcome = SearchOutcome::exhausted(0);
    long height = 0;
    std::string created_at;
    bool dirty = false;
  };

  void load();
  static bool supersedes(const Entry& candidate, const Entry& existing);

  std::string path_;
  std::map<Key, Entry> entries_;
};

}  // namespace cnkit
