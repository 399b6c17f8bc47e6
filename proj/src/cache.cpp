#include "cnkit/cache.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace cnkit {

namespace {

using nlohmann::json;

std::string now_iso8601() {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json outcome_to_json(const SearchOutcome& o, long height) {
  json j;
  switch (o.kind) {
    case SearchOutcome::Kind::Solved:
      j["kind"] = "solved";
      j["n"] = o.witness->N.get_str();
      j["e"] = o.witness->e.get_str();
      j["m"] = o.witness->M.get_str();
      break;
    case SearchOutcome::Kind::ExhaustedToHeight:
      j["kind"] = "exhausted";
      j["height"] = height;
      break;
    case SearchOutcome::Kind::LocallyExcluded:
      j["kind"] = "excluded";
      j["modulus"] = o.modulus;
      break;
  }
  return j;
}

std::optional<SearchOutcome> outcome_from_json(const json& j, long height) {
  const std::string kind = j.value("kind", "");
  if (kind == "solved") {
    QuarticWitness w{Int(j.at("n").get<std::string>()), Int(j.at("e").get<std::string>()),
                     Int(j.at("m").get<std::string>())};
    return SearchOutcome::solved(std::move(w));
  }
  if (kind == "exhausted") return SearchOutcome::exhausted(height);
  if (kind == "excluded") return SearchOutcome::excluded(j.value("modulus", 0));
  return std::nullopt;
}

}  // namespace

QuarticCache::QuarticCache(std::string path) : path_(std::move(path)) { load(); }

QuarticCache::~QuarticCache() {
  try {
    flush();
  } catch (...) {
    // Destructor must not throw; a failed flush only loses cached speedups.
  }
}

bool QuarticCache::supersedes(const Entry& candidate, const Entry& existing) {
  auto terminal = [](const Entry& e) {
    return e.outcome.kind != SearchOutcome::Kind::ExhaustedToHeight;
  };
  if (terminal(existing)) return false;  // Solved/Excluded records are immutable
  if (terminal(candidate)) return true;
  return candidate.height > existing.height;
}

void QuarticCache::load() {
  std::ifstream in(path_);
  if (!in) return;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) continue;  // skip malformed lines
    try {
      Key key{j.at("a_curve").get<std::string>(), j.at("side").get<std::string>(),
              j.at("b1").get<std::string>()};
      long height = j.value("height", 0l);
      auto outcome = outcome_from_json(j.at("status"), height);
      if (!outcome) continue;
      Entry entry{*outcome, height, j.value("created_at", ""), false};
      auto it = entries_.find(key);
      if (it == entries_.end() || supersedes(entry, it->second)) {
        entries_[key] = std::move(entry);
      }
    } catch (const json::exception&) {
      continue;
    }
  }
}

std::optional<SearchOutcome> QuarticCache::lookup(const Int& a_curve, Side side,
                                                  const Int& b1, long height) const {
  Key key{a_curve.get_str(), to_string(side), b1.get_str()};
  auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  const Entry& e = it->second;
  if (e.outcome.kind == SearchOutcome::Kind::ExhaustedToHeight && e.height < height) {
    return std::nullopt;  // known only to a smaller height
  }
  return e.outcome;
}

void QuarticCache::record(const Int& a_curve, Side side, const Int& b1, long height,
                          const SearchOutcome& outcome) {
  Key key{a_curve.get_str(), to_string(side), b1.get_str()};
  Entry entry{outcome, height, now_iso8601(), true};
  auto it = entries_.find(key);
  if (it == entries_.end() || supersedes(entry, it->second)) {
    entries_[key] = std::move(entry);
  }
}

void QuarticCache::flush() {
  bool any_dirty = false;
  for (const auto& [key, entry] : entries_) any_dirty |= entry.dirty;
  if (!any_dirty) return;

  std::filesystem::path p(path_);
  if (p.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(p.parent_path(), ec);
  }
  int fd = ::open(path_.c_str(), O_WRONLY | O_CREAT | O_APPEND, 0644);
  if (fd < 0) throw std::runtime_error("cache: cannot open " + path_);
  ::flock(fd, LOCK_EX);
  std::ostringstream out;
  for (auto& [key, entry] : entries_) {
    if (!entry.dirty) continue;
    json j;
    j["a_curve"] = key.a_curve;
    j["side"] = key.side;
    j["b1"] = key.b1;
    j["height"] = entry.height;
    j["status"] = outcome_to_json(entry.outcome, entry.height);
    j["created_at"] = entry.created_at;
    out << j.dump() << '\n';
    entry.dirty = false;
  }
  std::string payload = out.str();
  ssize_t written = ::write(fd, payload.data(), payload.size());
  ::flock(fd, LOCK_UN);
  ::close(fd);
  if (written != static_cast<ssize_t>(payload.size())) {
    throw std::runtime_error("cache: short write to " + path_);
  }
}

}  // namespace cnkit
