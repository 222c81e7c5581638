#pragma once

// Level bases B_k and their on-disk cache.
//
// B_inf is the reduced basis of the relation ideal. B_k is the reduced basis
// of B_inf together with M^(k+1), computed by extending B_inf so that pairs
// inside B_inf are never formed again.
//
// Cache files live in one directory, one file per level:
//
//   vse-gb v1 order=lex vars=A,B,F,X,Y,Z,M,o level=<k|inf> count=<N>
//   <polynomial>
//   ...

#include <vse/groebner.hpp>
#include <vse/reference.hpp>
#include <vse/relations.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace vse {

inline constexpr int kCacheVersion = 1;

class CacheError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::string basis_header(const Level& level, std::size_t count) {
  return "vse-gb v" + std::to_string(kCacheVersion) + " order=lex vars=A,B,F,X,Y,Z,M,o level=" + level.to_string() +
         " count=" + std::to_string(count);
}

inline std::string format_basis(const GroebnerBasis& b) {
  std::string out = basis_header(b.level, b.size()) + "\n";
  for (const auto& p : b.polynomials) out += format(p) + "\n";
  return out;
}

/// Inverse of format_basis. Throws CacheError on any mismatch.
inline GroebnerBasis parse_basis(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line)) throw CacheError("empty basis file");
  const std::string prefix = "vse-gb v" + std::to_string(kCacheVersion) + " order=lex vars=A,B,F,X,Y,Z,M,o level=";
  if (line.rfind(prefix, 0) != 0) throw CacheError("bad basis header: " + line);
  auto rest = line.substr(prefix.size());
  auto sp = rest.find(" count=");
  if (sp == std::string::npos) throw CacheError("bad basis header: " + line);
  GroebnerBasis b;
  std::size_t count = 0;
  try {
    b.level = Level::parse(rest.substr(0, sp));
    count = std::stoul(rest.substr(sp + 7));
  } catch (const std::exception&) {
    throw CacheError("bad basis header: " + line);
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    try {
      b.polynomials.push_back(parse(line));
    } catch (const ParseError& e) {
      throw CacheError(std::string("bad polynomial in basis file: ") + e.what());
    }
  }
  if (b.polynomials.size() != count)
    throw CacheError("basis file declares " + std::to_string(count) + " polynomials but holds " +
                     std::to_string(b.polynomials.size()));
  return b;
}

/// VSE_GB_CACHE, else $XDG_CACHE_HOME/vse, else ~/.cache/vse.
inline std::filesystem::path default_cache_dir() {
  if (const char* dir = std::getenv("VSE_GB_CACHE"); dir && *dir) return dir;
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg) return std::filesystem::path(xdg) / "vse";
  if (const char* home = std::getenv("HOME"); home && *home) return std::filesystem::path(home) / ".cache" / "vse";
  return std::filesystem::temp_directory_path() / "vse";
}

inline std::filesystem::path cache_file(const std::filesystem::path& dir, const Level& level) {
  return dir / ("basis-v" + std::to_string(kCacheVersion) + "-" + level.to_string() + ".txt");
}

inline GroebnerBasis read_basis_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CacheError("cannot read " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_basis(buf.str());
}

/// Writes to a temporary sibling and renames it over `path`.
inline void write_basis_file(const std::filesystem::path& path, const GroebnerBasis& b) {
  std::error_code ec;
  std::filesystem::create_directories(path.parent_path(), ec);
  if (ec) throw CacheError("cannot create " + path.parent_path().string() + ": " + ec.message());
  std::random_device rd;
  auto tmp = path;
  tmp += ".tmp" + std::to_string(rd());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw CacheError("cannot write " + tmp.string());
    out << format_basis(b);
    out.flush();
    if (!out) throw CacheError("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw CacheError("cannot replace " + path.string() + ": " + ec.message());
  }
}

struct BasisStoreOptions {
  /// Cache directory; default_cache_dir() if unset.
  std::optional<std::filesystem::path> cache_dir;
  bool use_cache = true;
  BuchbergerOptions buchberger;
  /// Candidate basis loaded if computing B_inf hits buchberger.time_budget.
  std::optional<std::filesystem::path> fallback_reference;
};

/// Thread-safe provider of level bases. Each level is computed at most once
/// per store; returned references stay valid for the store's lifetime.
class BasisStore {
 public:
  explicit BasisStore(BasisStoreOptions opts = {}) : opts_(std::move(opts)) {
    if (!opts_.cache_dir) opts_.cache_dir = default_cache_dir();
  }

  const GroebnerBasis& get(const Level& level) {
    std::lock_guard lock(mutex_);
    return get_locked(level);
  }

  /// Installs a basis for its level without verification or caching.
  void seed(GroebnerBasis b) {
    std::lock_guard lock(mutex_);
    bases_.insert_or_assign(b.level.to_string(), std::move(b));
  }

  /// Cache failures and fallbacks seen so far, in order.
  std::vector<std::string> notes() const {
    std::lock_guard lock(mutex_);
    return notes_;
  }

  const std::filesystem::path& cache_dir() const { return *opts_.cache_dir; }

 private:
  const GroebnerBasis& get_locked(const Level& level) {
    const std::string key = level.to_string();
    if (auto it = bases_.find(key); it != bases_.end()) return it->second;

    if (opts_.use_cache) {
      auto path = cache_file(*opts_.cache_dir, level);
      if (std::filesystem::exists(path)) {
        try {
          auto b = read_basis_file(path);
          if (b.level != level) throw CacheError(path.string() + " holds level " + b.level.to_string());
          return bases_.emplace(key, std::move(b)).first->second;
        } catch (const CacheError& e) {
          notes_.push_back(std::string("cache error: ") + e.what() + "; recomputing");
        }
      }
    }

    GroebnerBasis b = level.is_full() ? compute_infinity() : compute_level(level);
    if (opts_.use_cache && !b.provisional) {
      try {
        write_basis_file(cache_file(*opts_.cache_dir, level), b);
      } catch (const CacheError& e) {
        notes_.push_back(std::string("cache error: ") + e.what() + "; continuing in memory");
      } catch (const std::filesystem::filesystem_error& e) {
        notes_.push_back(std::string("cache error: ") + e.what() + "; continuing in memory");
      }
    }
    return bases_.emplace(key, std::move(b)).first->second;
  }

  GroebnerBasis compute_infinity() {
    const auto gens = generate_all_relations();
    try {
      auto b = buchberger(gens, opts_.buchberger);
      b.level = Level::full();
      return b;
    } catch (const GroebnerTimeout&) {
      if (!opts_.fallback_reference) throw;
      return load_fallback(gens);
    }
  }

  // Only the generators-in-candidate direction can be checked without B_inf.
  GroebnerBasis load_fallback(const std::vector<Polynomial>& gens) {
    auto list = load_named_polynomials(opts_.fallback_reference->string());
    if (!list.failures().empty())
      throw GroebnerTimeout("time budget exceeded and fallback basis has unparseable entries");
    auto candidate = list.parsed();
    for (std::size_t i = 0; i < gens.size(); ++i)
      if (!reduce(gens[i], candidate).is_zero())
        throw GroebnerTimeout("time budget exceeded and fallback basis does not contain relation " +
                              std::to_string(i + 1));
    GroebnerBasis b;
    b.polynomials = interreduce(std::move(candidate));
    b.level = Level::full();
    b.provisional = true;
    notes_.push_back("B_inf taken from " + opts_.fallback_reference->string() + " (provisional)");
    return b;
  }

  GroebnerBasis compute_level(const Level& level) {
    const GroebnerBasis& inf = get_locked(Level::full());
    auto b = extend_basis(inf, {pow(Polynomial::variable(Var::M), level.k() + 1)}, opts_.buchberger);
    b.level = level;
    b.provisional = inf.provisional;
    return b;
  }

  BasisStoreOptions opts_;
  mutable std::mutex mutex_;
  std::map<std::string, GroebnerBasis> bases_;
  std::vector<std::string> notes_;
};

}  // namespace vse
