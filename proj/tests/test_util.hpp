#pragma once

#include <unistd.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "encore/dataset.hpp"
#include "encore/numeric.hpp"
#include "encore/rng.hpp"

namespace testutil {

inline std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream out;
  out << f.rdbuf();
  return out.str();
}

inline void write_file(const std::string& path, const std::string& body) {
  std::ofstream f(path, std::ios::binary);
  f << body;
}

// Unique scratch directory, removed on destruction.
class TempDir {
 public:
  TempDir() {
    auto base = std::filesystem::temp_directory_path();
    for (int i = 0;; ++i) {
      auto candidate = base / ("encore-test-" + std::to_string(::getpid()) + "-" + std::to_string(i));
      std::error_code ec;
      if (std::filesystem::create_directory(candidate, ec)) {
        path_ = candidate;
        return;
      }
    }
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

// Random dataset on a 0.05 grid; deterministic per seed.
inline encore::RatedDataset random_dataset(std::size_t rules, std::size_t pairs,
                                           std::uint64_t seed, std::size_t categories = 1) {
  encore::CounterRng rng(seed);
  encore::RatedDataset d;
  d.rules = encore::placeholder_rules(rules);
  for (std::size_t i = 0; i < pairs; ++i) {
    encore::PreferencePair p;
    p.pair_id = "p" + std::to_string(i);
    p.category = "cat" + std::to_string(i % categories);
    for (std::size_t k = 0; k < rules; ++k) {
      p.chosen.push_back(std::floor(rng.next_unit() * 21.0) / 20.0);
      p.rejected.push_back(std::floor(rng.next_unit() * 21.0) / 20.0);
    }
    d.pairs.push_back(std::move(p));
  }
  return d;
}

}  // namespace testutil
