#pragma once

#include <string>

#include "ffg/classes.hpp"

namespace ffg::cli {

inline constexpr int kCacheVersion = 1;

std::string serialize_class_system(const ClassSystem& sys);
// Rebuilds and re-validates every lattice, weight and the mass. Throws
// PreconditionError on any mismatch, version change or parse failure.
ClassSystem deserialize_class_system(const std::string& text);
// serialize -> deserialize -> serialize is byte-identical and the
// canonical forms agree.
bool cache_roundtrip(const ClassSystem& sys);

struct CachedSystem {
  ClassSystem sys;
  bool hit = false;
  std::string warning;  // set when a cache file was present but unusable
};
std::string cache_file(const std::string& dir, const QuatAlgebra& alg);
// Empty dir disables caching.
CachedSystem load_or_build(const QuatAlgebra& alg, const std::string& dir);

}  // namespace ffg::cli
